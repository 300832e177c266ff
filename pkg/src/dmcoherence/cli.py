"""Command-line interface.

Subcommands::

    dmcoherence point  --jx -1 --jy -0.5 --jz 0.2 --dz 1 --temp 0.5
    dmcoherence sweep  --config sweep.json [--jz 0.5 ...] [--axis temperature:0.1:5:50]
    dmcoherence figure fig1a --out fig1a.csv
    dmcoherence limits --n 6
    dmcoherence chain  --n 6 --jx 1 --dz 0.3

Exit codes: 0 success, 2 configuration error, 3 numerical contract
violation, 4 I/O error.
"""

import argparse
import json
import sys
import time

from .errors import ArgumentError, ContractError, TableIOError
from .limits import broken_symmetry_coherence, chain_ground_coherence, coherence_closed_form_jz0, ghz_coherence
from .models import ModelSpec
from .sweep import (
    COLUMNS,
    ENGINE_AGREEMENT_TOL,
    FIGURES,
    PARAMETERS,
    Engine,
    ResultTable,
    SweepAxis,
    SweepSpec,
    basis_decay_flag,
    compare_tables,
    default_engine,
    evaluate_point,
    figure_preset,
    run_sweep,
    write_table,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

_FLAG_PARAMS = {"jx": "jx", "jy": "jy", "jz": "jz", "dx": "dx", "dy": "dy", "dz": "dz", "temp": "temperature"}

# companion grids reported next to some figures
_FIGURE_PARTNERS = {"fig2a": "fig1b", "fig2b": "fig1d"}


def _add_model_flags(p):
    for flag in ("jx", "jy", "jz", "dx", "dy", "dz"):
        p.add_argument(f"--{flag}", type=float, default=None)
    p.add_argument("--temp", type=float, default=None, help="temperature (k_B = 1)")
    p.add_argument("--basis", choices=["x", "y", "z"], default=None)
    p.add_argument("--n", type=int, default=None, help="number of sites")
    p.add_argument("--boundary", choices=["open", "periodic"], default=None)


def _add_output_flags(p):
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--precision", type=int, default=None, help="significant digits (default 12)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dmcoherence", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="coherence of one thermal state")
    _add_model_flags(p)
    _add_output_flags(p)
    p.add_argument("--engine", choices=[e.value for e in Engine], default=None)
    p.add_argument("--config", default=None, help="JSON file with a 'fixed' block")

    p = sub.add_parser("sweep", help="coherence over a parameter grid")
    _add_model_flags(p)
    _add_output_flags(p)
    p.add_argument("--engine", choices=[e.value for e in Engine], default=None)
    p.add_argument("--config", default=None, help="JSON sweep configuration")
    p.add_argument("--axis", action="append", default=None, metavar="NAME:START:STOP:COUNT")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("figure", help="run a named figure preset")
    p.add_argument("name", help=", ".join(FIGURES))
    _add_output_flags(p)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("limits", help="closed-form zero-temperature values")
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("chain", help="ground-state coherence of the Jz = 0 chain")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--jx", type=float, default=1.0, help="Jx = Jy")
    p.add_argument("--dz", type=float, default=0.0)
    p.add_argument("--boundary", choices=["open", "periodic"], default="periodic")
    p.add_argument("--basis", choices=["x", "y", "z"], default="z")
    _add_output_flags(p)
    return parser


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise TableIOError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ArgumentError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ArgumentError(f"config {path} must hold a JSON object")
    return data


def _parse_axis(text):
    try:
        name, start, stop, count = text.split(":")
        return {"name": name, "start": float(start), "stop": float(stop), "count": int(count)}
    except ValueError:
        raise ArgumentError(f"axis {text!r} is not NAME:START:STOP:COUNT") from None


def _overrides(args, data):
    fixed = dict(data.get("fixed", {}))
    for flag, param in _FLAG_PARAMS.items():
        value = getattr(args, flag, None)
        if value is not None:
            fixed[param] = value
    data["fixed"] = fixed
    for attr, key in (("n", "n_sites"), ("boundary", "boundary"), ("basis", "basis"),
                      ("engine", "engine"), ("format", "output"), ("precision", "precision")):
        value = getattr(args, attr, None)
        if value is not None:
            data[key] = value
    return data


def _summary(rows, started, extra=""):
    line = f"rows={rows} wall={time.perf_counter() - started:.3f}s"
    print(line + (f" {extra}" if extra else ""), file=sys.stderr)


def _cmd_point(args, started):
    data = _overrides(args, _load_config(args.config))
    fixed = {"temperature": 1.0, **{p: 0.0 for p in PARAMETERS[1:]}, **data["fixed"]}
    n = int(data.get("n_sites", 2))
    boundary = data.get("boundary", "open")
    engine = data.get("engine") or default_engine(n, boundary, (fixed["dx"], fixed["dy"], fixed["dz"]))
    # validates the combination exactly like a sweep would
    spec = SweepSpec(axes=(SweepAxis("temperature", fixed["temperature"], fixed["temperature"] + 1, 2),),
                     fixed=fixed, n_sites=n, boundary=boundary, basis=data.get("basis", "z"),
                     engine=engine, precision=data.get("precision", 12), output=data.get("output", "csv"))
    row = evaluate_point(fixed, spec.n_sites, spec.boundary, spec.basis, spec.engine)
    if spec.engine is not Engine.NUMERIC:
        check = evaluate_point(fixed, spec.n_sites, spec.boundary, spec.basis, Engine.NUMERIC)
        at = COLUMNS.index("coherence_total")
        if abs(check[at] - row[at]) > ENGINE_AGREEMENT_TOL:
            raise ContractError("analytic and numeric engines disagree")
    write_table(ResultTable(COLUMNS, [row]), spec.output, args.out, spec.precision)
    _summary(1, started)


def _cmd_sweep(args, started):
    data = _overrides(args, _load_config(args.config))
    if args.axis:
        data["axes"] = [_parse_axis(a) for a in args.axis]
    spec = SweepSpec.from_dict(data)
    table = run_sweep(spec, workers=args.workers)
    write_table(table, spec.output, args.out, spec.precision)
    _summary(len(table), started)


def _cmd_figure(args, started):
    spec = figure_preset(args.name)
    table = run_sweep(spec, workers=args.workers)
    fmt = args.format or spec.output.value
    write_table(table, fmt, args.out, args.precision or spec.precision)
    extra = ""
    if spec.name in ("fig6a", "fig6b"):
        other = run_sweep(figure_preset("fig6b" if spec.name == "fig6a" else "fig6a"), workers=args.workers)
        z, x = (table, other) if spec.name == "fig6a" else (other, table)
        flag = basis_decay_flag(z, x)
        extra = (f"decay_ratio_z={flag['z']:.6g} decay_ratio_x={flag['x']:.6g} "
                 f"x_basis_decays_slower={flag['flag']}")
    elif spec.name in _FIGURE_PARTNERS:
        partner = _FIGURE_PARTNERS[spec.name]
        diff = compare_tables(table, run_sweep(figure_preset(partner), workers=args.workers))
        extra = f"max_abs_diff_vs_{partner}={diff:.6g}"
    _summary(len(table), started, extra)


def _cmd_limits(args, started):
    import math

    if args.n < 2 or args.n % 2:
        raise ArgumentError("--n must be an even integer >= 2")
    row = (float(args.n), float(math.comb(args.n, args.n // 2)), coherence_closed_form_jz0(args.n),
           ghz_coherence(), broken_symmetry_coherence(args.n))
    table = ResultTable(("n", "m", "closed_form_jz0", "ghz", "broken_symmetry"), [row])
    write_table(table, args.format or "csv", args.out, args.precision or 12)
    _summary(1, started)


def _cmd_chain(args, started):
    spec = ModelSpec.from_params(args.n, args.jx, args.jx, 0.0, dz=args.dz, boundary=args.boundary)
    res = chain_ground_coherence(spec, args.basis)
    filled = "" if res.modes is None else " ".join(f"{q:.12g}" for q in res.modes.filled)
    table = ResultTable(
        ("n", "jx", "dz", "boundary", "basis", "coherence", "closed_form", "deviation", "energy", "filled_modes"),
        [(float(args.n), args.jx, args.dz, args.boundary, args.basis, res.coherence, res.closed_form,
          res.deviation, res.energy, filled)],
    )
    write_table(table, args.format or "csv", args.out, args.precision or 12)
    _summary(1, started)


_COMMANDS = {
    "point": _cmd_point,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "limits": _cmd_limits,
    "chain": _cmd_chain,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        _COMMANDS[args.command](args, started)
    except ContractError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except TableIOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
