"""Single points, parameter sweeps, figure presets and table I/O.

A sweep is a one- or two-dimensional inclusive linear grid over any of
``temperature, jx, jy, jz, dx, dy, dz``; the remaining parameters are held
fixed. Rows come out in lexicographic grid order (first axis outermost),
regardless of how many worker threads evaluate them.
"""

import csv
import enum
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np

from .coherence import Basis, CoherenceReport, coherence_report
from .densemath import MAX_SITES, hermitian_eigendecomposition, max_abs
from .errors import ArgumentError, ConfigError, ContractError, TableIOError
from .models import Axis, Boundary, ModelSpec, TwoSiteCouplings, build_chain_hamiltonian
from .thermal import (
    check_temperature,
    gibbs_from_spectrum,
    partition_function_dy,
    partition_function_dz,
    thermal_state_dy_analytic,
    thermal_state_dz_analytic,
)

PARAMETERS = ("temperature", "jx", "jy", "jz", "dx", "dy", "dz")
COLUMNS = PARAMETERS + (
    "basis",
    "coherence_total",
    "coherence_local",
    "coherence_correlated",
    "entropy_rho",
    "partition_function",
)
ENGINE_AGREEMENT_TOL = 1e-9
STATE_AGREEMENT_TOL = 1e-10
SPOT_CHECKS = 10
DEFAULT_POINTS = 50


class Engine(str, enum.Enum):
    ANALYTIC_DZ = "analytic-dz"
    ANALYTIC_DY = "analytic-dy"
    NUMERIC = "numeric"


class OutputFormat(str, enum.Enum):
    CSV = "csv"
    JSON = "json"


def _parse_enum(cls, value, what):
    if isinstance(value, cls):
        return value
    try:
        return cls(str(value).strip().lower())
    except ValueError:
        valid = ", ".join(m.value for m in cls)
        raise ConfigError(f"unknown {what} {value!r}; expected one of {valid}") from None


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one result table.

    ``tied`` maps a parameter to the axis it follows, e.g.
    ``{"jy": "jx", "jz": "jx"}`` sweeps an isotropic exchange.
    """

    axes: tuple
    fixed: Mapping[str, float] = field(default_factory=dict)
    n_sites: int = 2
    boundary: Boundary = Boundary.OPEN
    tied: Mapping[str, str] = field(default_factory=dict)
    basis: Basis = Basis.Z
    engine: Engine = Engine.NUMERIC
    output: OutputFormat = OutputFormat.CSV
    precision: int = 12
    name: str = ""

    def __post_init__(self):
        set_ = object.__setattr__
        axes = tuple(a if isinstance(a, SweepAxis) else SweepAxis(**a) for a in self.axes)
        set_(self, "axes", axes)
        fixed = {"temperature": 1.0, **{p: 0.0 for p in PARAMETERS[1:]}}
        for key, value in dict(self.fixed).items():
            if key not in PARAMETERS:
                raise ConfigError(f"unknown parameter {key!r} in fixed values")
            fixed[key] = float(value)
        set_(self, "fixed", fixed)
        set_(self, "tied", dict(self.tied))
        try:
            set_(self, "boundary", Boundary.parse(self.boundary))
            set_(self, "basis", Basis.parse(self.basis))
        except ArgumentError as exc:
            raise ConfigError(str(exc)) from None
        set_(self, "engine", _parse_enum(Engine, self.engine, "engine"))
        set_(self, "output", _parse_enum(OutputFormat, self.output, "output format"))
        self._validate()

    def _validate(self):
        if not 1 <= len(self.axes) <= 2:
            raise ConfigError(f"a sweep needs one or two axes, got {len(self.axes)}")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate sweep axes {names}")
        for a in self.axes:
            if a.name not in PARAMETERS:
                raise ConfigError(f"unknown sweep axis {a.name!r}; expected one of {', '.join(PARAMETERS)}")
            if int(a.count) != a.count or a.count < 2:
                raise ConfigError(f"axis {a.name} needs count >= 2, got {a.count}")
            if not (math.isfinite(a.start) and math.isfinite(a.stop)) or not a.start < a.stop:
                raise ConfigError(f"axis {a.name} needs finite start < stop, got {a.start}, {a.stop}")
            if a.name == "temperature" and a.start <= 0:
                raise ConfigError("temperatures must be positive")
        for key, target in self.tied.items():
            if key not in PARAMETERS or target not in names or key in names:
                raise ConfigError(f"cannot tie {key!r} to {target!r}")
            if (key == "temperature") != (target == "temperature"):
                raise ConfigError("temperature can only be tied to temperature")
        if "temperature" not in names and self.fixed["temperature"] <= 0:
            raise ConfigError("temperature must be positive")
        if int(self.n_sites) != self.n_sites or not 2 <= self.n_sites <= MAX_SITES:
            raise ConfigError(f"n_sites must be in 2..{MAX_SITES}")
        if not 1 <= int(self.precision) <= 17:
            raise ConfigError("precision must be between 1 and 17 significant digits")
        if self.engine is not Engine.NUMERIC:
            axis = Axis.Z if self.engine is Engine.ANALYTIC_DZ else Axis.Y
            others = {"dx", "dy", "dz"} - {"d" + axis.value}
            varied = set(names) | set(self.tied)
            if self.n_sites != 2 or self.boundary is not Boundary.OPEN:
                raise ConfigError(f"engine {self.engine.value} needs an open two-site model")
            if others & varied or any(self.fixed[p] != 0.0 for p in others):
                raise ConfigError(f"engine {self.engine.value} needs the DM vector along {axis.value}")

    def grid(self) -> list:
        """Parameter dictionaries in row order (first axis outermost)."""
        points = []
        for combo in np.array(np.meshgrid(*[a.values for a in self.axes], indexing="ij")).reshape(
            len(self.axes), -1
        ).T:
            params = dict(self.fixed)
            for axis, value in zip(self.axes, combo):
                params[axis.name] = float(value)
            for key, target in self.tied.items():
                params[key] = params[target]
            points.append(params)
        return points

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n_sites": self.n_sites,
            "boundary": self.boundary.value,
            "fixed": dict(self.fixed),
            "axes": [vars(a).copy() for a in self.axes],
            "tied": dict(self.tied),
            "basis": self.basis.value,
            "engine": self.engine.value,
            "output": self.output.value,
            "precision": self.precision,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "SweepSpec":
        known = {"name", "n_sites", "boundary", "fixed", "axes", "tied", "basis",
                 "engine", "output", "precision"}
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(extra))}")
        if "axes" not in data:
            raise ConfigError("config has no 'axes'")
        try:
            axes = tuple(SweepAxis(str(a["name"]), float(a["start"]), float(a["stop"]), int(a["count"]))
                         for a in data["axes"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"malformed axis entry: {exc}") from None
        kwargs = {k: v for k, v in data.items() if k != "axes"}
        return cls(axes=axes, **kwargs)


@dataclass
class ResultTable:
    columns: tuple
    rows: list

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def records(self) -> list:
        return [dict(zip(self.columns, row)) for row in self.rows]


# --- evaluation ---------------------------------------------------------------

def _two_site_form(model):
    """TwoSiteCouplings equivalent of ``model`` when a closed form exists."""
    if isinstance(model, TwoSiteCouplings):
        return model if model.d_axis in (Axis.Z, Axis.Y) else None
    if model.n_sites != 2 or model.boundary is not Boundary.OPEN:
        return None
    dx, dy, dz = model.d
    if dx == 0 and dy == 0:
        return TwoSiteCouplings(model.j, Axis.Z, dz)
    if dx == 0 and dz == 0:
        return TwoSiteCouplings(model.j, Axis.Y, dy)
    return None


def _analytic_state(c: TwoSiteCouplings, temperature):
    if c.d_axis is Axis.Z:
        return thermal_state_dz_analytic(c, temperature), partition_function_dz(c, temperature)
    return thermal_state_dy_analytic(c, temperature), partition_function_dy(c, temperature)


def _numeric_state(model, temperature):
    spec = model.to_model() if isinstance(model, TwoSiteCouplings) else model
    h = build_chain_hamiltonian(spec)
    rho, log_z = gibbs_from_spectrum(hermitian_eigendecomposition(h), temperature)
    with np.errstate(over="ignore"):
        return rho, float(np.exp(log_z))


def thermal_state(model, temperature, check: bool = True):
    """Gibbs state and partition function, analytic when possible.

    With ``check`` the analytic state is compared element by element with
    the numeric one and a disagreement above 1e-10 raises ContractError.
    """
    check_temperature(temperature)
    form = _two_site_form(model)
    if form is None:
        return _numeric_state(model, temperature)
    rho, z = _analytic_state(form, temperature)
    if check:
        numeric, _ = _numeric_state(form, temperature)
        diff = max_abs(rho - numeric)
        if diff > STATE_AGREEMENT_TOL:
            raise ContractError(f"analytic and numeric Gibbs states differ by {diff:.3e}")
    return rho, z


def run_point(model, temperature, basis=Basis.Z) -> CoherenceReport:
    """Coherence report of the thermal state of ``model`` at ``temperature``.

    ``model`` is a ModelSpec or TwoSiteCouplings. The closed-form state is
    used when one exists, cross-checked against exact diagonalisation.
    """
    rho, _ = thermal_state(model, temperature)
    return coherence_report(rho, basis)


def _model_for(params: Mapping, n_sites: int, boundary, engine: Engine):
    j = (params["jx"], params["jy"], params["jz"])
    if engine is Engine.ANALYTIC_DZ:
        return TwoSiteCouplings(j, Axis.Z, params["dz"])
    if engine is Engine.ANALYTIC_DY:
        return TwoSiteCouplings(j, Axis.Y, params["dy"])
    return ModelSpec(n_sites, j, (params["dx"], params["dy"], params["dz"]), boundary)


def evaluate_point(params: Mapping, n_sites: int = 2, boundary=Boundary.OPEN,
                   basis=Basis.Z, engine=Engine.NUMERIC) -> tuple:
    """One table row (ordered as ``COLUMNS``) for the parameter set ``params``."""
    engine = _parse_enum(Engine, engine, "engine")
    basis = Basis.parse(basis)
    model = _model_for(params, n_sites, Boundary.parse(boundary), engine)
    t = params["temperature"]
    if engine is Engine.NUMERIC:
        rho, z = _numeric_state(model, t)
    else:
        rho, z = _analytic_state(model, t)
    rep = coherence_report(rho, basis)
    return tuple(float(params[p]) for p in PARAMETERS) + (
        basis.value, rep.total, rep.local, rep.correlated, rep.entropy_rho, z,
    )


def _evaluate(params, spec: SweepSpec, engine=None):
    return evaluate_point(params, spec.n_sites, spec.boundary, spec.basis,
                          spec.engine if engine is None else engine)


def _spot_check(spec: SweepSpec, grid: list, rows: list):
    rng = np.random.default_rng(len(grid))
    picks = rng.choice(len(grid), size=min(SPOT_CHECKS, len(grid)), replace=False)
    at = COLUMNS.index("coherence_total")
    for i in sorted(picks):
        numeric = _evaluate(grid[i], spec, Engine.NUMERIC)
        diff = abs(numeric[at] - rows[i][at])
        if diff > ENGINE_AGREEMENT_TOL:
            raise ContractError(f"analytic and numeric coherence differ by {diff:.3e} at {grid[i]}")


def run_sweep(spec: SweepSpec, workers: int = 1) -> ResultTable:
    """Evaluate every grid point of ``spec``.

    ``workers`` threads share the work; the result order and values do not
    depend on it. Analytic engines are spot-checked against the numeric one
    at ten grid points.
    """
    grid = spec.grid()
    if workers <= 1:
        rows = [_evaluate(p, spec) for p in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda p: _evaluate(p, spec), grid))
    if spec.engine is not Engine.NUMERIC:
        _spot_check(spec, grid, rows)
    return ResultTable(COLUMNS, rows)


# --- figure presets -------------------------------------------------------------

T_RANGE = (0.1, 5.0)
J_RANGE = (-4.0, 4.0)
D_RANGE = (0.0, 10.0)


def _ax(name, bounds, count=DEFAULT_POINTS):
    return SweepAxis(name, bounds[0], bounds[1], count)


def _preset(name, axes, fixed, engine, basis="z", tied=None):
    return SweepSpec(axes=tuple(axes), fixed=fixed, engine=engine, basis=basis,
                     tied=tied or {}, name=name)


_DZ, _DY, _NUM = Engine.ANALYTIC_DZ, Engine.ANALYTIC_DY, Engine.NUMERIC
_T = _ax("temperature", T_RANGE)

FIGURES = {
    # coherence vs T, one curve per Jz in {-1, 0, 1, 2}
    "fig1a": lambda: _preset("fig1a", [SweepAxis("jz", -1.0, 2.0, 4), _T],
                             {"jx": -1.0, "jy": -0.5, "dz": 1.0}, _DZ),
    "fig1b": lambda: _preset("fig1b", [_T, _ax("jz", J_RANGE)], {"jx": -1.0, "jy": -0.5, "dz": 1.0}, _DZ),
    "fig1c": lambda: _preset("fig1c", [_T, _ax("jx", J_RANGE)], {"jz": -1.0, "jy": -0.5, "dz": 1.0}, _DZ),
    "fig1d": lambda: _preset("fig1d", [_T, _ax("dz", D_RANGE)], {"jz": 0.2, "jx": -1.0, "jy": -0.5}, _DZ),
    "fig2a": lambda: _preset("fig2a", [_T, _ax("jz", J_RANGE)], {"dz": 1.0, "jx": -1.0, "jy": -1.0}, _DZ),
    "fig2b": lambda: _preset("fig2b", [_T, _ax("dz", D_RANGE)], {"jz": 1.0, "jx": -1.0, "jy": -1.0}, _DZ),
    "fig3a": lambda: _preset("fig3a", [_ax("jy", J_RANGE), _T], {"dy": 1.0, "jx": -1.0, "jz": -0.5}, _DY),
    "fig3b": lambda: _preset("fig3b", [_T, _ax("jy", J_RANGE)], {"dy": 1.0, "jx": -1.0, "jz": -0.5}, _DY),
    "fig3c": lambda: _preset("fig3c", [_T, _ax("jx", J_RANGE)], {"jy": 0.2, "jz": -0.5, "dy": 1.0}, _DY),
    "fig3d": lambda: _preset("fig3d", [_T, _ax("dy", D_RANGE)], {"jx": -1.0, "jy": 0.2, "jz": -0.5}, _DY),
    # DM along x: the exchange J is the pair (Jy, Jz) orthogonal to it, Jx = -1
    "fig5a": lambda: _preset("fig5a", [_T, _ax("jy", J_RANGE)], {"dx": 1.0, "jx": -1.0}, _NUM,
                             tied={"jz": "jy"}),
    "fig5b": lambda: _preset("fig5b", [_T, _ax("dx", D_RANGE)], {"jx": -1.0, "jy": 1.0, "jz": 1.0}, _NUM),
    "fig5c": lambda: _preset("fig5c", [_T, _ax("jx", J_RANGE)], {"dx": 1.0}, _NUM,
                             tied={"jy": "jx", "jz": "jx"}),
    "fig5d": lambda: _preset("fig5d", [_T, _ax("dx", D_RANGE)], {"jx": -1.0, "jy": -1.0, "jz": -1.0}, _NUM),
    "fig6a": lambda: _preset("fig6a", [_ax("jz", J_RANGE), _T], {"jx": -1.0, "jy": -0.5, "dz": 1.0}, _DZ, "z"),
    "fig6b": lambda: _preset("fig6b", [_ax("jz", J_RANGE), _T], {"jx": -1.0, "jy": -0.5, "dz": 1.0}, _DZ, "x"),
    "fig7a": lambda: _preset("fig7a", [_ax("dz", D_RANGE), _ax("jz", J_RANGE)],
                             {"jx": -1.0, "jy": -0.5, "temperature": 2.5}, _DZ, "x"),
    "fig7b": lambda: _preset("fig7b", [_ax("dx", D_RANGE), _ax("jx", J_RANGE)],
                             {"jy": -0.5, "jz": -1.0, "temperature": 2.5}, _NUM, "z"),
}


def figure_preset(name: str) -> SweepSpec:
    """The parameter grid behind one named figure panel, e.g. ``"fig1a"``."""
    try:
        return FIGURES[name.strip().lower()]()
    except KeyError:
        raise ConfigError(f"unknown figure {name!r}; valid names: {', '.join(FIGURES)}") from None


def basis_decay_flag(table_z: ResultTable, table_x: ResultTable) -> dict:
    """Compare how fast coherence decays with T in the z and x bases.

    Both tables must come from a (jz, temperature) grid such as fig6a/fig6b.
    At the largest ``jz`` the ratio ``C(T_max)/C(T_min)`` is computed per
    basis; ``flag`` is true when the x-basis ratio is the larger one.
    """
    out = {}
    for label, table in (("z", table_z), ("x", table_x)):
        recs = table.records()
        jz_max = max(r["jz"] for r in recs)
        curve = sorted((r["temperature"], r["coherence_total"]) for r in recs if r["jz"] == jz_max)
        c_low, c_high = curve[0][1], curve[-1][1]
        out[label] = c_high / c_low if c_low > 0 else float("nan")
        out["jz"] = jz_max
    out["flag"] = bool(out["x"] > out["z"])
    return out


def compare_tables(a: ResultTable, b: ResultTable, column: str = "coherence_total") -> float:
    """Largest absolute difference of ``column`` between two equally shaped tables."""
    if len(a) != len(b):
        raise ArgumentError("tables have different numbers of rows")
    return max(abs(x - y) for x, y in zip(a.column(column), b.column(column)))


# --- table I/O ----------------------------------------------------------------

def _render(value, precision: int):
    if isinstance(value, str):
        return value
    return format(float(value), f".{precision}g")


def format_table(table: ResultTable, fmt=OutputFormat.CSV, precision: int = 12) -> str:
    fmt = _parse_enum(OutputFormat, fmt, "output format")
    if fmt is OutputFormat.CSV:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_render(v, precision) for v in row])
        return buf.getvalue()
    records = [
        {k: (v if isinstance(v, str) else float(_render(v, precision))) for k, v in zip(table.columns, row)}
        for row in table.rows
    ]
    return json.dumps(records, indent=1) + "\n"


def write_table(table: ResultTable, fmt=OutputFormat.CSV, destination=None, precision: int = 12) -> None:
    """Write ``table`` as CSV or JSON to a path, a text stream, or stdout (``None``/``"-"``)."""
    text = format_table(table, fmt, precision)
    if destination is None or destination == "-":
        sys.stdout.write(text)
        return
    if hasattr(destination, "write"):
        destination.write(text)
        return
    path = Path(destination)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise TableIOError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _parse_cell(name: str, value):
    if name == "basis" or isinstance(value, str) and not value:
        return str(value)
    try:
        return float(value)
    except ValueError:
        return str(value)


def parse_table(text: str, fmt=OutputFormat.CSV) -> ResultTable:
    fmt = _parse_enum(OutputFormat, fmt, "output format")
    if fmt is OutputFormat.CSV:
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader))
        rows = [tuple(_parse_cell(n, v) for n, v in zip(header, r)) for r in reader if r]
        return ResultTable(header, rows)
    records = json.loads(text)
    header = tuple(records[0]) if records else COLUMNS
    return ResultTable(header, [tuple(_parse_cell(n, r[n]) for n in header) for r in records])


def read_table(source, fmt=OutputFormat.CSV) -> ResultTable:
    """Read a table written by :func:`write_table`."""
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableIOError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return parse_table(text, fmt)


def default_engine(n_sites: int, boundary, d: Sequence[float]) -> Engine:
    """Analytic engine when the model admits one, numeric otherwise."""
    dx, dy, dz = d
    if n_sites == 2 and Boundary.parse(boundary) is Boundary.OPEN:
        if dx == 0 and dy == 0:
            return Engine.ANALYTIC_DZ
        if dx == 0 and dz == 0:
            return Engine.ANALYTIC_DY
    return Engine.NUMERIC
