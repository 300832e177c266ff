"""
Parameter sweeps and result tables
==================================
"""

import sys

from dmcoherence import SweepAxis, SweepSpec, figure_preset, run_sweep, write_table
from dmcoherence.sweep import basis_decay_flag

spec = SweepSpec(
    axes=(SweepAxis("temperature", 0.5, 2.0, 4), SweepAxis("dz", 0.0, 2.0, 3)),
    fixed={"jx": -1.0, "jy": -0.5, "jz": 0.2},
    engine="analytic-dz",
    precision=6,
)
table = run_sweep(spec, workers=4)
write_table(table, "csv", sys.stdout, precision=6)

# a SweepSpec serialises to the same JSON the CLI reads with --config
print(spec.to_dict())

# %%
# Figure presets are ready-made grids.

z = run_sweep(figure_preset("fig6a"))
x = run_sweep(figure_preset("fig6b"))
print(len(z), "rows;", basis_decay_flag(z, x))
