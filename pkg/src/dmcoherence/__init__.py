"""Quantum coherence of two-site and small-chain Heisenberg XYZ models with
Dzyaloshinsky-Moriya interaction.

Coherence is the square root of the quantum Jensen-Shannon divergence between
a state and its dephased version in a chosen product basis.
"""

from .coherence import (
    Basis,
    CoherenceReport,
    coherence,
    coherence_report,
    local_coherence,
    product_of_marginals,
    qjsd,
)
from .densemath import partial_trace, pure_state, von_neumann_entropy
from .errors import (
    ArgumentError,
    CoherenceError,
    ConfigError,
    ContractError,
    DegeneracyError,
    DimensionError,
    SizeError,
    TableIOError,
)
from .limits import (
    broken_symmetry_coherence,
    chain_ground_coherence,
    coherence_closed_form_jz0,
    ghz_coherence,
    ghz_state,
    ground_state,
)
from .models import (
    Axis,
    Boundary,
    DispersionParams,
    ModelSpec,
    TwoSiteCouplings,
    build_chain_hamiltonian,
    dispersion,
    jw_mode_set,
    two_site_spectrum_dy,
    two_site_spectrum_dz,
)
from .sweep import (
    ResultTable,
    SweepAxis,
    SweepSpec,
    evaluate_point,
    figure_preset,
    read_table,
    run_point,
    run_sweep,
    write_table,
)
from .thermal import (
    gibbs_state,
    partition_function,
    thermal_state_dy_analytic,
    thermal_state_dz_analytic,
)

__version__ = "0.1.0"
