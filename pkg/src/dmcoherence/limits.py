"""Zero-temperature coherence: closed forms and exact diagonalisation.

For the ``Jz = 0``, ``Jx = Jy = J``, ``D = (0, 0, D)`` chain the ground
state is predicted to be an equal-modulus superposition of all
``m = binomial(N, N/2)`` zero-magnetisation configurations, which gives the
closed form ``coherence_closed_form_jz0``. The exact-diagonalisation path
here checks that prediction. It agrees at N = 2. For larger N the
amplitudes of the true ground state are not of equal modulus, so the
deviation is reported rather than assumed to vanish.
"""

import math
from typing import NamedTuple, Optional

import numpy as np

from .coherence import Basis, coherence
from .densemath import MAX_SITES, pure_state
from .errors import ArgumentError, DegeneracyError, SizeError
from .models import (
    Boundary,
    DispersionParams,
    ModelSpec,
    ZERO_MODE_TOL,
    ModeSet,
    build_chain_hamiltonian,
    dispersion,
    jw_mode_set,
    momentum_grid,
)

DEGENERACY_TOL = 1e-9


def equal_superposition_coherence(m: int) -> float:
    """Z-basis coherence of a pure state with ``m`` equal-modulus amplitudes.

    The mixture ``(rho + rho_d)/2`` has eigenvalues ``(1 + 1/m)/2`` once and
    ``1/(2m)`` ``m - 1`` times, independent of the amplitude phases.
    """
    if int(m) != m or m < 1:
        raise ArgumentError(f"m must be a positive integer, got {m}")
    m = int(m)
    if m == 1:
        return 0.0
    value = 1 + 0.5 * math.log2(m) - 0.5 * (1 + 1 / m) * math.log2(m + 1)
    return math.sqrt(max(value, 0.0))


def coherence_closed_form_jz0(n: int) -> float:
    """Predicted ground-state coherence of the ``Jz = 0`` chain of ``n`` sites.

    ``sqrt(1 + log2(m)/2 - (1 + 1/m) log2(m + 1)/2)`` with
    ``m = binomial(n, n/2)``; increases with ``n`` towards 1.

    >>> round(coherence_closed_form_jz0(2), 6)
    0.557923
    """
    if int(n) != n or n < 2 or n % 2:
        raise ArgumentError(f"n must be an even integer >= 2, got {n}")
    return equal_superposition_coherence(math.comb(int(n), int(n) // 2))


def ghz_state(n_sites: int) -> np.ndarray:
    """Projector on ``(|u...u> + |d...d>)/sqrt(2)``."""
    if n_sites < 1 or n_sites > MAX_SITES:
        raise ArgumentError(f"n_sites must be in 1..{MAX_SITES}")
    psi = np.zeros(2**n_sites, dtype=complex)
    psi[0] = psi[-1] = 1.0
    return pure_state(psi)


def ghz_coherence() -> float:
    """Coherence of the spin-flip symmetric ferromagnetic ground state, any N."""
    return equal_superposition_coherence(2)


def product_state(spins) -> np.ndarray:
    """Projector on the sigma_z product state; ``spins`` holds +1 (up) / -1 (down)."""
    spins = [int(s) for s in spins]
    if not spins or any(s not in (1, -1) for s in spins):
        raise ArgumentError("spins must be a non-empty sequence of +1/-1")
    index = 0
    for s in spins:
        index = (index << 1) | (s == -1)
    psi = np.zeros(2 ** len(spins), dtype=complex)
    psi[index] = 1.0
    return pure_state(psi)


def broken_symmetry_coherence(n_sites: int = 4, pattern: str = "ferro") -> float:
    """Coherence of a symmetry-broken Ising ground state (ferro or Neel).

    Any sigma_z product state is already incoherent, so this is exactly 0.
    """
    if pattern == "ferro":
        spins = [1] * n_sites
    elif pattern == "neel":
        spins = [1 if i % 2 == 0 else -1 for i in range(n_sites)]
    else:
        raise ArgumentError(f"pattern must be 'ferro' or 'neel', got {pattern!r}")
    return coherence(product_state(spins), Basis.Z)


def total_sz(n_sites: int) -> np.ndarray:
    """Total sigma_z eigenvalue of every computational basis state."""
    b = np.arange(2**n_sites)
    ones = np.zeros_like(b)
    for k in range(n_sites):
        ones += (b >> k) & 1
    return n_sites - 2 * ones


class GroundStateResult(NamedTuple):
    energy: float
    state: np.ndarray
    degeneracy: int
    sector: Optional[int]


def ground_state(spec: ModelSpec, sector: Optional[int] = None) -> GroundStateResult:
    """Lowest eigenpair of the chain, optionally inside one total-sigma_z sector.

    The sector restriction keeps only the basis states of that
    magnetisation; the Hamiltonian must not couple them to the rest.
    ``degeneracy`` counts levels within 1e-9 of the lowest one; when it
    exceeds 1 the returned vector is the first of the degenerate set.
    """
    if spec.n_sites > MAX_SITES:
        raise SizeError(f"n_sites={spec.n_sites} exceeds the dense limit of {MAX_SITES}")
    h = build_chain_hamiltonian(spec)
    sz = total_sz(spec.n_sites)
    if sector is None:
        idx = np.arange(h.shape[0])
    else:
        idx = np.flatnonzero(sz == sector)
        if idx.size == 0:
            raise ArgumentError(f"sector {sector} is empty for {spec.n_sites} sites")
        rest = np.flatnonzero(sz != sector)
        if rest.size and np.max(np.abs(h[np.ix_(rest, idx)])) > 1e-12:
            raise ArgumentError("total sigma_z is not conserved by this Hamiltonian")
    evals, evecs = np.linalg.eigh(h[np.ix_(idx, idx)])
    degeneracy = int(np.sum(evals - evals[0] <= DEGENERACY_TOL))
    vec = evecs[:, 0]
    pivot = np.argmax(np.abs(vec) >= np.abs(vec).max() - 1e-12)
    vec = vec * (abs(vec[pivot]) / vec[pivot])
    state = np.zeros(h.shape[0], dtype=complex)
    state[idx] = vec
    weights = np.abs(state) ** 2
    found = None
    for value in np.unique(sz[weights > 1e-12]):
        if np.sum(weights[sz == value]) > 1 - 1e-12:
            found = int(value)
    return GroundStateResult(float(evals[0]), state, degeneracy, found)


class ChainGroundCoherence(NamedTuple):
    coherence: float
    closed_form: float
    deviation: float
    energy: float
    modes: Optional[ModeSet]


def chain_ground_coherence(spec: ModelSpec, basis=Basis.Z) -> ChainGroundCoherence:
    """Ground-state coherence of the ``Jz = 0`` DM chain next to the closed form.

    The ground state is taken from exact diagonalisation in the zero
    magnetisation sector. ``deviation`` is ``coherence - closed_form``.

    Raises
    ------
    DegeneracyError
        If a Jordan-Wigner mode sits at zero energy (periodic chains) or the
        exact ground level is degenerate.
    """
    jx, jy, jz = spec.j
    dx, dy, dz = spec.d
    if jz != 0 or jx != jy or dx != 0 or dy != 0:
        raise ArgumentError("chain_ground_coherence needs Jz = 0, Jx = Jy and D along z")
    if spec.n_sites % 2:
        raise ArgumentError("the zero-magnetisation sector needs an even number of sites")
    modes = None
    if spec.boundary is Boundary.PERIODIC:
        modes = jw_mode_set(DispersionParams(jx, dz, spec.n_sites))
        if modes.zero_mode:
            q = momentum_grid(spec.n_sites)
            lam = dispersion(DispersionParams(jx, dz, spec.n_sites), q)
            zeros = ", ".join(f"{v:.6g}" for v in q[np.abs(lam) <= ZERO_MODE_TOL])
            raise DegeneracyError(f"zero-energy Jordan-Wigner modes at q = {zeros}")
    full = ground_state(spec)
    if full.degeneracy > 1:
        raise DegeneracyError(f"ground level is {full.degeneracy}-fold degenerate")
    gs = ground_state(spec, sector=0)
    if gs.degeneracy > 1 or gs.energy > full.energy + DEGENERACY_TOL:
        raise DegeneracyError("zero-magnetisation ground state is degenerate or not the global one")
    value = coherence(pure_state(gs.state), basis)
    predicted = coherence_closed_form_jz0(spec.n_sites)
    return ChainGroundCoherence(value, predicted, value - predicted, gs.energy, modes)
