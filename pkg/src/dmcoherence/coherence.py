"""Coherence as the square root of the quantum Jensen-Shannon divergence.

The incoherent reference state is the dephased state in a product basis
that is the same on every site (eigenbasis of sigma_z, sigma_x or sigma_y).
Coherence is split into a local part, carried by the product of the
single-site marginals, and the correlated remainder.
"""

from dataclasses import dataclass

import numpy as np

from .densemath import (
    MAX_SITES,
    as_square,
    check_density_matrix,
    entropy_from_probabilities,
    kron,
    n_sites_of,
    partial_trace,
    unitary_conjugate,
)
from .errors import ContractError, DimensionError, SizeError
from .models import Axis

Basis = Axis

QJSD_TOL = 1e-12
DIAGONAL_TOL = 1e-12

_SQ2 = np.sqrt(0.5)
_SINGLE_SITE = {
    Axis.Z: np.eye(2, dtype=complex),
    Axis.X: _SQ2 * np.array([[1, 1], [1, -1]], dtype=complex),
    Axis.Y: _SQ2 * np.array([[1, 1], [1j, -1j]], dtype=complex),
}


def basis_change_unitary(basis, n_sites: int) -> np.ndarray:
    """``u^{(x)N}`` whose columns are the eigenvectors of the chosen Pauli.

    Columns are ordered eigenvalue +1 first, so ``u^H sigma u = diag(1, -1)``.
    """
    basis = Basis.parse(basis)
    if n_sites > MAX_SITES:
        raise SizeError(f"n_sites={n_sites} exceeds the dense limit of {MAX_SITES}")
    if basis is Basis.Z:
        return np.eye(2**n_sites, dtype=complex)
    return kron(*[_SINGLE_SITE[basis]] * n_sites)


def rotate_to_basis(rho, basis) -> np.ndarray:
    """``rho`` written in the measurement basis (no-op for z)."""
    basis = Basis.parse(basis)
    r = as_square(rho)
    if basis is Basis.Z:
        return r
    return unitary_conjugate(r, basis_change_unitary(basis, n_sites_of(r.shape[0])))


def _qjsd_terms(rho, sigma, sigma_is_diagonal=False):
    s_rho = entropy_from_probabilities(np.linalg.eigvalsh(rho))
    if sigma_is_diagonal:
        s_sigma = entropy_from_probabilities(np.diag(sigma).real)
    else:
        s_sigma = entropy_from_probabilities(np.linalg.eigvalsh(sigma))
    s_mix = entropy_from_probabilities(np.linalg.eigvalsh(0.5 * (rho + sigma)))
    value = s_mix - 0.5 * s_rho - 0.5 * s_sigma
    if value < -QJSD_TOL:
        raise ContractError(f"Jensen-Shannon divergence came out negative ({value:.3e})")
    return min(max(value, 0.0), 1.0), s_rho, s_sigma, s_mix


def qjsd(rho, sigma) -> float:
    """Quantum Jensen-Shannon divergence ``S((rho+sigma)/2) - S(rho)/2 - S(sigma)/2``.

    Entropies are in bits, so the value lies in ``[0, 1]``; 1 is reached for
    orthogonal pure states.
    """
    r = check_density_matrix(rho, check_psd=False)
    s = check_density_matrix(sigma, check_psd=False)
    if r.shape != s.shape:
        raise DimensionError(f"state shapes differ: {r.shape} vs {s.shape}")
    return _qjsd_terms(r, s)[0]


def _is_diagonal(rho) -> bool:
    off = rho - np.diag(np.diag(rho))
    return not off.size or float(np.max(np.abs(off))) <= DIAGONAL_TOL


def _coherence_terms(rho, basis):
    r = check_density_matrix(rho, check_psd=False)
    rotated = rotate_to_basis(r, basis)
    dephased = np.diag(np.diag(rotated))
    if _is_diagonal(rotated):
        s = entropy_from_probabilities(np.diag(rotated).real)
        return 0.0, s, s, s
    j, s_rho, s_d, s_mix = _qjsd_terms(rotated, dephased, sigma_is_diagonal=True)
    return float(np.sqrt(j)), s_rho, s_d, s_mix


def coherence(rho, basis=Basis.Z) -> float:
    """Coherence ``sqrt(J(rho, rho_d))`` of ``rho`` in the given product basis.

    Returns exactly 0 when the rotated state has no off-diagonal element
    above 1e-12.

    >>> from dmcoherence.densemath import pure_state
    >>> round(coherence(pure_state([1, 0, 0, 1])), 6)
    0.557923
    """
    return _coherence_terms(rho, basis)[0]


def product_of_marginals(rho) -> np.ndarray:
    """Tensor product of all single-site reduced states of ``rho``."""
    r = check_density_matrix(rho, check_psd=False)
    n = n_sites_of(r.shape[0])
    return kron(*[partial_trace(r, [i]) for i in range(n)])


def local_coherence(rho, basis=Basis.Z) -> float:
    """Coherence of the product of single-site marginals."""
    return coherence(product_of_marginals(rho), basis)


@dataclass(frozen=True)
class CoherenceReport:
    """Total, local and correlated coherence of one state.

    The entropies refer to the state rotated into ``basis``: ``entropy_rho``
    of the state itself, ``entropy_rho_d`` of its dephased version and
    ``entropy_mix`` of their equal mixture. ``correlated`` is
    ``total - local`` and is not clipped, so a negative value is visible.
    """

    total: float
    local: float
    correlated: float
    basis: Basis
    entropy_rho: float
    entropy_rho_d: float
    entropy_mix: float


def coherence_report(rho, basis=Basis.Z) -> CoherenceReport:
    basis = Basis.parse(basis)
    total, s_rho, s_d, s_mix = _coherence_terms(rho, basis)
    local = local_coherence(rho, basis)
    return CoherenceReport(
        total=total,
        local=local,
        correlated=total - local,
        basis=basis,
        entropy_rho=s_rho,
        entropy_rho_d=s_d,
        entropy_mix=s_mix,
    )
