"""Dense complex-matrix primitives and entropy functionals.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` in row-major
order. A density matrix on ``N`` spin-1/2 sites has shape ``(2**N, 2**N)``;
site 0 is the most significant qubit of the row/column index, and the
computational state ``|0>`` is spin up (``sigma_z = +1``).

All functions are pure: inputs are never modified and every result is a
fresh array.
"""

from functools import reduce
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ArgumentError, ContractError, DimensionError, SizeError

MAX_SITES = 12

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
EIGH_HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-12

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class Spectrum(NamedTuple):
    """Eigen-decomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending, ``eigenvectors[:, i]`` belongs to
    ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_square(matrix) -> np.ndarray:
    """Return ``matrix`` as a complex square array or raise DimensionError."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def n_sites_of(dim: int) -> int:
    """Number of qubits for a Hilbert-space dimension ``2**N``."""
    n = int(dim).bit_length() - 1
    if dim < 1 or 2**n != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return n


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def hermitian_eigendecomposition(matrix) -> Spectrum:
    """Diagonalise a Hermitian matrix with a reproducible eigenvector phase.

    The input is symmetrised as ``(M + M^dagger)/2`` before calling LAPACK.
    Each eigenvector is rescaled so that its largest-magnitude component
    (the first one, on ties) is real and positive.

    Raises
    ------
    DimensionError
        If ``matrix`` is not square.
    ContractError
        If ``matrix`` differs from its adjoint by more than
        ``1e-10 * max(1, max|M|)``.
    """
    m = as_square(matrix)
    scale = max(1.0, max_abs(m))
    skew = max_abs(m - m.conj().T)
    if skew > EIGH_HERMITIAN_TOL * scale:
        raise ContractError(f"matrix is not Hermitian (max |M - M^H| = {skew:.3e})")
    evals, evecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    return Spectrum(evals, _fix_phases(evecs))


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    mags = np.abs(vectors)
    # first index whose magnitude is within rounding of the column maximum
    pivot = np.argmax(mags >= mags.max(axis=0) - 1e-12, axis=0)
    cols = np.arange(vectors.shape[1])
    lead = vectors[pivot, cols]
    return vectors * (np.abs(lead) / lead)[np.newaxis, :]


def check_density_matrix(rho, check_psd: bool = True) -> np.ndarray:
    """Validate a density matrix and return it as a complex array.

    Checks Hermiticity (1e-12), unit trace (1e-12), a power-of-two dimension
    and, unless ``check_psd`` is false, that the smallest eigenvalue is at
    least ``-1e-10``.
    """
    r = as_square(rho)
    n_sites_of(r.shape[0])
    skew = max_abs(r - r.conj().T)
    if skew > HERMITIAN_TOL:
        raise ContractError(f"density matrix is not Hermitian (max |rho - rho^H| = {skew:.3e})")
    tr = np.trace(r)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ContractError(f"density matrix trace is {tr.real:.15g}, expected 1")
    if check_psd:
        lo = float(np.linalg.eigvalsh(r)[0])
        if lo < -PSD_TOL:
            raise ContractError(f"density matrix has negative eigenvalue {lo:.3e}")
    return r


def pure_state(psi) -> np.ndarray:
    """Projector ``|psi><psi|`` of a normalised copy of ``psi``."""
    v = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ArgumentError("cannot build a state from the zero vector")
    v = v / norm
    return np.outer(v, v.conj())


def entropy_from_probabilities(p) -> float:
    """Shannon entropy in bits of a probability vector, with ``0 log 0 = 0``.

    Entries in ``[-1e-10, 0)`` are treated as zero; anything more negative is
    a contract violation rather than something to clip away.
    """
    p = np.asarray(p, dtype=float)
    if p.size and p.min() < -PSD_TOL:
        raise ContractError(f"negative probability/eigenvalue {p.min():.3e}")
    p = np.clip(p, 0.0, 1.0)
    nz = p[p > 0]
    return float(-np.sum(nz * np.log2(nz))) + 0.0


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy ``-Tr rho log2 rho`` in bits."""
    r = check_density_matrix(rho, check_psd=False)
    return entropy_from_probabilities(np.linalg.eigvalsh(r))


def dephase(rho) -> np.ndarray:
    """Drop every off-diagonal element: the closest incoherent state."""
    r = check_density_matrix(rho, check_psd=False)
    return np.diag(np.diag(r))


def partial_trace(rho, keep: Sequence[int]) -> np.ndarray:
    """Reduced state on the sites in ``keep``.

    ``keep`` holds 0-based site indices; the output factors follow the order
    given, so ``partial_trace(rho, [1, 0])`` swaps the two kept qubits.

    >>> bell = pure_state([1, 0, 0, 1])
    >>> np.allclose(partial_trace(bell, [0]), np.eye(2) / 2)
    True
    """
    r = check_density_matrix(rho, check_psd=False)
    n = n_sites_of(r.shape[0])
    keep = [int(k) for k in keep]
    if not keep:
        raise ArgumentError("keep must name at least one site")
    if len(set(keep)) != len(keep) or min(keep) < 0 or max(keep) >= n:
        raise ArgumentError(f"keep={keep} is not a set of distinct sites in 0..{n - 1}")
    traced = [s for s in range(n) if s not in keep]
    dk, dt = 2 ** len(keep), 2 ** len(traced)
    t = r.reshape((2,) * (2 * n))
    order = keep + traced
    t = t.transpose(order + [n + s for s in order]).reshape(dk, dt, dk, dt)
    return np.einsum("ajbj->ab", t)


def check_unitary(u) -> np.ndarray:
    u = as_square(u)
    err = max_abs(u.conj().T @ u - np.eye(u.shape[0]))
    if err > UNITARY_TOL:
        raise ContractError(f"matrix is not unitary (max |U^H U - I| = {err:.3e})")
    return u


def unitary_conjugate(rho, u) -> np.ndarray:
    """Return ``U^dagger rho U``: ``rho`` expressed in the basis given by U's columns."""
    r = as_square(rho)
    u = check_unitary(u)
    if u.shape != r.shape:
        raise DimensionError(f"unitary shape {u.shape} does not match state shape {r.shape}")
    out = u.conj().T @ r @ u
    return 0.5 * (out + out.conj().T)


def kron(*ops) -> np.ndarray:
    """Tensor product of one or more matrices, left factor most significant."""
    if not ops:
        raise ArgumentError("kron needs at least one operand")
    return reduce(np.kron, (np.asarray(o, dtype=complex) for o in ops))


def site_operator(op, site: int, n_sites: int) -> np.ndarray:
    """Embed a single-qubit operator acting on ``site`` into ``n_sites`` qubits."""
    if n_sites > MAX_SITES:
        raise SizeError(f"n_sites={n_sites} exceeds the dense limit of {MAX_SITES}")
    if not 0 <= site < n_sites:
        raise ArgumentError(f"site {site} outside 0..{n_sites - 1}")
    factors = [IDENTITY] * n_sites
    factors[site] = np.asarray(op, dtype=complex)
    return kron(*factors)
