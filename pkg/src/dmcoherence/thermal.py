"""Gibbs states ``exp(-H/T)/Z`` with ``k_B = 1``.

The numeric route diagonalises any Hermitian Hamiltonian. The two-site
closed forms build the DM-along-z X-state (entries r, u, v, s) and the
DM-along-y state (entries m1, m2, n1, n2, q) directly from the analytic
spectra. Every exponent is shifted by the lowest energy, so nothing
overflows at low temperature.
"""

from typing import NamedTuple

import numpy as np

from .densemath import Spectrum, hermitian_eigendecomposition, max_abs
from .errors import ArgumentError
from .models import Axis, TwoSiteCouplings, two_site_spectrum_dy, two_site_spectrum_dz

GROUND_STATE_T = 1e-6
OMEGA_LIMIT_TOL = 1e-12


def check_temperature(temperature) -> float:
    t = float(temperature)
    if not np.isfinite(t) or t <= 0:
        raise ArgumentError(f"temperature must be positive and finite, got {temperature!r}")
    return t


def boltzmann_weights(energies, temperature: float):
    """Shifted weights ``exp(-(E - E_min)/T)`` and ``log Z``.

    Below ``T = 1e-6`` the weights become the indicator of the ground
    manifold (gap tolerance 1e-9 relative to the energy scale).
    """
    e = np.asarray(energies, dtype=float)
    t = check_temperature(temperature)
    e0 = float(e.min())
    if t < GROUND_STATE_T:
        scale = max(1.0, float(np.max(np.abs(e))))
        w = (e - e0 <= 1e-9 * scale).astype(float)
        # log Z is dominated by the ground manifold
        return w, -e0 / t + np.log(w.sum())
    w = np.exp(-(e - e0) / t)
    return w, -e0 / t + np.log(w.sum())


def _z_from_log(log_z: float) -> float:
    with np.errstate(over="ignore"):
        return float(np.exp(log_z))


def gibbs_from_spectrum(spectrum: Spectrum, temperature):
    """Thermal state and ``log Z`` from a precomputed spectrum."""
    w, log_z = boltzmann_weights(spectrum.eigenvalues, temperature)
    v = spectrum.eigenvectors
    rho = (v * (w / w.sum())) @ v.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real, log_z


def gibbs_state(h, temperature) -> np.ndarray:
    """Normalised Gibbs state of the Hermitian matrix ``h`` at temperature T > 0.

    >>> rho = gibbs_state(np.diag([0.0, 1.0]), 1e9)
    >>> np.allclose(rho, np.eye(2) / 2)
    True
    """
    check_temperature(temperature)
    rho, _ = gibbs_from_spectrum(hermitian_eigendecomposition(h), temperature)
    return rho


def partition_function(h, temperature) -> float:
    """``Tr exp(-h/T)``; ``inf`` if it overflows a double."""
    evals = np.linalg.eigvalsh(np.asarray(h, dtype=complex))
    _, log_z = boltzmann_weights(evals, temperature)
    return _z_from_log(log_z)


def commutator_norm(h, rho) -> float:
    """``max |H rho - rho H|``, zero for any function of ``H``."""
    return max_abs(h @ rho - rho @ h)


# --- DM along z ---------------------------------------------------------------

class DzElements(NamedTuple):
    """Normalised entries of the D_z X-state: r, s on the parallel block, u, v on the antiparallel one."""

    r: float
    u: float
    v: complex
    s: float


def dz_matrix_elements(c: TwoSiteCouplings, temperature) -> DzElements:
    """Entries of ``rho(T)`` for the two-site model with DM along z.

    Up to normalisation ``r = exp(-Jz/T) cosh((Jx-Jy)/T)``,
    ``u = exp(Jz/T) cosh(omega/T)``,
    ``v = -(exp(Jz/T)/omega) sinh(omega/T) (2i Dz + Jx + Jy)`` and
    ``s = -exp(-Jz/T) sinh((Jx-Jy)/T)``. ``v`` uses the limit
    ``sinh(omega/T)/omega -> 1/T`` when ``omega < 1e-12``.
    """
    t = check_temperature(temperature)
    sp = two_site_spectrum_dz(c)
    jx, jy, jz = c.j
    w, _ = boltzmann_weights(sp.energies, t)
    b1, b2, b3, b4 = w
    z = w.sum()
    a = complex(jx + jy, 2 * c.d_mag)
    if b4 == b3:
        # covers the ground-manifold indicator with E3 = E4
        sinh_over_omega = 0.0 if t < GROUND_STATE_T else np.exp((jz + sp.energies.min()) / t) / t
    elif sp.omega >= OMEGA_LIMIT_TOL or t < GROUND_STATE_T:
        sinh_over_omega = (b4 - b3) / (2 * sp.omega)
    else:
        sinh_over_omega = np.exp((jz + sp.energies.min()) / t) / t
    return DzElements(
        r=float(0.5 * (b1 + b2) / z),
        u=float(0.5 * (b3 + b4) / z),
        v=complex(-sinh_over_omega * a / z),
        s=float(0.5 * (b1 - b2) / z),
    )


def thermal_state_dz_analytic(c: TwoSiteCouplings, temperature) -> np.ndarray:
    """Closed-form Gibbs state of the two-site model with DM along z."""
    r, u, v, s = dz_matrix_elements(c, temperature)
    return np.array([
        [r, 0, 0, s],
        [0, u, v, 0],
        [0, np.conj(v), u, 0],
        [s, 0, 0, r],
    ], dtype=complex)


def partition_function_dz(c: TwoSiteCouplings, temperature) -> float:
    """``2 exp(-Jz/T) cosh((Jx-Jy)/T) + 2 exp(Jz/T) cosh(omega/T)``."""
    if c.d_axis is not Axis.Z:
        raise ArgumentError(f"DM axis is {c.d_axis.value}, this form needs z")
    _, log_z = boltzmann_weights(two_site_spectrum_dz(c).energies, temperature)
    return _z_from_log(log_z)


# --- DM along y ---------------------------------------------------------------

class DyElements(NamedTuple):
    m1: float
    m2: float
    n1: float
    n2: float
    q: float


def dy_matrix_elements(c: TwoSiteCouplings, temperature) -> DyElements:
    """Normalised entries ``m1, m2, n1, n2, q`` of the D_y thermal state."""
    t = check_temperature(temperature)
    sp = two_site_spectrum_dy(c)
    w, _ = boltzmann_weights(sp.energies, t)
    b1, b2, b3, b4 = w / w.sum()
    s1, c1 = np.sin(sp.phi1), np.cos(sp.phi1)
    s2, c2 = np.sin(sp.phi2), np.cos(sp.phi2)
    return DyElements(
        m1=float(0.5 * (b2 + b3 * s1**2 + b4 * s2**2)),
        m2=float(0.5 * (-b2 + b3 * s1**2 + b4 * s2**2)),
        n1=float(0.5 * (b1 + b3 * c1**2 + b4 * c2**2)),
        n2=float(0.5 * (b1 - b3 * c1**2 - b4 * c2**2)),
        q=float(0.5 * (b3 * s1 * c1 + b4 * s2 * c2)),
    )


def thermal_state_dy_analytic(c: TwoSiteCouplings, temperature) -> np.ndarray:
    """Closed-form Gibbs state of the two-site model with DM along y."""
    m1, m2, n1, n2, q = dy_matrix_elements(c, temperature)
    return np.array([
        [m1, -q, q, m2],
        [-q, n1, n2, -q],
        [q, n2, n1, q],
        [m2, -q, q, m1],
    ], dtype=complex)


def partition_function_dy(c: TwoSiteCouplings, temperature) -> float:
    """``2 exp(-Jy/T) cosh((Jx-Jz)/T) + 2 exp(Jy/T) cosh(omega/T)``."""
    if c.d_axis is not Axis.Y:
        raise ArgumentError(f"DM axis is {c.d_axis.value}, this form needs y")
    _, log_z = boltzmann_weights(two_site_spectrum_dy(c).energies, temperature)
    return _z_from_log(log_z)
