"""Heisenberg XYZ chains with a Dzyaloshinsky-Moriya (DM) term.

The bond Hamiltonian between neighbouring sites ``n`` and ``m`` is::

    Jx X_n X_m + Jy Y_n Y_m + Jz Z_n Z_m + D . (sigma_n x sigma_m)

with the cross product expanded as::

    Dx (Y_n Z_m - Z_n Y_m) + Dy (Z_n X_m - X_n Z_m) + Dz (X_n Y_m - Y_n X_m)

Besides the general builder this module holds the closed-form two-site
spectra for a DM vector along z or y, and the Jordan-Wigner dispersion of
the ``Jz = 0``, ``Jx = Jy`` chain.
"""

import enum
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .densemath import MAX_SITES, Spectrum
from .errors import ArgumentError, SizeError


class Axis(str, enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"

    @classmethod
    def parse(cls, value) -> "Axis":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ArgumentError(f"unknown axis {value!r}; expected one of x, y, z") from None


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    OPEN = "open"

    @classmethod
    def parse(cls, value) -> "Boundary":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ArgumentError(f"unknown boundary {value!r}; expected periodic or open") from None


@dataclass(frozen=True)
class ModelSpec:
    """Couplings, DM vector, size and boundary of a uniform chain.

    A periodic chain of two sites has the single bond counted twice; this is
    allowed but warned about.
    """

    n_sites: int
    j: tuple = (0.0, 0.0, 0.0)
    d: tuple = (0.0, 0.0, 0.0)
    boundary: Boundary = Boundary.PERIODIC

    def __post_init__(self):
        object.__setattr__(self, "j", tuple(float(x) for x in self.j))
        object.__setattr__(self, "d", tuple(float(x) for x in self.d))
        object.__setattr__(self, "boundary", Boundary.parse(self.boundary))
        if len(self.j) != 3 or len(self.d) != 3:
            raise ArgumentError("j and d must each have three components")
        if not all(np.isfinite(self.j + self.d)):
            raise ArgumentError("couplings must be finite")
        if int(self.n_sites) != self.n_sites or self.n_sites < 2:
            raise ArgumentError(f"n_sites must be an integer >= 2, got {self.n_sites}")
        if self.boundary is Boundary.PERIODIC and self.n_sites == 2:
            warnings.warn(
                "periodic two-site chain: the single bond is counted twice",
                stacklevel=3,
            )

    @classmethod
    def from_params(cls, n_sites, jx=0.0, jy=0.0, jz=0.0, dx=0.0, dy=0.0, dz=0.0,
                    boundary=Boundary.PERIODIC) -> "ModelSpec":
        return cls(n_sites, (jx, jy, jz), (dx, dy, dz), boundary)

    @property
    def bonds(self) -> list:
        n = self.n_sites
        last = n if self.boundary is Boundary.PERIODIC else n - 1
        return [(i, (i + 1) % n) for i in range(last)]


@dataclass(frozen=True)
class TwoSiteCouplings:
    """A single bond with the DM vector along one coordinate axis."""

    j: tuple
    d_axis: Axis
    d_mag: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "j", tuple(float(x) for x in self.j))
        object.__setattr__(self, "d_axis", Axis.parse(self.d_axis))
        object.__setattr__(self, "d_mag", float(self.d_mag))
        if len(self.j) != 3 or not all(np.isfinite(self.j + (self.d_mag,))):
            raise ArgumentError("two-site couplings need three finite J values and a finite DM magnitude")

    @property
    def d(self) -> tuple:
        vec = [0.0, 0.0, 0.0]
        vec["xyz".index(self.d_axis.value)] = self.d_mag
        return tuple(vec)

    def to_model(self) -> ModelSpec:
        return ModelSpec(2, self.j, self.d, Boundary.OPEN)


def _pauli_string_columns(ops: dict, n_sites: int):
    """Action of a Pauli string on every basis state.

    Returns ``(rows, phases)`` with ``P |b> = phases[b] |rows[b]>``.
    ``ops`` maps site index to one of ``"x"``, ``"y"``, ``"z"``.
    """
    b = np.arange(2**n_sites)
    rows = b.copy()
    phases = np.ones(b.size, dtype=complex)
    for site, label in ops.items():
        shift = n_sites - 1 - site
        bit = (b >> shift) & 1
        if label in ("x", "y"):
            rows ^= 1 << shift
        if label == "y":
            phases *= np.where(bit == 0, 1j, -1j)
        elif label == "z":
            phases *= np.where(bit == 0, 1.0, -1.0)
    return rows, phases


def bond_terms(j, d) -> list:
    """Coefficient and two-letter Pauli label of every bond term."""
    jx, jy, jz = j
    dx, dy, dz = d
    return [
        (jx, "xx"), (jy, "yy"), (jz, "zz"),
        (dx, "yz"), (-dx, "zy"),
        (dy, "zx"), (-dy, "xz"),
        (dz, "xy"), (-dz, "yx"),
    ]


def build_chain_hamiltonian(spec: ModelSpec) -> np.ndarray:
    """Dense ``2**N x 2**N`` Hamiltonian of a uniform chain.

    Site 0 is the most significant qubit and ``|0>`` is spin up.

    >>> h = build_chain_hamiltonian(ModelSpec(2, (0, 0, 1.5), boundary="open"))
    >>> np.diag(h).real.tolist()
    [1.5, -1.5, -1.5, 1.5]
    """
    n = spec.n_sites
    if n > MAX_SITES:
        raise SizeError(f"n_sites={n} exceeds the dense limit of {MAX_SITES}")
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for a, b in spec.bonds:
        for coeff, (la, lb) in bond_terms(spec.j, spec.d):
            if coeff == 0.0:
                continue
            if a == b:
                raise ArgumentError("bond connects a site to itself")
            rows, phases = _pauli_string_columns({a: la, b: lb}, n)
            h[rows, cols] += coeff * phases
    return h


# --- two-site closed forms ---------------------------------------------------

_SQ2 = np.sqrt(0.5)


class DzSpectrum(NamedTuple):
    """Closed-form two-site spectrum for a DM vector along z.

    ``energies`` and the columns of ``vectors`` follow the labelling
    ``E1, E2 = Jz +/- (Jx - Jy)`` and ``E3, E4 = -Jz +/- omega``.
    """

    energies: np.ndarray
    vectors: np.ndarray
    theta: float
    omega: float

    def as_spectrum(self) -> Spectrum:
        order = np.argsort(self.energies, kind="stable")
        return Spectrum(self.energies[order], self.vectors[:, order])


class DySpectrum(NamedTuple):
    """Closed-form two-site spectrum for a DM vector along y.

    ``E1, E2 = Jy +/- (Jx - Jz)`` and ``E3, E4 = -Jy +/- omega`` with
    ``omega = sqrt(4 Dy^2 + (Jx + Jz)^2)``.
    """

    energies: np.ndarray
    vectors: np.ndarray
    phi1: float
    phi2: float
    omega: float

    def as_spectrum(self) -> Spectrum:
        order = np.argsort(self.energies, kind="stable")
        return Spectrum(self.energies[order], self.vectors[:, order])


def _require_axis(c: TwoSiteCouplings, axis: Axis):
    if not isinstance(c, TwoSiteCouplings):
        raise ArgumentError("expected TwoSiteCouplings")
    if c.d_axis is not axis:
        raise ArgumentError(f"DM axis is {c.d_axis.value}, this form needs {axis.value}")


def two_site_spectrum_dz(c: TwoSiteCouplings) -> DzSpectrum:
    """Eigenpairs of the two-site XYZ model with DM along z.

    The antiparallel pair is ``(|du> +/- exp(-i theta) |ud>)/sqrt(2)`` with
    ``exp(-i theta) = (Jx + Jy + 2i Dz)/omega``, so ``cos theta`` is
    ``(Jx + Jy)/omega`` and ``sin theta`` carries the sign of ``-Dz``.
    """
    _require_axis(c, Axis.Z)
    jx, jy, jz = c.j
    dz = c.d_mag
    omega = float(np.hypot(2 * dz, jx + jy))
    theta = float(-np.arctan2(2 * dz, jx + jy))
    energies = np.array([jz + jx - jy, jz - jx + jy, -jz + omega, -jz - omega])
    ph = np.exp(-1j * theta)
    # basis order |uu>, |ud>, |du>, |dd>
    vectors = _SQ2 * np.array([
        [1, -1, 0, 0],
        [0, 0, ph, -ph],
        [0, 0, 1, 1],
        [1, 1, 0, 0],
    ], dtype=complex)
    return DzSpectrum(energies, vectors, theta, omega)


def dy_angles(jx: float, jz: float, dy: float):
    """Mixing angles ``(phi1, phi2)`` of the D_y eigenstates.

    They satisfy ``tan(phi_k) = 2 Dy / (Jx + Jz -/+ omega)`` and stay well
    defined at ``Dy = 0`` where that quotient turns into 0/0.
    """
    chi = 0.5 * np.arctan2(4 * dy, 2 * (jx + jz))
    return float(chi + np.pi / 2), float(chi)


def two_site_spectrum_dy(c: TwoSiteCouplings) -> DySpectrum:
    """Eigenpairs of the two-site XYZ model with DM along y.

    ``Psi1 = (|du> + |ud>)/sqrt(2)``, ``Psi2 = (|dd> - |uu>)/sqrt(2)`` and, for
    ``k = 1, 2``, ``Psi_{k+2} = sin(phi_k) (|dd> + |uu>)/sqrt(2)
    + cos(phi_k) (|du> - |ud>)/sqrt(2)``.
    """
    _require_axis(c, Axis.Y)
    jx, jy, jz = c.j
    dy = c.d_mag
    omega = float(np.hypot(2 * dy, jx + jz))
    phi1, phi2 = dy_angles(jx, jz, dy)
    energies = np.array([jy + jx - jz, jy - jx + jz, -jy + omega, -jy - omega])
    s1, c1, s2, c2 = np.sin(phi1), np.cos(phi1), np.sin(phi2), np.cos(phi2)
    vectors = _SQ2 * np.array([
        [0, -1, s1, s2],
        [1, 0, -c1, -c2],
        [1, 0, c1, c2],
        [0, 1, s1, s2],
    ], dtype=complex)
    return DySpectrum(energies, vectors, phi1, phi2, omega)


# --- Jordan-Wigner dispersion ------------------------------------------------

# Fixed once against exact diagonalisation: the single bond spectrum is
# +/- 2 sqrt(J^2 + D^2) and the six-site periodic ground energy is the sum
# of the negative modes. The overall factor comes from
# X X + Y Y = 2 (s+ s- + s- s+) and the doubled hopping on a ring.
DISPERSION_SCALE = 4.0
DISPERSION_SIGN = 1.0
ZERO_MODE_TOL = 1e-12


@dataclass(frozen=True)
class DispersionParams:
    """``Jx = Jy = j``, ``Jz = 0`` chain with DM ``d`` along z on ``n`` sites."""

    j: float
    d: float
    n: int = field(default=2)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2 or self.n % 2:
            raise ArgumentError(f"n must be an even integer >= 2, got {self.n}")

    @property
    def theta(self) -> float:
        return float(np.arctan2(self.d, self.j))


def dispersion(p: DispersionParams, q):
    """Single-fermion energy ``4 (J cos q + D sin q)`` of momentum ``q``.

    Equivalent to ``4 sqrt(J^2 + D^2) cos(q - theta)`` with
    ``cos theta = J / sqrt(J^2 + D^2)``. Accepts scalars or arrays.
    """
    q = np.asarray(q, dtype=float)
    out = DISPERSION_SCALE * (p.j * np.cos(q) + DISPERSION_SIGN * p.d * np.sin(q))
    return float(out) if out.ndim == 0 else out


class ModeSet(NamedTuple):
    filled: np.ndarray
    zero_mode: bool
    energy: float


def momentum_grid(n: int) -> np.ndarray:
    return 2 * np.pi * np.arange(n) / n


def jw_mode_set(p: DispersionParams) -> ModeSet:
    """Momenta with negative energy on the grid ``2 pi k / n``.

    ``zero_mode`` is set when some mode sits within 1e-12 of zero, which
    signals a degenerate ground state. The grid (periodic fermions) is the
    right one when the number of filled modes ``n/2`` is odd, i.e. for
    ``n = 2 mod 4``; for ``n = 0 mod 4`` the half-filled sector actually
    carries antiperiodic fermions and ``energy`` is only an estimate.
    """
    q = momentum_grid(p.n)
    lam = dispersion(p, q)
    lam = np.atleast_1d(lam)
    filled = q[lam < -ZERO_MODE_TOL]
    zero = bool(np.any(np.abs(lam) <= ZERO_MODE_TOL))
    return ModeSet(filled, zero, float(np.sum(lam[lam < -ZERO_MODE_TOL])))
