import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings
from hypothesis import strategies as st

from dmcoherence.densemath import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    check_density_matrix,
    dephase,
    entropy_from_probabilities,
    hermitian_eigendecomposition,
    kron,
    n_sites_of,
    partial_trace,
    pure_state,
    site_operator,
    unitary_conjugate,
    von_neumann_entropy,
)
from dmcoherence.errors import ArgumentError, ContractError, DimensionError, SizeError

from conftest import random_density, random_hermitian, random_unitary


def test_pauli_algebra():
    assert np.allclose(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)
    for p in (SIGMA_X, SIGMA_Y, SIGMA_Z):
        assert np.allclose(p @ p, np.eye(2))


def test_eigendecomposition_reconstructs(rng):
    for dim in (2, 4, 8, 16):
        h = random_hermitian(rng, dim)
        spec = hermitian_eigendecomposition(h)
        v = spec.eigenvectors
        assert np.allclose(v @ np.diag(spec.eigenvalues) @ v.conj().T, h, atol=1e-12)
        assert np.allclose(spec.eigenvalues, sla.eigvalsh(h), atol=1e-12)
        assert np.all(np.diff(spec.eigenvalues) >= 0)


def test_eigenvector_phase_convention(rng):
    v = hermitian_eigendecomposition(random_hermitian(rng, 8)).eigenvectors
    for col in v.T:
        k = np.argmax(np.abs(col))
        assert abs(col[k].imag) < 1e-14 and col[k].real > 0


def test_eigendecomposition_is_deterministic(rng):
    h = random_hermitian(rng, 16)
    a = hermitian_eigendecomposition(h)
    b = hermitian_eigendecomposition(h.copy())
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert np.array_equal(a.eigenvectors, b.eigenvectors)


def test_eigendecomposition_rejects_non_hermitian():
    with pytest.raises(ContractError):
        hermitian_eigendecomposition(np.array([[0, 1], [0, 0]]))
    with pytest.raises(DimensionError):
        hermitian_eigendecomposition(np.ones((2, 3)))


def test_density_matrix_checks():
    good = np.eye(4) / 4
    assert check_density_matrix(good).dtype == complex
    with pytest.raises(ContractError):
        check_density_matrix(np.eye(4) / 3)
    with pytest.raises(ContractError):
        check_density_matrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(ContractError):
        check_density_matrix(np.diag([1.5, -0.5]))
    check_density_matrix(np.diag([1.5, -0.5]), check_psd=False)
    with pytest.raises(DimensionError):
        check_density_matrix(np.eye(3) / 3)


def test_n_sites_of():
    assert n_sites_of(1) == 0 and n_sites_of(8) == 3
    with pytest.raises(DimensionError):
        n_sites_of(6)


def test_entropy_basics():
    assert entropy_from_probabilities([1, 0]) == 0.0
    assert entropy_from_probabilities([0.5, 0.5]) == pytest.approx(1.0, abs=1e-15)
    assert entropy_from_probabilities([0.25] * 4) == pytest.approx(2.0, abs=1e-15)
    assert entropy_from_probabilities([1.0, -1e-12]) == 0.0
    with pytest.raises(ContractError):
        entropy_from_probabilities([1.1, -0.1])


def test_von_neumann_matches_scipy(rng):
    for dim in (2, 4, 8):
        rho = random_density(rng, dim)
        ref = -np.trace(rho @ sla.logm(rho)).real / np.log(2)
        assert von_neumann_entropy(rho) == pytest.approx(ref, abs=1e-10)
    assert von_neumann_entropy(np.eye(8) / 8) == pytest.approx(3.0, abs=1e-14)
    assert von_neumann_entropy(pure_state([1, 1j, 0, 2])) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_entropy_is_unitarily_invariant(seed, n):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 2**n)
    u = random_unitary(rng, 2**n)
    assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(von_neumann_entropy(rho), abs=1e-10)


def test_dephase():
    rho = np.array([[0.5, 0.5], [0.5, 0.5]])
    assert np.allclose(dephase(rho), np.eye(2) / 2)


def test_partial_trace_of_product(rng):
    a, b, c = (random_density(rng, 2) for _ in range(3))
    rho = kron(a, b, c)
    assert np.allclose(partial_trace(rho, [0]), a)
    assert np.allclose(partial_trace(rho, [1]), b)
    assert np.allclose(partial_trace(rho, [2]), c)
    assert np.allclose(partial_trace(rho, [0, 2]), kron(a, c))
    assert np.allclose(partial_trace(rho, [2, 0]), kron(c, a))


def test_partial_trace_against_explicit_sum(rng):
    rho = random_density(rng, 8)
    t = rho.reshape(2, 4, 2, 4)
    assert np.allclose(partial_trace(rho, [0]), np.einsum("aibi->ab", t))
    t = rho.reshape(4, 2, 4, 2)
    assert np.allclose(partial_trace(rho, [0, 1]), np.einsum("aibi->ab", t))


def test_partial_trace_argument_errors(rng):
    rho = random_density(rng, 4)
    for keep in ([], [2], [0, 0], [-1]):
        with pytest.raises(ArgumentError):
            partial_trace(rho, keep)


def test_site_ordering_convention():
    # site 0 is the most significant qubit, |up> = |0>
    z0 = site_operator(SIGMA_Z, 0, 2)
    assert np.allclose(np.diag(z0), [1, 1, -1, -1])
    z1 = site_operator(SIGMA_Z, 1, 2)
    assert np.allclose(np.diag(z1), [1, -1, 1, -1])
    with pytest.raises(SizeError):
        site_operator(SIGMA_Z, 0, 13)
    with pytest.raises(ArgumentError):
        site_operator(SIGMA_Z, 2, 2)


def test_unitary_conjugate(rng):
    rho = random_density(rng, 4)
    u = random_unitary(rng, 4)
    out = unitary_conjugate(rho, u)
    assert np.allclose(out, u.conj().T @ rho @ u)
    assert np.array_equal(out, out.conj().T)
    with pytest.raises(ContractError):
        unitary_conjugate(rho, 2 * np.eye(4))
