import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qjsd.errors import DimensionMismatch, InvalidDensityMatrix, NonHermitianInput
from qjsd.families import (
    PSI_MINUS,
    maximally_mixed,
    projector,
    random_density,
    random_density_array,
    random_unitary_array,
    werner_state,
)
from qjsd.linalg import (
    DensityMatrix,
    hermitian_eigendecompose,
    partial_trace,
    partial_transpose,
    ptrace,
    purity,
    sqrtm_psd,
    tensor,
    von_neumann_entropy,
)


def test_eigendecompose_identity():
    eig = hermitian_eigendecompose(np.eye(2))
    np.testing.assert_allclose(eig.eigenvalues, [1, 1])
    np.testing.assert_allclose(eig.eigenvectors.conj().T @ eig.eigenvectors, np.eye(2), atol=1e-12)


def test_eigendecompose_diagonal_sorted_descending():
    eig = hermitian_eigendecompose(np.diag([0.3, 0.7]))
    np.testing.assert_allclose(eig.eigenvalues, [0.7, 0.3])


def test_eigendecompose_pauli_x():
    eig = hermitian_eigendecompose(np.array([[0, 1], [1, 0]]))
    np.testing.assert_allclose(eig.eigenvalues, [1, -1], atol=1e-15)


def test_eigendecompose_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        hermitian_eigendecompose(np.array([[0, 1], [0, 0]]))


def test_eigendecompose_reconstruction(rng):
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    a = a + a.conj().T
    lam, v = hermitian_eigendecompose(a)
    assert np.all(np.diff(lam) <= 0)
    assert np.max(np.abs(v @ np.diag(lam) @ v.conj().T - a)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(6))) <= 1e-10


class TestDensityMatrix:
    def test_rejects_bad_trace(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.eye(2))

    def test_rejects_non_hermitian(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.diag([1.1, -0.1]))

    def test_clamps_tiny_negative_eigenvalue(self):
        rho = DensityMatrix(np.diag([1.0 + 5e-11, -5e-11]))
        assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-9)

    def test_is_read_only(self):
        rho = maximally_mixed(2)
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1.0

    def test_not_square(self):
        with pytest.raises(InvalidDensityMatrix):
            DensityMatrix(np.ones((2, 3)) / 2)


def test_entropy_pure_is_zero(rng):
    psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    rho = DensityMatrix(projector(psi / np.linalg.norm(psi)))
    assert von_neumann_entropy(rho) == pytest.approx(0.0, abs=1e-12)


def test_entropy_maximally_mixed():
    assert von_neumann_entropy(maximally_mixed(4)) == pytest.approx(2.0, abs=1e-14)
    assert von_neumann_entropy(maximally_mixed(8)) == pytest.approx(3.0, abs=1e-14)


def test_entropy_dyadic_spectrum():
    # -(0.5 log 0.5 + 0.25 log 0.25 + 2 * 0.125 log 0.125) = 0.5 + 0.5 + 0.75
    rho = DensityMatrix(np.diag([0.5, 0.25, 0.125, 0.125]))
    assert von_neumann_entropy(rho) == pytest.approx(1.75, abs=1e-14)


def test_purity_examples():
    assert purity(DensityMatrix(projector(PSI_MINUS))) == pytest.approx(1.0, abs=1e-14)
    assert purity(maximally_mixed(4)) == pytest.approx(0.25, abs=1e-14)
    # eigenvalues 0.625, 0.125 x3
    assert purity(werner_state(0.5)) == pytest.approx(0.4375, abs=1e-14)


def test_tensor_examples():
    np.testing.assert_array_equal(tensor(np.eye(2), np.eye(2)), np.eye(4))
    np.testing.assert_array_equal(tensor(np.diag([1, 0]), np.diag([0, 1])), np.diag([0, 1, 0, 0]))


def test_tensor_trace_multiplicative(rng):
    rho = random_density(3, rng=rng)
    assert np.trace(tensor(np.diag([1, 0]), rho)) == pytest.approx(1.0, abs=1e-14)


def test_partial_trace_product(rng):
    a, b = random_density(2, rng=rng), random_density(3, rng=rng)
    prod = DensityMatrix(tensor(a, b))
    np.testing.assert_allclose(partial_trace(prod, (2, 3), "A").mat, a.mat, atol=1e-12)
    np.testing.assert_allclose(partial_trace(prod, (2, 3), "B").mat, b.mat, atol=1e-12)


def test_partial_trace_singlet_is_maximally_mixed():
    s = DensityMatrix(projector(PSI_MINUS))
    np.testing.assert_allclose(partial_trace(s, (2, 2), "A").mat, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(partial_trace(s, (2, 2), "B").mat, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(partial_trace(maximally_mixed(4), (2, 2), "B").mat, np.eye(2) / 2)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_trace(maximally_mixed(4), (2, 3))


def _partial_transpose_loops(a, d_a, d_b):
    out = np.zeros_like(a)
    for i in range(d_a):
        for j in range(d_b):
            for k in range(d_a):
                for l in range(d_b):
                    out[i * d_b + l, k * d_b + j] = a[i * d_b + j, k * d_b + l]
    return out


def test_partial_transpose_matches_loops(rng):
    rho = random_density(6, rng=rng)
    np.testing.assert_allclose(partial_transpose(rho, (2, 3), "B"), _partial_transpose_loops(rho.mat, 2, 3))


def test_partial_transpose_singlet_min_eigenvalue():
    pt = _partial_transpose_loops(projector(PSI_MINUS), 2, 2)
    np.testing.assert_allclose(partial_transpose(projector(PSI_MINUS)), pt)
    assert np.linalg.eigvalsh(pt)[0] == pytest.approx(-0.5, abs=1e-14)


def test_partial_transpose_maximally_mixed_and_product(rng):
    np.testing.assert_allclose(partial_transpose(maximally_mixed(4)), np.eye(4) / 4)
    prod = tensor(random_density(2, rng=rng), random_density(2, rng=rng))
    assert np.linalg.eigvalsh(partial_transpose(prod))[0] >= -1e-12


def test_partial_transpose_on_a_is_transpose_of_b(rng):
    rho = random_density(4, rng=rng)
    np.testing.assert_allclose(partial_transpose(rho, subsystem="A"), partial_transpose(rho, subsystem="B").T)


def test_sqrtm_psd_squares_back(rng):
    rho = random_density(5, rng=rng).mat
    s = sqrtm_psd(rho)
    np.testing.assert_allclose(s @ s, rho, atol=1e-13)


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_entropy_bounds(n, rng):
    from qjsd.linalg import operator_entropy

    h = operator_entropy(random_density_array(n, 10_000, rng))
    assert np.all(h >= -1e-12)
    assert np.all(h <= math.log2(n) + 1e-12)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_entropy_unitary_invariance(n, rng):
    from qjsd.linalg import operator_entropy

    rhos = random_density_array(n, 500, rng)
    u = random_unitary_array(n, 500, rng)
    rotated = u @ rhos @ np.conj(np.swapaxes(u, -1, -2))
    assert np.max(np.abs(operator_entropy(rotated) - operator_entropy(rhos))) <= 1e-10


def test_partial_trace_preserves_trace_and_positivity(rng):
    rhos = random_density_array(4, 10_000, rng)
    for keep in ("A", "B"):
        red = ptrace(rhos, (2, 2), keep)
        assert np.max(np.abs(np.trace(red, axis1=-2, axis2=-1) - 1)) <= 1e-12
        assert np.min(np.linalg.eigvalsh(red)) >= -1e-12


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d_a=st.integers(1, 3), d_b=st.integers(1, 3))
def test_tensor_partial_trace_round_trip(seed, d_a, d_b):
    g = np.random.default_rng(seed)
    rho = random_density(d_a, rng=g) if d_a > 1 else maximally_mixed(1)
    sigma = random_density(d_b, rng=g) if d_b > 1 else maximally_mixed(1)
    back = ptrace(tensor(rho, sigma), (d_a, d_b), "A")
    assert np.max(np.abs(back - rho.mat)) <= 1e-12
