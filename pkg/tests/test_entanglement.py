import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import partial_transpose_loops, spin_flip_concurrence
from qjsd.entanglement import (
    SeparableDecomposition,
    bloch_projectors,
    concurrence,
    is_ppt,
    materialize,
    random_decomposition,
)
from qjsd.errors import DimensionMismatch, QJSDError
from qjsd.families import maximally_mixed, pure_state, random_density, singlet, werner_state
from qjsd.linalg import tensor

WERNER_GRID = np.round(np.linspace(0, 1, 11), 10)


def test_concurrence_product_pure_is_zero(rng):
    for _ in range(10):
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert concurrence(pure_state(np.kron(a, b))) == pytest.approx(0.0, abs=1e-10)


def test_concurrence_singlet():
    assert concurrence(singlet()) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("x", WERNER_GRID)
def test_concurrence_werner_closed_form(x):
    closed = max(0.0, (3 * x - 1) / 2)
    # the closed form is first checked against the eigvals route
    assert spin_flip_concurrence(werner_state(x).mat) == pytest.approx(closed, abs=1e-7)
    assert abs(concurrence(werner_state(x)) - closed) <= 1e-10


def test_concurrence_werner_example():
    assert concurrence(werner_state(0.7)) == pytest.approx(0.55, abs=1e-12)


def test_concurrence_pure_state_formula(rng):
    # pure states: C = 2 |ad - bc|
    for _ in range(20):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi /= np.linalg.norm(psi)
        expected = 2 * abs(psi[0] * psi[3] - psi[1] * psi[2])
        assert concurrence(pure_state(psi)) == pytest.approx(expected, abs=1e-10)


def test_concurrence_agrees_with_eigvals_route_on_random_states(rng):
    for _ in range(50):
        rho = random_density(4, rank=int(rng.integers(1, 5)), rng=rng)
        assert concurrence(rho) == pytest.approx(spin_flip_concurrence(rho.mat), abs=1e-6)


def test_concurrence_needs_two_qubits():
    with pytest.raises(DimensionMismatch):
        concurrence(maximally_mixed(3))


@pytest.mark.parametrize("x,expected", [(0.2, True), (0.9, False)])
def test_is_ppt_werner(x, expected):
    ppt, lam = is_ppt(werner_state(x))
    assert ppt is expected
    assert lam == pytest.approx(np.linalg.eigvalsh(partial_transpose_loops(werner_state(x).mat))[0], abs=1e-14)


def test_is_ppt_maximally_mixed():
    ppt, lam = is_ppt(maximally_mixed(4))
    assert ppt and lam == pytest.approx(0.25, abs=1e-15)


def test_is_ppt_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        is_ppt(maximally_mixed(4), (2, 3))


def test_bloch_projectors():
    np.testing.assert_allclose(bloch_projectors([0, 0, 1]), np.diag([1, 0]))
    np.testing.assert_allclose(bloch_projectors([0, 0, -1]), np.diag([0, 1]))
    np.testing.assert_allclose(bloch_projectors([1, 0, 0]), np.full((2, 2), 0.5))


def test_materialize_single_term():
    rho = materialize(SeparableDecomposition([1.0], [[0, 0, 1]], [[0, 0, 1]]))
    np.testing.assert_allclose(rho.mat, np.diag([1, 0, 0, 0]))


def test_materialize_computational_mixture():
    z = [0, 0, 1]
    mz = [0, 0, -1]
    dec = SeparableDecomposition(np.full(4, 0.25), [z, z, mz, mz], [z, mz, z, mz])
    np.testing.assert_allclose(materialize(dec).mat, np.eye(4) / 4, atol=1e-15)


def test_materialize_product_structure():
    a, b = np.array([0.6, 0.0, 0.8]), np.array([0.0, 1.0, 0.0])
    dec = SeparableDecomposition([1.0], [a], [b])
    np.testing.assert_allclose(dec.matrix(), tensor(bloch_projectors(a), bloch_projectors(b)), atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), terms=st.integers(1, 16))
def test_random_decomposition_is_ppt(seed, terms):
    dec = random_decomposition(np.random.default_rng(seed), terms)
    rho = materialize(dec)
    assert is_ppt(rho).ppt
    assert concurrence(rho) <= 1e-10


@pytest.mark.parametrize(
    "weights,a",
    [
        ([0.5, 0.6], [[0, 0, 1], [0, 0, 1]]),
        ([1.2, -0.2], [[0, 0, 1], [0, 0, 1]]),
        ([0.5, 0.5], [[0, 0, 1], [0, 0, 2]]),
        ([1.0], [[0, 0, 1], [0, 0, 1]]),
    ],
)
def test_decomposition_validation(weights, a):
    with pytest.raises(QJSDError):
        SeparableDecomposition(weights, a, [[0, 0, 1]] * len(a))


def test_decomposition_is_read_only(rng):
    dec = random_decomposition(rng)
    with pytest.raises(ValueError):
        dec.weights[0] = 1.0
    assert len(dec) == 16
