import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from conftest import correlations
from qgame.hilbert import (
    Correlation,
    NonHermitianOperator,
    basis_state,
    conversion_ops,
    correlation_unitary,
    expectation,
    is_hermitian,
    is_unitary,
    normalize,
    states_equal,
    swap_op,
    twist_op,
)


def ket(i, j):
    return basis_state(i, j)


def test_swap_action():
    s = swap_op()
    assert np.array_equal(s @ ket(0, 1), ket(1, 0))
    assert np.array_equal(s @ ket(0, 0), ket(0, 0))
    assert np.array_equal(s @ s, np.eye(4))


def test_twist_action():
    t = twist_op()
    assert np.array_equal(t @ ket(0, 1), ket(0, 1))
    assert np.array_equal(t @ ket(0, 0), ket(1, 1))
    assert np.array_equal(t @ ket(1, 0), ket(1, 0))
    assert np.array_equal(swap_op() @ t - t @ swap_op(), np.zeros((4, 4)))


def test_conversions():
    ca, cb, c = conversion_ops()
    assert np.array_equal(ca @ ket(0, 0), ket(1, 0))
    assert np.array_equal(cb @ ket(0, 0), ket(0, 1))
    assert np.array_equal(c @ ket(0, 1), ket(1, 0))
    assert np.array_equal(ca @ swap_op() @ ca, twist_op())
    assert np.array_equal(ca @ cb, c)


def test_cached_operators_are_read_only():
    with pytest.raises(ValueError):
        swap_op()[0, 0] = 5


def test_identity_at_origin():
    assert np.allclose(correlation_unitary(Correlation(0, 0)), np.eye(4), atol=0)


def test_maximal_entanglers():
    r = 1 / math.sqrt(2)
    psi = correlation_unitary(Correlation(0, math.pi / 2)) @ ket(0, 0)
    assert np.allclose(psi, r * (ket(0, 0) + 1j * ket(1, 1)), atol=1e-15)
    psi = correlation_unitary(Correlation(math.pi / 2, 0)) @ ket(0, 1)
    assert np.allclose(psi, r * (ket(0, 1) + 1j * ket(1, 0)), atol=1e-15)


@settings(max_examples=200, deadline=None)
@given(correlations)
def test_unitary_matches_matrix_exponential(c):
    s, t = swap_op(), twist_op()
    oracle = scipy.linalg.expm(0.5j * c.gamma1 * s) @ scipy.linalg.expm(0.5j * c.gamma2 * t)
    j = correlation_unitary(c)
    assert np.allclose(j, oracle, atol=1e-12)
    assert is_unitary(j)


@given(correlations)
def test_correlation_parts_commute(c):
    j1 = correlation_unitary(Correlation(c.gamma1, 0))
    j2 = correlation_unitary(Correlation(0, c.gamma2))
    assert np.allclose(j1 @ j2, j2 @ j1, atol=1e-14)


def test_correlation_reduction():
    c = Correlation(-math.pi / 2, 5 * math.pi)
    assert c.gamma1 == pytest.approx(3 * math.pi / 2)
    assert c.gamma2 == pytest.approx(math.pi)
    assert Correlation(1.0, 2.0).swapped() == Correlation(2.0, 1.0)
    with pytest.raises(ValueError):
        Correlation(float("nan"), 0.0)


def test_expectation_examples():
    m = np.diag([3.0, 0.0, 4.0, 1.0])
    assert expectation(ket(0, 0), m) == 3.0
    bell = (ket(0, 0) + ket(1, 1)) / math.sqrt(2)
    assert expectation(bell, m) == pytest.approx(2.0, abs=1e-15)


def test_expectation_of_swap_is_bounded(rng):
    values = []
    for _ in range(1000):
        psi = normalize(rng.normal(size=4) + 1j * rng.normal(size=4))
        values.append(expectation(psi, swap_op()))
    assert -1 - 1e-12 <= min(values) and max(values) <= 1 + 1e-12


def test_expectation_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    psi = normalize([1, 1j, 0, 0])
    assert not is_hermitian(m)
    with pytest.raises(NonHermitianOperator):
        expectation(psi, m)


def test_states_equal_up_to_phase():
    psi = normalize([1, 2j, 0, 1])
    assert states_equal(psi, np.exp(0.7j) * psi)
    assert not states_equal(psi, normalize([1, 0, 0, 0]))
    with pytest.raises(ValueError):
        normalize(np.zeros(4))
