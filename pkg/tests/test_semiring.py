"""Partial-semiring laws per instance.

The additive laws are only claimed on sums that are defined, so each law
test draws elements, asks ``try_add`` whether the sum exists, and checks
the identity only on the defined side (plus definedness symmetry itself).
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qeffectus.semiring import (
    BOOLEAN,
    UNIT_INTERVAL,
    BooleanSemiring,
    ProjectionSemiring,
    UnitIntervalSemiring,
    semiring_by_name,
)

PROJ2 = ProjectionSemiring(2)


def _proj_elements(seed, count, dim=2):
    """A few projections drawn from two random orthobases."""
    rng = np.random.default_rng(seed)
    out = [np.zeros((dim, dim), dtype=complex), np.eye(dim, dtype=complex)]
    for _ in range(2):
        z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        q, _ = np.linalg.qr(z)
        for cut in range(dim + 1):
            out.append(q[:, :cut] @ q[:, :cut].conj().T)
    idx = rng.integers(0, len(out), size=count)
    return [out[i] for i in idx]


def test_boolean_elements():
    assert BOOLEAN.is_element(0) and BOOLEAN.is_element(1)
    assert not BOOLEAN.is_element(True)
    assert not BOOLEAN.is_element(0.0)
    assert not BOOLEAN.is_element(2)


def test_boolean_addition_partial():
    assert BOOLEAN.try_add(0, 1) == 1
    assert BOOLEAN.try_add(0, 0) == 0
    assert BOOLEAN.try_add(1, 1) is None


def test_boolean_mul_total():
    assert BOOLEAN.mul(1, 1) == 1
    assert BOOLEAN.mul(1, 0) == 0
    assert BOOLEAN.tensor(1, 1) == 1


def test_unit_interval_addition_partial():
    assert UNIT_INTERVAL.try_add(0.4, 0.5) == pytest.approx(0.9)
    assert UNIT_INTERVAL.try_add(0.6, 0.6) is None
    assert UNIT_INTERVAL.try_add(0.5, 0.5) == pytest.approx(1.0)


def test_unit_interval_elements():
    assert UNIT_INTERVAL.is_element(0.0)
    assert UNIT_INTERVAL.is_element(1.0)
    assert not UNIT_INTERVAL.is_element(1.5)
    assert not UNIT_INTERVAL.is_element(-0.5)


def test_projection_addition_partial():
    p = np.diag([1.0, 0.0]).astype(complex)
    q = np.diag([0.0, 1.0]).astype(complex)
    s = PROJ2.try_add(p, q)
    assert s is not None and np.allclose(s, np.eye(2))
    assert PROJ2.try_add(p, p) is None


def test_projection_mul_is_matrix_product():
    p = np.diag([1.0, 0.0]).astype(complex)
    h = np.full((2, 2), 0.5, dtype=complex)
    assert np.allclose(PROJ2.mul(p, h), p @ h)


def test_projection_tensor_grade():
    combined = PROJ2.combined(ProjectionSemiring(3))
    assert combined.grade == 6
    t = PROJ2.tensor(np.eye(2), np.eye(3))
    assert t.shape == (6, 6)


def test_combined_rejects_mixed_instances():
    with pytest.raises(ValueError):
        BOOLEAN.combined(UNIT_INTERVAL)


def test_semiring_by_name():
    assert isinstance(semiring_by_name("bool"), BooleanSemiring)
    assert isinstance(semiring_by_name("prob"), UnitIntervalSemiring)
    proj = semiring_by_name("proj", grade=3)
    assert proj.grade == 3
    with pytest.raises(ValueError):
        semiring_by_name("nope")


# law checks: commutativity, associativity, distributivity, units,
# restricted to defined sums


@settings(max_examples=200)
@given(st.sampled_from([0, 1]), st.sampled_from([0, 1]))
def test_bool_add_commutative(a, b):
    assert BOOLEAN.try_add(a, b) == BOOLEAN.try_add(b, a)


@settings(max_examples=200)
@given(
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
)
def test_prob_add_commutative(a, b):
    x = UNIT_INTERVAL.try_add(a, b)
    y = UNIT_INTERVAL.try_add(b, a)
    assert (x is None) == (y is None)
    if x is not None:
        assert x == pytest.approx(y)


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=100_000), st.integers(0, 3), st.integers(0, 3))
def test_proj_add_commutative(seed, i, j):
    els = _proj_elements(seed, 4)
    a, b = els[i], els[j]
    x = PROJ2.try_add(a, b)
    y = PROJ2.try_add(b, a)
    assert (x is None) == (y is None)
    if x is not None:
        assert np.allclose(x, y)


@settings(max_examples=200)
@given(
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
)
def test_prob_add_associative_when_defined(a, b, c):
    ab = UNIT_INTERVAL.try_add(a, b)
    bc = UNIT_INTERVAL.try_add(b, c)
    if ab is None or bc is None:
        return
    left = UNIT_INTERVAL.try_add(ab, c)
    right = UNIT_INTERVAL.try_add(a, bc)
    assert (left is None) == (right is None)
    if left is not None:
        assert left == pytest.approx(right, abs=1e-12)


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=100_000))
def test_proj_add_associative_when_defined(seed):
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, _ = np.linalg.qr(z)
    sem = ProjectionSemiring(3)
    parts = [np.outer(q[:, i], q[:, i].conj()) for i in range(3)]
    a, b, c = parts
    ab = sem.try_add(a, b)
    bc = sem.try_add(b, c)
    assert ab is not None and bc is not None
    left = sem.try_add(ab, c)
    right = sem.try_add(a, bc)
    assert left is not None and right is not None
    assert np.allclose(left, right)


@settings(max_examples=200)
@given(
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
)
def test_prob_mul_distributes_over_defined_sums(a, b, c):
    bc = UNIT_INTERVAL.try_add(b, c)
    if bc is None:
        return
    lhs = UNIT_INTERVAL.mul(a, bc)
    rhs = UNIT_INTERVAL.try_add(UNIT_INTERVAL.mul(a, b), UNIT_INTERVAL.mul(a, c))
    assert rhs is not None
    assert lhs == pytest.approx(rhs, abs=1e-12)


@settings(max_examples=200)
@given(st.floats(0, 1, allow_nan=False))
def test_prob_units(a):
    assert UNIT_INTERVAL.mul(a, 1.0) == pytest.approx(a)
    assert UNIT_INTERVAL.try_add(a, 0.0) == pytest.approx(a)
    assert UNIT_INTERVAL.mul(a, 0.0) == 0.0


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=100_000), st.integers(0, 5), st.integers(0, 5))
def test_proj_units(seed, i, j):
    els = _proj_elements(seed, 6)
    a = els[i]
    assert np.allclose(PROJ2.mul(a, PROJ2.one), a)
    assert np.allclose(PROJ2.mul(PROJ2.one, a), a)
    s = PROJ2.try_add(a, PROJ2.zero)
    assert s is not None and np.allclose(s, a)


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=100_000))
def test_proj_tensor_multiplicative(seed):
    els = _proj_elements(seed, 4)
    a, b, c, d = els
    lhs = PROJ2.combined(PROJ2).mul(PROJ2.tensor(a, b), PROJ2.tensor(c, d))
    rhs = PROJ2.tensor(PROJ2.mul(a, c), PROJ2.mul(b, d))
    assert np.allclose(lhs, rhs)


def test_projection_rejects_wrong_shape():
    assert not PROJ2.is_element(np.eye(3))
    assert not PROJ2.is_element(np.full((2, 2), 0.3))
