import numpy as np
import pytest
from hypothesis import given, strategies as st

from qeffectus.linalg import (
    CheckResult,
    Pvm,
    adjoint,
    as_matrix,
    commutes,
    identity,
    is_projection,
    kron,
    mat_close,
    matmul,
    max_norm,
    validate_pvm,
    zero_matrix,
)


def test_as_matrix_scalar_becomes_1x1():
    m = as_matrix(0.5)
    assert m.shape == (1, 1)
    assert m[0, 0] == 0.5 + 0j


def test_as_matrix_rejects_non_square():
    with pytest.raises(ValueError):
        as_matrix(np.zeros((2, 3)))


def test_as_matrix_copies():
    src = np.eye(2, dtype=complex)
    m = as_matrix(src)
    src[0, 0] = 5
    assert m[0, 0] == 1


def test_identity_zero_shapes():
    assert identity(3).shape == (3, 3)
    assert max_norm(identity(2) - np.eye(2)) == 0
    assert max_norm(zero_matrix(2)) == 0


def test_matmul_checks_dims():
    with pytest.raises(ValueError):
        matmul(np.eye(2), np.eye(3))


def test_adjoint_conjugates():
    m = np.array([[1, 1j], [0, 2]], dtype=complex)
    a = adjoint(m)
    assert a[1, 0] == -1j
    assert a[0, 1] == 0


def test_kron_block_structure():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    k = kron(a, b)
    assert k.shape == (4, 4)
    assert np.allclose(np.diag(k), [0, 1, 0, 0])


def test_is_projection_accepts_and_rejects():
    assert is_projection(np.diag([1.0, 0.0]))
    assert not is_projection(np.diag([0.5, 0.0]))
    assert not is_projection(np.array([[0, 1], [0, 0]], dtype=complex))


def test_rank_one_projection_from_vector():
    v = np.array([1.0, 1j]) / np.sqrt(2)
    p = np.outer(v, v.conj())
    assert is_projection(p, 1e-12)


def test_commutes():
    a = np.diag([1.0, 0.0])
    b = np.diag([0.0, 1.0])
    c = np.array([[0, 1], [1, 0]], dtype=complex)
    assert commutes(a, b)
    assert not commutes(a, c)


def test_check_result_truthiness():
    assert CheckResult(True)
    assert not CheckResult(False, "cond", ("w",), 0.1)


def test_pvm_valid():
    p = Pvm(("a", "b"), {"a": np.diag([1.0, 0.0]), "b": np.diag([0.0, 1.0])})
    assert p.dim == 2


def test_pvm_rejects_bad_sum():
    res = validate_pvm({"a": np.diag([1.0, 0.0]), "b": np.diag([1.0, 0.0])})
    assert isinstance(res, CheckResult)
    assert not res
    assert res.condition in ("sum_not_identity", "elements_not_orthogonal")


def test_pvm_rejects_non_projection():
    res = validate_pvm({"a": np.diag([0.5, 0.5]), "b": np.diag([0.5, 0.5])})
    assert not res
    assert res.condition == "element_not_projection"


def test_pvm_structural_errors_raise():
    with pytest.raises(ValueError):
        Pvm(("a", "b"), {"a": np.eye(2)})
    with pytest.raises(ValueError):
        Pvm(("a", "b"), {"a": np.eye(2), "b": np.zeros((3, 3))})


def test_validate_pvm_accepts_scalars():
    res = validate_pvm({"x": 1.0, "y": 0.0})
    assert isinstance(res, Pvm)
    assert res.dim == 1


@given(st.integers(min_value=0, max_value=10_000))
def test_random_unitary_columns_give_pvm(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(1, 5))
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, _ = np.linalg.qr(z)
    cut = int(rng.integers(0, d + 1))
    left = q[:, :cut] @ q[:, :cut].conj().T
    right = q[:, cut:] @ q[:, cut:].conj().T
    assert is_projection(left, 1e-9)
    assert is_projection(right, 1e-9)
    assert mat_close(left + right, identity(d), 1e-9)


@given(st.integers(min_value=0, max_value=10_000))
def test_max_norm_matches_numpy(seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    assert max_norm(m) == pytest.approx(np.abs(m).max())
