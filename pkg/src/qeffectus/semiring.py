"""Partial semirings of weights: bits, the unit interval, and projections.

Addition is partial.  ``try_add`` returns the sum when it is defined and
``None`` when it is not; undefinedness is an ordinary outcome, never an
exception.  Multiplication is total.  ``tensor`` is the cross-register
product used when grades multiply: plain multiplication for the two scalar
instances, the Kronecker product for projections.

The three instances:

* ``BooleanSemiring`` - elements 0 and 1, where 1 + 1 is undefined;
* ``UnitIntervalSemiring`` - floats in [0, 1], x + y defined iff x + y <= 1;
* ``ProjectionSemiring(dim)`` - d x d projection matrices, p + q defined iff
  p q = 0 (within the instance tolerance).
"""

from __future__ import annotations

from typing import Any

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    identity,
    is_projection,
    kron,
    max_norm,
    zero_matrix,
)

__all__ = [
    "BOOLEAN",
    "BooleanSemiring",
    "ProjectionSemiring",
    "Semiring",
    "UNIT_INTERVAL",
    "UnitIntervalSemiring",
    "semiring_by_name",
]


class Semiring:
    """Common interface of the three weight instances.

    ``grade`` is 1 for the scalar instances and the matrix dimension for the
    projection instance; ``combined`` produces the instance that carries
    tensor products of weights from two registers.
    """

    name: str = "abstract"
    grade: int = 1

    def is_element(self, a: Any) -> bool:
        raise NotImplementedError

    def try_add(self, a: Any, b: Any) -> Any | None:
        """Sum of two weights, or None when the sum is undefined."""
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def tensor(self, a: Any, b: Any) -> Any:
        """Cross-register product (ordinary product for scalars)."""
        raise NotImplementedError

    @property
    def zero(self) -> Any:
        raise NotImplementedError

    @property
    def one(self) -> Any:
        raise NotImplementedError

    def residual(self, a: Any, b: Any) -> float:
        """Size of the difference between two weights."""
        raise NotImplementedError

    def close(self, a: Any, b: Any) -> bool:
        return self.residual(a, b) <= self.tol

    def is_zero(self, a: Any) -> bool:
        return self.close(a, self.zero)

    def is_one(self, a: Any) -> bool:
        return self.close(a, self.one)

    def same_kind(self, other: "Semiring") -> bool:
        return type(self) is type(other)

    def combined(self, other: "Semiring") -> "Semiring":
        """Instance holding tensor products of weights of self and other."""
        if not self.same_kind(other):
            raise ValueError(
                f"instance mismatch: {self.name} cannot combine with {other.name}"
            )
        return self

    tol: float = 0.0

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class BooleanSemiring(Semiring):
    """Bits 0/1 with 1 + 1 undefined; equality is exact."""

    name = "bool"
    tol = 0.0

    def is_element(self, a: Any) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and a in (0, 1)

    def try_add(self, a: int, b: int) -> int | None:
        self._check(a), self._check(b)
        if a and b:
            return None
        return a + b

    def mul(self, a: int, b: int) -> int:
        self._check(a), self._check(b)
        return a * b

    tensor = mul

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def residual(self, a: int, b: int) -> float:
        return float(abs(a - b))

    def _check(self, a: Any) -> None:
        if not self.is_element(a):
            raise ValueError(f"not a Boolean element: {a!r}")


class UnitIntervalSemiring(Semiring):
    """Floats in [0, 1]; x + y is defined exactly when it stays below 1.

    All boundary comparisons use the instance tolerance, so sums that land
    within ``tol`` of 1 still count as defined.
    """

    name = "prob"

    def __init__(self, tol: float = DEFAULT_TOL):
        self.tol = float(tol)

    def is_element(self, a: Any) -> bool:
        try:
            x = float(a)
        except (TypeError, ValueError):
            return False
        return -self.tol <= x <= 1.0 + self.tol

    def try_add(self, a: float, b: float) -> float | None:
        self._check(a), self._check(b)
        s = float(a) + float(b)
        if s > 1.0 + self.tol:
            return None
        return s

    def mul(self, a: float, b: float) -> float:
        self._check(a), self._check(b)
        return float(a) * float(b)

    tensor = mul

    @property
    def zero(self) -> float:
        return 0.0

    @property
    def one(self) -> float:
        return 1.0

    def residual(self, a: float, b: float) -> float:
        return abs(float(a) - float(b))

    def _check(self, a: Any) -> None:
        if not self.is_element(a):
            raise ValueError(f"not a unit-interval element: {a!r}")


class ProjectionSemiring(Semiring):
    """d x d projection matrices; p + q is defined exactly when p q = 0.

    Multiplication is the total matrix product.  ``tensor`` is the Kronecker
    product and lands in the instance of dimension d * d'.
    """

    name = "proj"

    def __init__(self, dim: int, tol: float = DEFAULT_TOL):
        if int(dim) < 1:
            raise ValueError("projection dimension must be at least 1")
        self.dim = int(dim)
        self.grade = self.dim
        self.tol = float(tol)

    @property
    def name_with_dim(self) -> str:
        return f"proj({self.dim})"

    def is_element(self, a: Any) -> bool:
        m = np.asarray(a)
        if m.shape != (self.dim, self.dim):
            return False
        return is_projection(m, self.tol)

    def try_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray | None:
        a, b = self._check(a), self._check(b)
        if max_norm(a @ b) > self.tol:
            return None
        return a + b

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = self._check(a), self._check(b)
        return a @ b

    def tensor(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))

    @property
    def zero(self) -> np.ndarray:
        return zero_matrix(self.dim)

    @property
    def one(self) -> np.ndarray:
        return identity(self.dim)

    def residual(self, a: np.ndarray, b: np.ndarray) -> float:
        a, b = np.asarray(a), np.asarray(b)
        if a.shape != b.shape:
            raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
        return max_norm(a - b)

    def same_kind(self, other: Semiring) -> bool:
        return isinstance(other, ProjectionSemiring)

    def combined(self, other: Semiring) -> "ProjectionSemiring":
        if not isinstance(other, ProjectionSemiring):
            raise ValueError(
                f"instance mismatch: {self.name} cannot combine with {other.name}"
            )
        return ProjectionSemiring(self.dim * other.dim, tol=self.tol)

    def _check(self, a: Any) -> np.ndarray:
        m = np.asarray(a, dtype=complex)
        if m.shape != (self.dim, self.dim):
            raise ValueError(
                f"dimension mismatch: expected {(self.dim, self.dim)}, got {m.shape}"
            )
        return m

    def __repr__(self) -> str:
        return f"<ProjectionSemiring dim={self.dim}>"


BOOLEAN = BooleanSemiring()
UNIT_INTERVAL = UnitIntervalSemiring()


def semiring_by_name(
    name: str, grade: int = 1, tol: float = DEFAULT_TOL
) -> Semiring:
    """Instance lookup used by the command-line layer."""
    if name == "bool":
        return BOOLEAN
    if name == "prob":
        return UnitIntervalSemiring(tol)
    if name == "proj":
        return ProjectionSemiring(grade, tol)
    raise ValueError(f"unknown instance {name!r}; expected bool, prob or proj")
