"""Dense complex-matrix kernel with explicit tolerances.

Matrices are square ``numpy`` arrays of ``complex128`` treated as immutable
values: every operation returns a fresh array and nothing here mutates its
arguments.  All approximate comparisons use the entrywise max-norm.  The
default tolerance is ``1e-9`` and every check takes an overridable ``tol``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Mapping

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "CheckResult",
    "Pvm",
    "adjoint",
    "as_matrix",
    "commutes",
    "identity",
    "is_projection",
    "kron",
    "mat_close",
    "matmul",
    "max_norm",
    "validate_pvm",
    "zero_matrix",
]

DEFAULT_TOL = 1e-9

Label = Hashable


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a verification: a boolean plus an optional witness.

    ``condition`` names the first failed check and ``witness`` carries the
    offending datum (a point, a tuple, a pair of indices); ``residual`` is
    the numeric size of the violation when one makes sense.
    """

    ok: bool
    condition: str | None = None
    witness: Any = None
    residual: float | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not tol >= 0.0:
        raise ValueError(f"tolerance must be nonnegative, got {tol}")
    return tol


def as_matrix(data: Any) -> np.ndarray:
    """Coerce ``data`` to a validated square complex matrix.

    Accepts anything ``np.asarray`` does, plus bare scalars (read as 1x1).
    Rejects non-square shapes and non-finite entries.  Always returns a new
    array, so callers may treat the result as a value.
    """
    m = np.asarray(data, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    if m.shape[0] < 1:
        raise ValueError("matrix dimension must be at least 1")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m.copy()


def identity(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError("matrix dimension must be at least 1")
    return np.eye(dim, dtype=complex)


def zero_matrix(dim: int) -> np.ndarray:
    if dim < 1:
        raise ValueError("matrix dimension must be at least 1")
    return np.zeros((dim, dim), dtype=complex)


def _require_square(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    return m


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product of two square matrices of equal dimension."""
    a, b = _require_square(a), _require_square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(_require_square(a)).T.copy()


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(_require_square(a), _require_square(b))


def max_norm(a: np.ndarray) -> float:
    """Entrywise max-norm, the norm used by every tolerance check here."""
    return float(np.max(np.abs(a)))


def mat_close(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    return max_norm(a - b) <= _check_tol(tol)


def is_projection(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``m`` is self-adjoint and idempotent within ``tol``.

    Both defect norms (``m* - m`` and ``m@m - m``) are measured entrywise.
    """
    tol = _check_tol(tol)
    m = _require_square(np.asarray(m, dtype=complex))
    if max_norm(np.conj(m).T - m) > tol:
        return False
    return max_norm(m @ m - m) <= tol


def commutes(a: np.ndarray, b: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the commutator ``ab - ba`` vanishes within ``tol``."""
    tol = _check_tol(tol)
    a, b = _require_square(a), _require_square(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return max_norm(a @ b - b @ a) <= tol


# A family summing to the identity has orthogonal members only up to noise
# amplification, so the derived pairwise-product check runs at a looser
# multiple of the base tolerance.
ORTHOGONALITY_SLACK = 10.0


@dataclass(frozen=True, eq=False)
class Pvm:
    """Projection-valued measure: one projection per point, summing to 1.

    ``universe`` fixes the point order; ``elements`` must assign every point
    a projection of the common dimension (zero matrices are allowed).
    Construct through :func:`validate_pvm` when the input is untrusted.
    """

    universe: tuple[Label, ...]
    elements: Mapping[Label, np.ndarray]
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        diag = _pvm_diagnostic(self.universe, self.elements, self.tol)
        if diag is not None:
            raise ValueError(f"not a PVM: {diag.condition} at {diag.witness!r}")

    @property
    def dim(self) -> int:
        return next(iter(self.elements.values())).shape[0]

    def element(self, x: Label) -> np.ndarray:
        return self.elements[x]


def _pvm_diagnostic(
    universe: tuple[Label, ...],
    elements: Mapping[Label, np.ndarray],
    tol: float,
) -> CheckResult | None:
    """Return the first failing PVM condition, or None if all pass.

    Structural problems (empty family, missing points, mixed dimensions)
    raise ``ValueError``; the mathematical conditions come back as a
    diagnostic naming the condition and the offending point.
    """
    tol = _check_tol(tol)
    if not universe:
        raise ValueError("empty family: a PVM needs at least one point")
    if set(elements) != set(universe):
        raise ValueError("elements must be keyed by exactly the universe points")
    dims = {np.asarray(elements[x]).shape for x in universe}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch across elements: {sorted(dims)}")
    for x in universe:
        if not is_projection(elements[x], tol):
            return CheckResult(False, "element_not_projection", x)
    total = sum(np.asarray(elements[x], dtype=complex) for x in universe)
    resid = max_norm(total - identity(total.shape[0]))
    if resid > tol:
        return CheckResult(False, "sum_not_identity", None, resid)
    slack = ORTHOGONALITY_SLACK * tol
    for i, x in enumerate(universe):
        for y in universe[i + 1 :]:
            resid = max_norm(np.asarray(elements[x]) @ np.asarray(elements[y]))
            if resid > slack:
                return CheckResult(False, "elements_not_orthogonal", (x, y), resid)
    return None


def validate_pvm(
    candidate: Mapping[Label, Any], tol: float = DEFAULT_TOL
) -> Pvm | CheckResult:
    """Validate a labeled family of matrices as a PVM.

    Returns a :class:`Pvm` when every element is a projection and the family
    sums to the identity within ``tol`` (pairwise orthogonality, a derived
    consequence, is asserted as well at ``10*tol``).  Otherwise returns a
    :class:`CheckResult` naming the first failing condition.  Structural
    defects (empty family, mixed dimensions) raise ``ValueError``.
    """
    universe = tuple(candidate.keys())
    elements = {x: as_matrix(candidate[x]) for x in universe}
    diag = _pvm_diagnostic(universe, elements, tol)
    if diag is not None:
        return diag
    return Pvm(universe=universe, elements=elements, tol=float(tol))
