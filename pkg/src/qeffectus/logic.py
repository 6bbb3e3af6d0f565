"""States, predicates, scalars, validity, conditioning, and transformers.

All three weight instances share one interface here.  A state over a
structure is a distribution over its universe; a predicate assigns each
point an effect of its instance (a truth value, a fuzzy value, or a
projection).  Validity is the weighted sum

    p |= q  =  sum_x  p(x) (x) q(x)

taken in the combined instance, so grades multiply.  In the projection
instance the terms are pairwise orthogonal (the state weights are), so
validity is itself a projection.

Conditioning keeps the raw terms t_x = p(x) (x) q(x) together with their
sum r = p |= q.  For the scalar instances dividing by r recovers an
ordinary normalized state.  For projections no quotient is available;
the conditioned object is the family of terms presented relative to its
support r, which the terms resolve exactly (each t_x is a sub-projection
of r and they sum to r).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping

from .kleisli import Distribution, KleisliMap, _fold_sum, graded_compose, unit
from .linalg import commutes, max_norm
from .rstruct import RelationalStructure, TERMINAL_POINT, signature, terminal
from .semiring import ProjectionSemiring, Semiring

__all__ = [
    "Conditioned",
    "Predicate",
    "Scalar",
    "State",
    "condition",
    "deterministic_state",
    "indicator_predicate",
    "pred_transform",
    "stat_transform",
    "truth_predicate",
    "validity",
]

Label = Hashable


@dataclass(frozen=True, eq=False)
class Scalar:
    """An instance scalar: a truth value, a probability, or a projection."""

    semiring: Semiring
    value: Any

    def __post_init__(self) -> None:
        if not self.semiring.is_element(self.value):
            raise ValueError(f"not a valid {self.semiring.name} scalar")

    def is_true(self) -> bool:
        return self.semiring.is_one(self.value)

    def is_false(self) -> bool:
        return self.semiring.is_zero(self.value)

    def residual_to(self, other: Any) -> float:
        value = other.value if isinstance(other, Scalar) else other
        return self.semiring.residual(self.value, value)


@dataclass(frozen=True, eq=False)
class State:
    """A distribution over the universe of a structure."""

    structure: RelationalStructure
    dist: Distribution

    def __post_init__(self) -> None:
        if self.dist.universe != self.structure.universe:
            raise ValueError("state distribution is over the wrong universe")

    @property
    def semiring(self) -> Semiring:
        return self.dist.semiring

    @property
    def grade(self) -> int:
        return self.dist.grade

    def value(self, x: Label) -> Any:
        return self.dist.value(x)


@dataclass(frozen=True, eq=False)
class Predicate:
    """An effect at every point of a structure; no normalization.

    In the projection instance the values at two points that co-occur in
    some relation tuple must commute; the constructor checks every such
    pair and rejects violations with the offending pair.
    """

    structure: RelationalStructure
    semiring: Semiring
    values: Mapping[Label, Any]
    tol: float | None = None

    def __post_init__(self) -> None:
        sem = self.semiring
        tol = sem.tol if self.tol is None else self.tol
        object.__setattr__(self, "tol", tol)
        filled: dict[Label, Any] = {}
        for x in self.structure.universe:
            v = self.values.get(x, sem.zero)
            if not sem.is_element(v):
                raise ValueError(f"predicate value at {x!r} is not a {sem.name} element")
            filled[x] = v
        stray = set(self.values) - set(self.structure.universe)
        if stray:
            raise ValueError(f"predicate value at {next(iter(stray))!r} is outside the universe")
        object.__setattr__(self, "values", filled)
        if isinstance(sem, ProjectionSemiring):
            for x, y in _cooccurring_pairs(self.structure):
                if not commutes(filled[x], filled[y], tol):
                    raise ValueError(
                        f"predicate values at co-occurring points {x!r}, {y!r} do not commute"
                    )

    @property
    def grade(self) -> int:
        return self.semiring.grade

    def __call__(self, x: Label) -> Any:
        return self.values[x]


def _cooccurring_pairs(s: RelationalStructure) -> set[frozenset]:
    pairs: set[frozenset] = set()
    for rel in s.relations.values():
        for t in rel.tuples:
            for i in range(len(t)):
                for j in range(i + 1, len(t)):
                    if t[i] != t[j]:
                        pairs.add(frozenset((t[i], t[j])))
    return pairs


def validity(p: State, q: Predicate) -> Scalar:
    """The scalar p |= q = sum over the universe of p(x) (x) q(x)."""
    if p.structure != q.structure:
        raise ValueError("state and predicate live over different structures")
    if not p.semiring.same_kind(q.semiring):
        raise ValueError("state and predicate use different instances")
    combined = p.semiring.combined(q.semiring)
    terms = []
    for x in p.structure.universe:
        if x not in p.dist.support:
            continue
        qx = q(x)
        if q.semiring.is_zero(qx):
            continue
        terms.append(p.semiring.tensor(p.value(x), qx))
    total = _fold_sum(combined, terms, "summing validity terms")
    return Scalar(combined, total)


@dataclass(frozen=True, eq=False)
class Conditioned:
    """A conditioned state: raw terms with their support.

    ``terms`` maps points to t_x = p(x) (x) q(x) (zeros omitted) and
    ``support`` is their sum, the validity scalar.  ``state`` recovers the
    normalized state in the scalar instances; the projection instance has
    no quotient, so there the terms-with-support presentation is final.
    """

    structure: RelationalStructure
    semiring: Semiring
    terms: Mapping[Label, Any]
    support: Any

    @property
    def state(self) -> State:
        sem = self.semiring
        if isinstance(sem, ProjectionSemiring):
            raise ValueError(
                "projection-instance conditioning is relative to its support; "
                "there is no normalized state"
            )
        if sem.is_one(self.support):
            values = dict(self.terms)
        else:
            values = {x: t / self.support for x, t in self.terms.items()}
        return State(self.structure, Distribution(sem, self.structure.universe, values))

    def check(self, tol: float | None = None) -> bool:
        """Recompute the term sum and compare it to the stored support."""
        sem = self.semiring
        if tol is None:
            tol = sem.tol
        ordered = [self.terms[x] for x in self.structure.universe if x in self.terms]
        total = _fold_sum(sem, ordered, "summing conditioned terms")
        return sem.residual(total, self.support) <= tol


def condition(p: State, q: Predicate, tol: float | None = None) -> Conditioned:
    """Condition a state on a predicate of nonzero validity.

    Raises ValueError when the validity is zero within tolerance (there
    is nothing to renormalize to).
    """
    v = validity(p, q)
    sem = v.semiring
    if tol is None:
        tol = sem.tol
    if isinstance(sem, ProjectionSemiring):
        vanishes = max_norm(v.value) <= tol
    else:
        vanishes = sem.residual(v.value, sem.zero) <= tol
    if vanishes:
        raise ValueError("cannot condition: the predicate has zero validity")
    terms: dict[Label, Any] = {}
    for x in p.structure.universe:
        if x not in p.dist.support:
            continue
        t = p.semiring.tensor(p.value(x), q(x))
        if not sem.is_zero(t):
            terms[x] = t
    return Conditioned(p.structure, sem, terms, v.value)


def stat_transform(f: KleisliMap, p: State) -> State:
    """Push a state through a Kleisli map (grades multiply).

    The state is composed as a map out of the terminal structure, so this
    is literally Kleisli composition.
    """
    if p.structure != f.domain:
        raise ValueError("state structure does not match the map domain")
    one = terminal(signature(f.domain))
    as_map = KleisliMap(one, f.domain, p.semiring, {TERMINAL_POINT: p.dist})
    composed = graded_compose(as_map, f)
    return State(f.codomain, composed(TERMINAL_POINT))


def pred_transform(f: KleisliMap, q: Predicate) -> Predicate:
    """Pull a predicate back through a Kleisli map: x maps to the sum over
    y of f(x)(y) (x) q(y).

    The commutation invariant of the result is re-checked by the Predicate
    constructor; it holds whenever f preserves the relations in the graded
    Kleisli sense.
    """
    if q.structure != f.codomain:
        raise ValueError("predicate structure does not match the map codomain")
    combined = f.semiring.combined(q.semiring)
    values: dict[Label, Any] = {}
    for x in f.domain.universe:
        terms = []
        for y, w in f(x).support.items():
            qy = q(y)
            if q.semiring.is_zero(qy):
                continue
            terms.append(f.semiring.tensor(w, qy))
        values[x] = _fold_sum(combined, terms, f"transforming the predicate at {x!r}")
    return Predicate(f.domain, combined, values)


def deterministic_state(s: RelationalStructure, point: Label, sem: Semiring) -> State:
    """The point mass at ``point`` in any instance."""
    return State(s, unit(point, s.universe, sem))


def indicator_predicate(
    s: RelationalStructure, subset: Iterable[Label], sem: Semiring
) -> Predicate:
    """The sharp predicate of a subset: one inside, zero outside."""
    members = set(subset)
    if not members <= set(s.universe):
        stray = next(iter(members - set(s.universe)))
        raise ValueError(f"subset member {stray!r} is outside the universe")
    return Predicate(s, sem, {x: sem.one for x in members})


def truth_predicate(s: RelationalStructure, sem: Semiring) -> Predicate:
    return Predicate(s, sem, {x: sem.one for x in s.universe})
