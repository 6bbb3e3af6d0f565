"""Weighted distributions over finite universes and graded Kleisli maps.

A distribution assigns weights from one of the three semiring instances to
the points of a universe, with the defined sum of all weights equal to one.
For the projection instance this says the supported projections are
mutually orthogonal and resolve the identity, i.e. the distribution is a
projection-valued measure at its grade.

Kleisli maps carry a distribution per domain point.  Grades multiply under
composition: composing a grade-d map with a grade-d' map yields a grade-dd'
map whose weights are Kronecker products, outer map's factor on the left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .linalg import CheckResult, max_norm
from .rstruct import RelationalStructure, StructureMap, same_signature
from .semiring import ProjectionSemiring, Semiring

__all__ = [
    "Distribution",
    "KleisliMap",
    "UndefinedSumError",
    "cotuple",
    "dist_close",
    "dist_residual",
    "distribution",
    "graded_compose",
    "graded_mu",
    "induced_function",
    "is_qd_kleisli_hom",
    "kleisli_close",
    "kleisli_extend",
    "kleisli_residual",
    "lift",
    "postcompose",
    "pushforward",
    "unit",
    "unit_map",
]

Label = Hashable


class UndefinedSumError(ValueError):
    """A sum required by an operation turned out undefined."""


def _fold_sum(semiring: Semiring, terms: Iterable[Any], context: str) -> Any:
    total = semiring.zero
    for t in terms:
        nxt = semiring.try_add(total, t)
        if nxt is None:
            raise UndefinedSumError(f"undefined sum while {context}")
        total = nxt
    return total


@dataclass(frozen=True, eq=False)
class Distribution:
    """A one-summing assignment of semiring weights to universe points.

    ``support`` holds the nonzero weights only, ordered by the universe.
    The constructor checks each weight is a valid element and that the
    weights sum (through defined partial sums, in universe order) to one.
    Over a one-point universe this forces the point mass, so distributions
    over a singleton carry no information.
    """

    semiring: Semiring
    universe: tuple[Label, ...]
    support: Mapping[Label, Any]

    def __post_init__(self) -> None:
        if not self.universe:
            raise ValueError("distribution needs a nonempty universe")
        points = set(self.universe)
        if not set(self.support) <= points:
            stray = next(iter(set(self.support) - points))
            raise ValueError(f"support point {stray!r} is outside the universe")
        sem = self.semiring
        ordered: dict[Label, Any] = {}
        for x in self.universe:
            if x not in self.support:
                continue
            v = self.support[x]
            if not sem.is_element(v):
                raise ValueError(f"weight at {x!r} is not a valid {sem.name} element")
            if sem.is_zero(v):
                continue
            ordered[x] = v
        object.__setattr__(self, "support", ordered)
        total = _fold_sum(sem, ordered.values(), "normalizing a distribution")
        if not sem.is_one(total):
            raise ValueError(
                f"weights do not sum to one (residual {sem.residual(total, sem.one)})"
            )
        if len(self.universe) == 1:
            assert sem.is_one(self.value(self.universe[0]))

    @property
    def grade(self) -> int:
        return self.semiring.grade

    def value(self, x: Label) -> Any:
        if x in self.support:
            return self.support[x]
        if x not in self.universe:
            raise KeyError(f"{x!r} is not a universe point")
        return self.semiring.zero

    def point(self) -> Label:
        """The carrier of a point mass; raises if the support is not one
        point of weight one."""
        if len(self.support) != 1:
            raise ValueError("not a point mass")
        x, v = next(iter(self.support.items()))
        if not self.semiring.is_one(v):
            raise ValueError("not a point mass")
        return x


def distribution(
    semiring: Semiring, universe: Iterable[Label], values: Mapping[Label, Any]
) -> Distribution:
    return Distribution(semiring, tuple(universe), dict(values))


def unit(x: Label, universe: Iterable[Label], semiring: Semiring) -> Distribution:
    """Point mass at ``x`` (weight one; the identity at the projection
    instance's grade)."""
    return Distribution(semiring, tuple(universe), {x: semiring.one})


def dist_residual(p: Distribution, q: Distribution) -> float:
    """Largest pointwise weight difference; infinity on universe mismatch."""
    if p.universe != q.universe:
        return float("inf")
    if not p.semiring.same_kind(q.semiring) or p.grade != q.grade:
        return float("inf")
    worst = 0.0
    for x in set(p.support) | set(q.support):
        worst = max(worst, p.semiring.residual(p.value(x), q.value(x)))
    return worst


def dist_close(p: Distribution, q: Distribution, tol: float | None = None) -> bool:
    if tol is None:
        tol = max(p.semiring.tol, q.semiring.tol)
    return dist_residual(p, q) <= tol


@dataclass(frozen=True, eq=False)
class KleisliMap:
    """A structure map into distributions: one distribution per domain point.

    The grade is explicit data, carried by the semiring instance (1 for the
    scalar instances, the matrix dimension for projections).
    """

    domain: RelationalStructure
    codomain: RelationalStructure
    semiring: Semiring
    table: Mapping[Label, Distribution]

    def __post_init__(self) -> None:
        for a in self.domain.universe:
            if a not in self.table:
                raise ValueError(f"kleisli map not total: missing {a!r}")
            d = self.table[a]
            if d.universe != self.codomain.universe:
                raise ValueError(f"distribution at {a!r} is over the wrong universe")
            if not d.semiring.same_kind(self.semiring) or d.grade != self.grade:
                raise ValueError(f"distribution at {a!r} has mismatched instance/grade")

    @property
    def grade(self) -> int:
        return self.semiring.grade

    def __call__(self, a: Label) -> Distribution:
        return self.table[a]


def kleisli_residual(c: KleisliMap, e: KleisliMap) -> float:
    if c.domain.universe != e.domain.universe:
        return float("inf")
    worst = 0.0
    for a in c.domain.universe:
        worst = max(worst, dist_residual(c(a), e(a)))
    return worst


def kleisli_close(c: KleisliMap, e: KleisliMap, tol: float | None = None) -> bool:
    if tol is None:
        tol = max(c.semiring.tol, e.semiring.tol)
    return kleisli_residual(c, e) <= tol


def unit_map(s: RelationalStructure, semiring: Semiring) -> KleisliMap:
    """The identity Kleisli map: every point goes to its point mass."""
    table = {x: unit(x, s.universe, semiring) for x in s.universe}
    return KleisliMap(s, s, semiring, table)


def lift(f: StructureMap, semiring: Semiring) -> KleisliMap:
    """A plain structure map viewed as a Kleisli map (unit after f)."""
    table = {x: unit(f(x), f.codomain.universe, semiring) for x in f.domain.universe}
    return KleisliMap(f.domain, f.codomain, semiring, table)


def pushforward(f: StructureMap, p: Distribution) -> Distribution:
    """Image distribution: each fiber's weights are summed.

    All sums are defined for valid input (fiber sums are partial sums of
    the full normalization sum).
    """
    if p.universe != f.domain.universe:
        raise ValueError("distribution universe does not match the map domain")
    fibers: dict[Label, list[Any]] = {}
    for x in f.domain.universe:
        if x in p.support:
            fibers.setdefault(f(x), []).append(p.support[x])
    values = {
        y: _fold_sum(p.semiring, terms, f"pushing forward onto {y!r}")
        for y, terms in fibers.items()
    }
    return Distribution(p.semiring, f.codomain.universe, values)


def postcompose(f: StructureMap, c: KleisliMap) -> KleisliMap:
    """Apply a plain map after a Kleisli map, pointwise by pushforward."""
    if c.codomain.universe != f.domain.universe:
        raise ValueError("map domain does not match kleisli codomain")
    table = {a: pushforward(f, c(a)) for a in c.domain.universe}
    return KleisliMap(c.domain, f.codomain, c.semiring, table)


def kleisli_extend(c: KleisliMap, p: Distribution) -> Distribution:
    """Kleisli extension for the scalar instances.

    The result weights are ``sum_x p(x) * c(x)(y)``.  The projection
    instance composes through :func:`graded_compose` instead, where grades
    multiply.
    """
    if isinstance(c.semiring, ProjectionSemiring):
        raise ValueError("kleisli_extend is for scalar instances; use graded_compose")
    if not p.semiring.same_kind(c.semiring):
        raise ValueError("instance mismatch between map and distribution")
    if p.universe != c.domain.universe:
        raise ValueError("distribution universe does not match the map domain")
    sem = c.semiring
    values: dict[Label, Any] = {}
    for y in c.codomain.universe:
        terms = []
        for x, px in p.support.items():
            v = c(x).value(y)
            if not sem.is_zero(v):
                terms.append(sem.mul(px, v))
        if terms:
            values[y] = _fold_sum(sem, terms, f"extending onto {y!r}")
    return Distribution(sem, c.codomain.universe, values)


def graded_mu(
    pairs: Sequence[tuple[Any, Distribution]], outer: Semiring
) -> Distribution:
    """Graded flattening of a distribution over distributions.

    ``pairs`` lists the support explicitly: each entry is an outer weight
    (in ``outer``) attached to an inner distribution; the outer weights must
    themselves sum to one.  The result assigns ``x`` the weight
    ``sum_i tensor(P_i, p_i(x))`` and lives at the product grade.
    """
    if not pairs:
        raise ValueError("graded_mu needs a nonempty support")
    inner_sem = pairs[0][1].semiring
    universe = pairs[0][1].universe
    for w, d in pairs:
        if not outer.is_element(w):
            raise ValueError("outer weight is not a valid element")
        if d.universe != universe or not d.semiring.same_kind(inner_sem):
            raise ValueError("inner distributions disagree on universe or instance")
        if d.grade != inner_sem.grade:
            raise ValueError("inner distributions disagree on grade")
    total_outer = _fold_sum(outer, (w for w, _ in pairs), "summing outer weights")
    if not outer.is_one(total_outer):
        raise ValueError("outer weights do not sum to one")
    combined = outer.combined(inner_sem)
    values: dict[Label, Any] = {}
    for x in universe:
        terms = []
        for w, d in pairs:
            if x in d.support:
                terms.append(outer.tensor(w, d.support[x]))
        if terms:
            values[x] = _fold_sum(combined, terms, f"flattening onto {x!r}")
    return Distribution(combined, universe, values)


def graded_compose(c: KleisliMap, e: KleisliMap) -> KleisliMap:
    """Composite ``e after c`` at the product grade.

    Weights are ``(e . c)(a)(z) = sum_b tensor(c(a)(b), e(b)(z))`` with the
    outer map's weight on the left of the tensor; for scalar instances this
    reduces to Kleisli extension.
    """
    if c.codomain.universe != e.domain.universe:
        raise ValueError("composition mismatch: codomain of c is not domain of e")
    if not c.semiring.same_kind(e.semiring):
        raise ValueError("instance mismatch between composands")
    combined = c.semiring.combined(e.semiring)
    outer = c.semiring
    table: dict[Label, Distribution] = {}
    for a in c.domain.universe:
        values: dict[Label, Any] = {}
        for z in e.codomain.universe:
            terms = []
            for b, w in c(a).support.items():
                v = e(b).value(z)
                if not e.semiring.is_zero(v):
                    terms.append(outer.tensor(w, v))
            if terms:
                values[z] = _fold_sum(combined, terms, f"composing onto {z!r}")
        table[a] = Distribution(combined, e.codomain.universe, values)
    return KleisliMap(c.domain, e.codomain, combined, table)


def cotuple(p: KleisliMap | StructureMap, q: KleisliMap | StructureMap):
    """Map out of the tagged disjoint union, acting tagwise.

    Accepts a pair of Kleisli maps or a pair of plain structure maps (the
    latter delegates to the structure-level cotuple).
    """
    from .rstruct import coproduct
    from .rstruct import cotuple as structure_cotuple

    if isinstance(p, StructureMap) and isinstance(q, StructureMap):
        return structure_cotuple(p, q)
    if isinstance(p, StructureMap) or isinstance(q, StructureMap):
        raise ValueError("cotuple requires two maps of the same kind")
    if p.codomain != q.codomain:
        raise ValueError("cotuple requires a common codomain")
    if not p.semiring.same_kind(q.semiring) or p.grade != q.grade:
        raise ValueError("cotuple requires matching instance and grade")
    total, _, _ = coproduct(p.domain, q.domain)
    table: dict[Label, Distribution] = {}
    for x in p.domain.universe:
        table[(x, 1)] = p(x)
    for y in q.domain.universe:
        table[(y, 2)] = q(y)
    return KleisliMap(total, p.codomain, p.semiring, table)


def induced_function(c: KleisliMap) -> StructureMap:
    """The point function under a map whose distributions are point masses."""
    mapping = {a: c(a).point() for a in c.domain.universe}
    return StructureMap(c.domain, c.codomain, mapping)


# ---------------------------------------------------------------------------
# relational conditions at grade d
# ---------------------------------------------------------------------------


def is_qd_kleisli_hom(c: KleisliMap, tol: float | None = None) -> CheckResult:
    """Check the grade-d homomorphism conditions of a projection-valued map.

    For every related tuple ``(a_1, ..., a_k)`` of the domain, writing
    ``p_i = c(a_i)``:

    1. ``p_i(x)`` and ``p_j(x')`` commute for all points ``x, x'`` of the
       codomain and all component pairs ``i, j``;
    2. for every codomain tuple ``(x_1, ..., x_k)`` that is not related,
       the product ``p_1(x_1) ... p_k(x_k)`` vanishes.

    Both conditions are evaluated numerically within ``tol``; absent support
    points carry the zero matrix, so iteration sticks to supports.  The
    witness on failure names the relation, the domain tuple and the points
    involved.
    """
    sem = c.semiring
    if not isinstance(sem, ProjectionSemiring):
        raise ValueError("is_qd_kleisli_hom applies to the projection instance")
    if not same_signature(c.domain, c.codomain):
        raise ValueError("signature mismatch between domain and codomain")
    if tol is None:
        tol = sem.tol
    if sem.dim == 1:
        return _qd_hom_scalar(c, float(tol))
    codpoints = c.codomain.universe
    for name in sorted(c.domain.relations):
        rel = c.domain.relations[name]
        target = c.codomain.relations[name].tuples
        non_related = [
            s
            for s in itertools.product(codpoints, repeat=rel.arity)
            if s not in target
        ]
        for t in sorted(rel.tuples, key=repr):
            dists = [c(a) for a in t]
            for i in range(len(t)):
                for j in range(i + 1, len(t)):
                    for x, px in dists[i].support.items():
                        for x2, qx in dists[j].support.items():
                            r = max_norm(px @ qx - qx @ px)
                            if r > tol:
                                return CheckResult(
                                    False,
                                    "components_do_not_commute",
                                    (name, t, (t[i], x), (t[j], x2)),
                                    r,
                                )
            for s in non_related:
                prod = None
                for i, x in enumerate(s):
                    if x not in dists[i].support:
                        prod = None
                        break
                    v = dists[i].support[x]
                    prod = v if prod is None else prod @ v
                if prod is not None:
                    r = max_norm(prod)
                    if r > tol:
                        return CheckResult(
                            False, "forbidden_tuple_product_nonzero", (name, t, s), r
                        )
    return CheckResult(True)


def _qd_hom_scalar(c: KleisliMap, tol: float) -> CheckResult:
    """Grade-1 evaluation of the same conditions in scalar arithmetic."""
    supp = {
        a: {x: complex(np.asarray(v).reshape(())) for x, v in c.table[a].support.items()}
        for a in c.domain.universe
    }
    codpoints = c.codomain.universe
    for name in sorted(c.domain.relations):
        rel = c.domain.relations[name]
        target = c.codomain.relations[name].tuples
        non_related = [
            s
            for s in itertools.product(codpoints, repeat=rel.arity)
            if s not in target
        ]
        for t in sorted(rel.tuples, key=repr):
            rows = [supp[a] for a in t]
            for i in range(len(t)):
                for j in range(i + 1, len(t)):
                    for x, px in rows[i].items():
                        for x2, qx in rows[j].items():
                            if abs(px * qx - qx * px) > tol:
                                return CheckResult(
                                    False,
                                    "components_do_not_commute",
                                    (name, t, (t[i], x), (t[j], x2)),
                                )
            for s in non_related:
                prod = 1.0 + 0j
                for i, x in enumerate(s):
                    v = rows[i].get(x)
                    if v is None:
                        prod = None
                        break
                    prod *= v
                if prod is not None and abs(prod) > tol:
                    return CheckResult(
                        False, "forbidden_tuple_product_nonzero", (name, t, s), abs(prod)
                    )
    return CheckResult(True)
