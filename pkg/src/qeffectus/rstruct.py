"""Finite relational structures, their maps, and coproduct scaffolding.

A structure is a finite universe of labels plus named relations of fixed
arity.  Graphs are the special case of a single binary relation ``E`` that
is symmetric and irreflexive.  Disjoint unions use tagged pairs ``(x, 1)``
and ``(y, 2)`` so the two summands stay distinguishable in serialized
output.  The terminal structure has one point carrying every relation
universally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

from .linalg import CheckResult

__all__ = [
    "Relation",
    "RelationalStructure",
    "StructureMap",
    "bang",
    "complete_graph",
    "compose",
    "coproduct",
    "coproduct_components",
    "cotuple",
    "cycle_graph",
    "find_classical_hom",
    "graph",
    "identity_map",
    "initial",
    "is_graph",
    "is_homomorphism",
    "same_signature",
    "signature",
    "structure",
    "sum_map",
    "terminal",
]

Label = Hashable
TERMINAL_POINT = "*"


@dataclass(frozen=True)
class Relation:
    """A named relation's data: arity and the set of related tuples."""

    arity: int
    tuples: frozenset[tuple[Label, ...]]

    def __post_init__(self) -> None:
        if self.arity < 1:
            raise ValueError("relation arity must be at least 1")
        object.__setattr__(self, "tuples", frozenset(tuple(t) for t in self.tuples))
        for t in self.tuples:
            if len(t) != self.arity:
                raise ValueError(f"tuple {t!r} does not match arity {self.arity}")


@dataclass(frozen=True)
class RelationalStructure:
    universe: tuple[Label, ...]
    relations: Mapping[str, Relation] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.universe)) != len(self.universe):
            raise ValueError("universe labels must be distinct")
        points = set(self.universe)
        for name, rel in self.relations.items():
            for t in rel.tuples:
                if not set(t) <= points:
                    raise ValueError(
                        f"relation {name!r} tuple {t!r} uses labels outside the universe"
                    )

    @property
    def size(self) -> int:
        return len(self.universe)

    def relation(self, name: str) -> Relation:
        return self.relations[name]


def structure(
    universe: Iterable[Label],
    relations: Mapping[str, tuple[int, Iterable[tuple[Label, ...]]]] | None = None,
) -> RelationalStructure:
    """Convenience constructor taking ``{name: (arity, tuples)}``."""
    rels = {
        name: Relation(arity, frozenset(tuple(t) for t in tups))
        for name, (arity, tups) in (relations or {}).items()
    }
    return RelationalStructure(tuple(universe), rels)


def signature(s: RelationalStructure) -> dict[str, int]:
    """Relation names with their arities."""
    return {name: rel.arity for name, rel in s.relations.items()}


def same_signature(a: RelationalStructure, b: RelationalStructure) -> bool:
    return signature(a) == signature(b)


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

EDGE = "E"


def graph(vertices: Iterable[Label], edges: Iterable[tuple[Label, Label]]) -> RelationalStructure:
    """Build a graph: one binary relation ``E``, symmetrized, loops rejected."""
    verts = tuple(vertices)
    closed: set[tuple[Label, Label]] = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at {u!r}: graphs here are irreflexive")
        closed.add((u, v))
        closed.add((v, u))
    return RelationalStructure(verts, {EDGE: Relation(2, frozenset(closed))})


def is_graph(s: RelationalStructure) -> bool:
    """True iff ``s`` is a symmetric irreflexive single-relation structure."""
    if set(s.relations) != {EDGE} or s.relations[EDGE].arity != 2:
        return False
    tuples = s.relations[EDGE].tuples
    for u, v in tuples:
        if u == v or (v, u) not in tuples:
            return False
    return True


def complete_graph(n: int, prefix: str = "v") -> RelationalStructure:
    verts = [f"{prefix}{i}" for i in range(1, n + 1)]
    return graph(verts, [(a, b) for a, b in itertools.combinations(verts, 2)])


def cycle_graph(n: int, prefix: str = "v") -> RelationalStructure:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    verts = [f"{prefix}{i}" for i in range(1, n + 1)]
    return graph(verts, [(verts[i], verts[(i + 1) % n]) for i in range(n)])


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _point_set(universe: tuple) -> frozenset:
    return frozenset(universe)


@dataclass(frozen=True)
class StructureMap:
    """A total function between universes; relation preservation is checked
    separately by :func:`is_homomorphism`."""

    domain: RelationalStructure
    codomain: RelationalStructure
    mapping: Mapping[Label, Label]

    def __post_init__(self) -> None:
        points = _point_set(self.codomain.universe)
        mapping = self.mapping
        for x in self.domain.universe:
            if x not in mapping:
                raise ValueError(f"map not total: no image for {x!r}")
            if mapping[x] not in points:
                raise ValueError(
                    f"image {mapping[x]!r} of {x!r} is outside the codomain"
                )

    def __call__(self, x: Label) -> Label:
        return self.mapping[x]


def identity_map(s: RelationalStructure) -> StructureMap:
    return StructureMap(s, s, {x: x for x in s.universe})


def compose(g: StructureMap, f: StructureMap) -> StructureMap:
    """The composite ``g after f``."""
    if f.codomain != g.domain:
        raise ValueError("composition mismatch: codomain of f is not domain of g")
    return StructureMap(f.domain, g.codomain, {x: g(f(x)) for x in f.domain.universe})


def is_homomorphism(f: StructureMap) -> CheckResult:
    """Check relation preservation; on failure the witness is the first
    violating ``(relation, tuple, image tuple)`` in repr order.

    The passing path avoids sorting: tuples are scanned as stored and the
    canonical witness is picked only among the violations found.  Binary
    relations get an allocation-light loop since exhaustive graph sweeps
    route through here.
    """
    if not same_signature(f.domain, f.codomain):
        raise ValueError("signature mismatch between domain and codomain")
    mapping = f.mapping
    for name in sorted(f.domain.relations):
        rel = f.domain.relations[name]
        target = f.codomain.relations[name].tuples
        if rel.arity == 2:
            bad = [
                t for t in rel.tuples if (mapping[t[0]], mapping[t[1]]) not in target
            ]
        else:
            bad = [
                t
                for t in rel.tuples
                if tuple(mapping[x] for x in t) not in target
            ]
        if bad:
            t = min(bad, key=repr)
            image = tuple(mapping[x] for x in t)
            return CheckResult(False, "relation_not_preserved", (name, t, image))
    return CheckResult(True)


# ---------------------------------------------------------------------------
# coproducts, terminal and initial structures
# ---------------------------------------------------------------------------


def coproduct(
    a: RelationalStructure, b: RelationalStructure
) -> tuple[RelationalStructure, StructureMap, StructureMap]:
    """Tagged disjoint union with its two coprojections.

    Points of the left summand become ``(x, 1)``, points of the right
    ``(y, 2)``; each relation is the union of the two embedded copies, with
    no mixed tuples.
    """
    if not same_signature(a, b):
        raise ValueError("coproduct requires matching signatures")
    universe = tuple((x, 1) for x in a.universe) + tuple((y, 2) for y in b.universe)
    relations = {}
    for name, rel in a.relations.items():
        tagged = {tuple((x, 1) for x in t) for t in rel.tuples} | {
            tuple((y, 2) for y in t) for t in b.relations[name].tuples
        }
        relations[name] = Relation(rel.arity, frozenset(tagged))
    total = RelationalStructure(universe, relations)
    k1 = StructureMap(a, total, {x: (x, 1) for x in a.universe})
    k2 = StructureMap(b, total, {y: (y, 2) for y in b.universe})
    return total, k1, k2


def coproduct_components(
    s: RelationalStructure,
) -> tuple[RelationalStructure, RelationalStructure]:
    """Recover the two summands of a tagged disjoint union.

    Requires every point to be a pair tagged 1 or 2 and every relation tuple
    to stay within one tag.
    """
    left, right = [], []
    for p in s.universe:
        if not (isinstance(p, tuple) and len(p) == 2 and p[1] in (1, 2)):
            raise ValueError(f"point {p!r} is not a tagged coproduct point")
        (left if p[1] == 1 else right).append(p[0])
    relations_left: dict[str, Relation] = {}
    relations_right: dict[str, Relation] = {}
    for name, rel in s.relations.items():
        ltups, rtups = set(), set()
        for t in rel.tuples:
            tags = {p[1] for p in t}
            if len(tags) != 1:
                raise ValueError(f"relation {name!r} has a mixed-tag tuple {t!r}")
            (ltups if tags == {1} else rtups).add(tuple(p[0] for p in t))
        relations_left[name] = Relation(rel.arity, frozenset(ltups))
        relations_right[name] = Relation(rel.arity, frozenset(rtups))
    return (
        RelationalStructure(tuple(left), relations_left),
        RelationalStructure(tuple(right), relations_right),
    )


def cotuple(p: StructureMap, q: StructureMap) -> StructureMap:
    """The map out of ``p.domain + q.domain`` acting tagwise; codomains must
    coincide."""
    if p.codomain != q.codomain:
        raise ValueError("cotuple requires a common codomain")
    total, _, _ = coproduct(p.domain, q.domain)
    mapping: dict[Label, Label] = {}
    for x in p.domain.universe:
        mapping[(x, 1)] = p(x)
    for y in q.domain.universe:
        mapping[(y, 2)] = q(y)
    return StructureMap(total, p.codomain, mapping)


def sum_map(f: StructureMap, g: StructureMap) -> StructureMap:
    """``f + g`` between disjoint unions, acting tagwise."""
    total_dom, _, _ = coproduct(f.domain, g.domain)
    total_cod, k1, k2 = coproduct(f.codomain, g.codomain)
    mapping: dict[Label, Label] = {}
    for x in f.domain.universe:
        mapping[(x, 1)] = (f(x), 1)
    for y in g.domain.universe:
        mapping[(y, 2)] = (g(y), 2)
    return StructureMap(total_dom, total_cod, mapping)


def terminal(sig: Mapping[str, int]) -> RelationalStructure:
    """One point carrying every relation of the signature universally."""
    relations = {
        name: Relation(arity, frozenset({(TERMINAL_POINT,) * arity}))
        for name, arity in sig.items()
    }
    return RelationalStructure((TERMINAL_POINT,), relations)


def initial(sig: Mapping[str, int]) -> RelationalStructure:
    """The empty structure over a signature."""
    return RelationalStructure(
        (), {name: Relation(arity, frozenset()) for name, arity in sig.items()}
    )


def bang(s: RelationalStructure) -> StructureMap:
    """The unique map to the terminal structure of the same signature."""
    t = terminal(signature(s))
    return StructureMap(s, t, {x: TERMINAL_POINT for x in s.universe})


# ---------------------------------------------------------------------------
# classical homomorphism search
# ---------------------------------------------------------------------------


def find_classical_hom(
    a: RelationalStructure, b: RelationalStructure
) -> StructureMap | None:
    """Backtracking search for a homomorphism ``a -> b``.

    Deterministic: source points are tried by descending degree (number of
    relation tuples they appear in, ties broken by universe order) and
    candidate images in codomain universe order.  Returns the first
    homomorphism found, or None when none exists.
    """
    if not same_signature(a, b):
        raise ValueError("signature mismatch between source and target")

    occurrences: dict[Label, list[tuple[str, tuple[Label, ...]]]] = {
        x: [] for x in a.universe
    }
    degree = {x: 0 for x in a.universe}
    for name in sorted(a.relations):
        for t in a.relations[name].tuples:
            for x in set(t):
                occurrences[x].append((name, t))
                degree[x] += 1
    index = {x: i for i, x in enumerate(a.universe)}
    order = sorted(a.universe, key=lambda x: (-degree[x], index[x]))

    assignment: dict[Label, Label] = {}

    def consistent(x: Label) -> bool:
        for name, t in occurrences[x]:
            if all(p in assignment for p in t):
                image = tuple(assignment[p] for p in t)
                if image not in b.relations[name].tuples:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        x = order[i]
        for y in b.universe:
            assignment[x] = y
            if consistent(x) and extend(i + 1):
                return True
            del assignment[x]
        return False

    if not a.universe:
        return StructureMap(a, b, {})
    if extend(0):
        return StructureMap(a, b, dict(assignment))
    return None
