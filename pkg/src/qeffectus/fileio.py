"""JSON on-disk formats and their (de)serializers.

One format family, three document kinds:

* structure files: ``{"universe": [...], "relations": {name: {"arity": k,
  "tuples": [[...]]}}}``, or the graph shorthand ``{"graph": {"vertices":
  [...], "edges": [[u, v]]}}`` (symmetrized, loops rejected).
* matrix families: ``{"grade": d, "entries": {...}}`` where keys are
  either single labels ("x") or pairs ("v|w"), and values are complex
  matrices as nested ``[re, im]`` pairs, or plain numbers in the scalar
  instances.
* strategies: ``{"state": [[re, im], ...], "alice": <family>, "bob":
  <family>}``.

Classical maps are flat objects ``{"v": "w"}`` and question distributions
are ``{"v1|v2": weight}``.  Serialization is canonical (sorted keys,
two-space indent, trailing newline) so that reports and corpus files are
byte-stable and parse/serialize round-trips are identities.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

import numpy as np

from .games import QuantumHomomorphism, Strategy
from .kleisli import Distribution, KleisliMap
from .logic import Predicate, State
from .rstruct import Relation, RelationalStructure, StructureMap, graph
from .semiring import BooleanSemiring, ProjectionSemiring, Semiring, UnitIntervalSemiring

__all__ = [
    "InputError",
    "canonical_dumps",
    "load_json",
    "parse_classical_map",
    "parse_family",
    "parse_question_dist",
    "parse_strategy",
    "parse_structure",
    "family_to_kleisli",
    "family_to_predicate",
    "family_to_qhom",
    "family_to_state",
    "kleisli_to_doc",
    "map_to_doc",
    "qhom_to_doc",
    "strategy_to_doc",
    "structure_to_doc",
    "value_to_json",
]


class InputError(ValueError):
    """A file failed to parse or denote a valid object; exit code 2."""


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e


def canonical_dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _label(x: Any, where: str) -> str:
    if not isinstance(x, str) or not x or "|" in x:
        raise InputError(f"{where}: labels must be nonempty strings without '|', got {x!r}")
    return x


def parse_structure(doc: Any, where: str = "structure") -> RelationalStructure:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    if "graph" in doc:
        g = doc["graph"]
        if not isinstance(g, dict) or "vertices" not in g:
            raise InputError(f"{where}: graph form needs 'vertices'")
        verts = [_label(v, where) for v in g["vertices"]]
        edges = []
        for e in g.get("edges", []):
            if not isinstance(e, list) or len(e) != 2:
                raise InputError(f"{where}: each edge must be a pair")
            u, v = _label(e[0], where), _label(e[1], where)
            if u == v:
                raise InputError(f"{where}: loop at {u!r} rejected")
            edges.append((u, v))
        try:
            return graph(verts, edges)
        except ValueError as e:
            raise InputError(f"{where}: {e}") from e
    if "universe" not in doc:
        raise InputError(f"{where}: expected 'universe' or 'graph'")
    universe = [_label(x, where) for x in doc["universe"]]
    relations: dict[str, Relation] = {}
    for name, body in doc.get("relations", {}).items():
        if not isinstance(body, dict) or "arity" not in body:
            raise InputError(f"{where}: relation {name!r} needs an 'arity'")
        arity = body["arity"]
        if not isinstance(arity, int) or arity < 1:
            raise InputError(f"{where}: relation {name!r} has invalid arity")
        tuples = set()
        for t in body.get("tuples", []):
            if not isinstance(t, list) or len(t) != arity:
                raise InputError(f"{where}: relation {name!r} has a malformed tuple")
            tuples.add(tuple(_label(x, where) for x in t))
        relations[name] = Relation(arity, frozenset(tuples))
    try:
        return RelationalStructure(tuple(universe), relations)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def structure_to_doc(s: RelationalStructure) -> dict:
    return {
        "universe": list(s.universe),
        "relations": {
            name: {
                "arity": rel.arity,
                "tuples": sorted([list(t) for t in rel.tuples]),
            }
            for name, rel in sorted(s.relations.items())
        },
    }


def _parse_complex_matrix(value: Any, grade: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != grade:
        raise InputError(f"{where}: expected a {grade}x{grade} matrix")
    rows = []
    for row in value:
        if not isinstance(row, list) or len(row) != grade:
            raise InputError(f"{where}: expected a {grade}x{grade} matrix")
        out = []
        for cell in row:
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(p, (int, float)) for p in cell)
            ):
                raise InputError(f"{where}: matrix entries must be [re, im] pairs")
            out.append(complex(cell[0], cell[1]))
        rows.append(out)
    return np.array(rows, dtype=complex)


def _parse_value(value: Any, sem: Semiring, where: str) -> Any:
    if isinstance(sem, ProjectionSemiring):
        return _parse_complex_matrix(value, sem.dim, where)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputError(f"{where}: expected a plain number")
    if isinstance(sem, BooleanSemiring):
        if value not in (0, 1):
            raise InputError(f"{where}: boolean weights must be 0 or 1")
        return int(value)
    return float(value)


def value_to_json(sem: Semiring, value: Any) -> Any:
    if isinstance(sem, ProjectionSemiring):
        m = np.asarray(value, dtype=complex)
        return [[[float(c.real), float(c.imag)] for c in row] for row in m]
    if isinstance(sem, UnitIntervalSemiring):
        return float(value)
    return int(value)


def parse_family(
    doc: Any, sem_of_grade, where: str = "family"
) -> tuple[Semiring, dict[str, Any]]:
    """Parse a matrix-family document.

    ``sem_of_grade`` maps the file's grade to the semiring instance to
    parse entries with (the CLI resolves --instance and --grade there).
    """
    if not isinstance(doc, dict) or "entries" not in doc:
        raise InputError(f"{where}: expected an object with 'entries'")
    grade = doc.get("grade", 1)
    if not isinstance(grade, int) or grade < 1:
        raise InputError(f"{where}: invalid grade")
    sem = sem_of_grade(grade)
    if sem.grade != grade:
        raise InputError(
            f"{where}: file grade {grade} conflicts with requested grade {sem.grade}"
        )
    entries: dict[str, Any] = {}
    for key, value in doc["entries"].items():
        if not isinstance(key, str) or not key:
            raise InputError(f"{where}: bad entry key {key!r}")
        entries[key] = _parse_value(value, sem, f"{where}:{key}")
    return sem, entries


def _split_pair(key: str, where: str) -> tuple[str, str]:
    parts = key.split("|")
    if len(parts) != 2 or not all(parts):
        raise InputError(f"{where}: key {key!r} is not of the form 'a|b'")
    return parts[0], parts[1]


def family_to_kleisli(
    src: RelationalStructure,
    dst: RelationalStructure,
    sem: Semiring,
    entries: Mapping[str, Any],
    where: str = "family",
) -> KleisliMap:
    table_values: dict[str, dict[str, Any]] = {a: {} for a in src.universe}
    for key, value in entries.items():
        a, b = _split_pair(key, where)
        if a not in table_values:
            raise InputError(f"{where}: {a!r} is not a domain point")
        if b not in dst.universe:
            raise InputError(f"{where}: {b!r} is not a codomain point")
        table_values[a][b] = value
    try:
        table = {
            a: Distribution(sem, dst.universe, values)
            for a, values in table_values.items()
        }
        return KleisliMap(src, dst, sem, table)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def family_to_qhom(
    src: RelationalStructure,
    dst: RelationalStructure,
    grade: int,
    entries: Mapping[str, Any],
    tol: float,
    where: str = "family",
) -> QuantumHomomorphism:
    family: dict[tuple[str, str], np.ndarray] = {}
    for key, value in entries.items():
        v, w = _split_pair(key, where)
        family[(v, w)] = value
    missing = [
        (v, w)
        for v in src.universe
        for w in dst.universe
        if (v, w) not in family
    ]
    for v, w in missing:
        family[(v, w)] = np.zeros((grade, grade), dtype=complex)
    try:
        return QuantumHomomorphism(src, dst, grade, family, tol)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def family_to_state(
    s: RelationalStructure,
    sem: Semiring,
    entries: Mapping[str, Any],
    where: str = "state",
) -> State:
    for key in entries:
        if key not in s.universe:
            raise InputError(f"{where}: {key!r} is not a universe point")
    try:
        return State(s, Distribution(sem, s.universe, dict(entries)))
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def family_to_predicate(
    s: RelationalStructure,
    sem: Semiring,
    entries: Mapping[str, Any],
    tol: float | None = None,
    where: str = "predicate",
) -> Predicate:
    for key in entries:
        if key not in s.universe:
            raise InputError(f"{where}: {key!r} is not a universe point")
    try:
        return Predicate(s, sem, dict(entries), tol)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def _parse_state_vector(value: Any, where: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise InputError(f"{where}: 'state' must be a nonempty list of [re, im] pairs")
    out = []
    for cell in value:
        if (
            not isinstance(cell, list)
            or len(cell) != 2
            or not all(isinstance(p, (int, float)) for p in cell)
        ):
            raise InputError(f"{where}: state entries must be [re, im] pairs")
        out.append(complex(cell[0], cell[1]))
    return np.array(out, dtype=complex)


def parse_strategy(
    doc: Any,
    src: RelationalStructure,
    dst: RelationalStructure,
    tol: float,
    where: str = "strategy",
) -> Strategy:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    for field in ("state", "alice", "bob"):
        if field not in doc:
            raise InputError(f"{where}: missing {field!r}")
    psi = _parse_state_vector(doc["state"], where)
    families = {}
    for who in ("alice", "bob"):
        sem, entries = parse_family(
            doc[who], lambda g: ProjectionSemiring(g, tol), f"{where}:{who}"
        )
        family: dict[tuple[str, str], np.ndarray] = {}
        for key, value in entries.items():
            v, w = _split_pair(key, f"{where}:{who}")
            family[(v, w)] = value
        for v in src.universe:
            for w in dst.universe:
                family.setdefault((v, w), np.zeros((sem.dim, sem.dim), dtype=complex))
        families[who] = family
    try:
        return Strategy(src, dst, psi, families["alice"], families["bob"], tol)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def parse_classical_map(
    doc: Any,
    src: RelationalStructure,
    dst: RelationalStructure,
    where: str = "map",
) -> StructureMap:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a flat JSON object")
    mapping = {}
    for key, value in doc.items():
        mapping[_label(key, where)] = _label(value, where)
    try:
        return StructureMap(src, dst, mapping)
    except ValueError as e:
        raise InputError(f"{where}: {e}") from e


def parse_question_dist(
    doc: Any, src: RelationalStructure, where: str = "question-dist"
) -> dict[tuple[str, str], float]:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected a JSON object")
    weights: dict[tuple[str, str], float] = {}
    for key, value in doc.items():
        pair = _split_pair(key, where)
        if pair[0] not in src.universe or pair[1] not in src.universe:
            raise InputError(f"{where}: question {key!r} uses unknown vertices")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InputError(f"{where}: weight at {key!r} must be a number")
        weights[pair] = float(value)
    return weights


def kleisli_to_doc(c: KleisliMap) -> dict:
    entries = {
        f"{a}|{b}": value_to_json(c.semiring, w)
        for a in c.domain.universe
        for b, w in c(a).support.items()
    }
    return {"grade": c.grade, "entries": entries}


def qhom_to_doc(q: QuantumHomomorphism) -> dict:
    sem = ProjectionSemiring(q.grade)
    entries = {}
    for (v, w), m in q.family.items():
        if np.max(np.abs(m)) > 0:
            entries[f"{v}|{w}"] = value_to_json(sem, m)
    return {"grade": q.grade, "entries": entries}


def strategy_to_doc(s: Strategy) -> dict:
    da, db = s.dims
    sa, sb = ProjectionSemiring(da), ProjectionSemiring(db)
    alice = {
        f"{v}|{w}": value_to_json(sa, m)
        for (v, w), m in s.alice.items()
        if np.max(np.abs(m)) > 0
    }
    bob = {
        f"{v}|{w}": value_to_json(sb, m)
        for (v, w), m in s.bob.items()
        if np.max(np.abs(m)) > 0
    }
    return {
        "state": [[float(z.real), float(z.imag)] for z in np.asarray(s.psi)],
        "alice": {"grade": da, "entries": alice},
        "bob": {"grade": db, "entries": bob},
    }


def map_to_doc(f: StructureMap) -> dict:
    return {x: f(x) for x in f.domain.universe}
