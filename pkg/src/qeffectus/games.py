"""Quantum graph homomorphisms and two-player graph game strategies.

A quantum homomorphism from G to H at dimension d assigns a d x d
projection E[v, w] to every vertex pair, with each row (fixed v) resolving
the identity and with products vanishing across contradictory pairs: same
question with different answers, or adjacent questions with non-adjacent
answers.

A strategy for the (G, H) game is a shared state plus one measurement
family per player.  Correlations are ``psi* (E tensor F) psi``; a strategy
is perfect when contradictory answer pairs have zero correlation.  Every
verified quantum homomorphism yields a perfect strategy on the maximally
entangled state, with the second player using transposed projections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Mapping, Sequence

import numpy as np

from .linalg import DEFAULT_TOL, CheckResult, identity, max_norm, zero_matrix
from .rstruct import EDGE, RelationalStructure, StructureMap, is_graph, is_homomorphism

__all__ = [
    "GameEvaluation",
    "QuantumHomomorphism",
    "Strategy",
    "block_diagonal_qhom",
    "evaluate_game",
    "qhom_from_classical",
    "strategy_from_functions",
    "strategy_from_qhom",
    "strategy_is_projective",
    "verify_perfect_strategy",
    "verify_quantum_homomorphism",
]

Label = Hashable
VertexPair = tuple[Label, Label]


@lru_cache(maxsize=None)
def _graph_key_ok(key) -> bool:
    universe, edges = key
    for u, v in edges:
        if u == v or (v, u) not in edges:
            return False
    return set(u for e in edges for u in e) <= set(universe)


def _require_graph(s: RelationalStructure, role: str) -> None:
    if (
        set(s.relations) != {EDGE}
        or s.relations[EDGE].arity != 2
        or not _graph_key_ok(_graph_key(s))
    ):
        raise ValueError(f"{role} must be a graph (symmetric, irreflexive 'E')")


@dataclass(frozen=True, eq=False)
class QuantumHomomorphism:
    """A candidate d-dimensional homomorphism: one matrix per vertex pair.

    The constructor checks only shape and completeness; the defining
    conditions are checked by :func:`verify_quantum_homomorphism`.
    """

    source: RelationalStructure
    target: RelationalStructure
    grade: int
    family: Mapping[VertexPair, np.ndarray]
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        _require_graph(self.source, "source")
        _require_graph(self.target, "target")
        if self.grade < 1:
            raise ValueError("grade must be at least 1")
        expected = _expected_pairs(self.source.universe, self.target.universe)
        if frozenset(self.family) != expected:
            for pair in sorted(expected, key=repr):
                if pair not in self.family:
                    raise ValueError(f"family is missing the entry for {pair!r}")
            stray = next(iter(frozenset(self.family) - expected))
            raise ValueError(f"family has a stray entry {stray!r}")
        shape = (self.grade, self.grade)
        for pair, m in self.family.items():
            if getattr(m, "shape", None) != shape and np.shape(m) != shape:
                raise ValueError(f"entry {pair!r} is not {shape}")


def _graph_key(s: RelationalStructure):
    return (s.universe, s.relations[EDGE].tuples)


@lru_cache(maxsize=None)
def _expected_pairs(source_universe: tuple, target_universe: tuple) -> frozenset:
    return frozenset((v, w) for v in source_universe for w in target_universe)


@lru_cache(maxsize=None)
def _pair_mask(source_key, target_key) -> np.ndarray:
    """Boolean mask over (v, w, v', w') where a vanishing product is
    required: same question and different answers, or adjacent questions
    and non-adjacent answers."""
    univ_g, edges_g = source_key
    univ_h, edges_h = target_key
    ng, nh = len(univ_g), len(univ_h)
    ig = {v: i for i, v in enumerate(univ_g)}
    ih = {w: i for i, w in enumerate(univ_h)}
    adj_g = np.zeros((ng, ng), dtype=bool)
    for u, v in edges_g:
        adj_g[ig[u], ig[v]] = True
    adj_h = np.zeros((nh, nh), dtype=bool)
    for u, v in edges_h:
        adj_h[ih[u], ih[v]] = True
    eq_v = np.eye(ng, dtype=bool)
    eq_w = np.eye(nh, dtype=bool)
    same_q = eq_v[:, None, :, None] & ~eq_w[None, :, None, :]
    adjacent = adj_g[:, None, :, None] & ~adj_h[None, :, None, :]
    return same_q | adjacent


@lru_cache(maxsize=None)
def _pair_index_list(source_key, target_key) -> tuple[tuple[int, int], ...]:
    """Flat (v*nh+w, v'*nh+w') index pairs where the mask holds."""
    mask = _pair_mask(source_key, target_key)
    nh = len(target_key[0])
    return tuple(
        (iv * nh + iw, ix * nh + iy) for iv, iw, ix, iy in np.argwhere(mask).tolist()
    )


@lru_cache(maxsize=None)
def _pair_index_set(source_key, target_key) -> frozenset:
    return frozenset(_pair_index_list(source_key, target_key))


def verify_quantum_homomorphism(
    q: QuantumHomomorphism, tol: float | None = None
) -> CheckResult:
    """Check the three defining conditions of a quantum homomorphism.

    1. every entry is a projection;
    2. every row sums to the identity;
    3. entries at contradictory vertex pairs have vanishing product.

    Returns the first failing condition with its witness and residual.
    """
    if tol is None:
        tol = q.tol
    tol = float(tol)
    gkey, hkey = _graph_key(q.source), _graph_key(q.target)
    if q.grade == 1:
        return _verify_qhom_scalar(q, tol, gkey, hkey)

    V, W = q.source.universe, q.target.universe
    A = np.array(
        [[np.asarray(q.family[(v, w)], dtype=complex) for w in W] for v in V]
    )
    herm = np.abs(np.conj(np.swapaxes(A, -1, -2)) - A).max(axis=(-1, -2))
    idem = np.abs(np.einsum("vwij,vwjk->vwik", A, A) - A).max(axis=(-1, -2))
    defect = np.maximum(herm, idem)
    if defect.max() > tol:
        iv, iw = np.unravel_index(int(defect.argmax()), defect.shape)
        return CheckResult(
            False, "entry_not_projection", (V[iv], W[iw]), float(defect.max())
        )
    rows = A.sum(axis=1)
    row_defect = np.abs(rows - identity(q.grade)).max(axis=(-1, -2))
    if row_defect.max() > tol:
        iv = int(row_defect.argmax())
        return CheckResult(
            False, "row_sum_not_identity", V[iv], float(row_defect.max())
        )
    products = np.einsum("vwij,xyjk->vwxyik", A, A)
    norms = np.abs(products).max(axis=(-1, -2))
    mask = _pair_mask(gkey, hkey)
    masked = np.where(mask, norms, 0.0)
    if masked.max() > tol:
        iv, iw, ix, iy = np.unravel_index(int(masked.argmax()), masked.shape)
        return CheckResult(
            False,
            "contradictory_product_nonzero",
            ((V[iv], W[iw]), (V[ix], W[iy])),
            float(masked.max()),
        )
    return CheckResult(True)


def _verify_qhom_scalar(
    q: QuantumHomomorphism, tol: float, gkey, hkey
) -> CheckResult:
    """Dimension-1 evaluation of the same conditions in scalar arithmetic.

    Condition (3) only visits entries of modulus above tol/2: once every
    entry passed the projection check its modulus is at most 1 + tol, so a
    product with a factor below the cut stays below tol.  The first
    violation in index order is the same witness the masked scan returns.
    """
    V, W = q.source.universe, q.target.universe
    fam = q.family
    vals = []
    for v in V:
        for w in W:
            m = fam[(v, w)]
            try:
                vals.append(m.item())
            except AttributeError:
                vals.append(complex(np.asarray(m).reshape(())))
    nh = len(W)
    for i, e in enumerate(vals):
        defect = max(abs(e.conjugate() - e), abs(e * e - e))
        if defect > tol:
            return CheckResult(
                False, "entry_not_projection", (V[i // nh], W[i % nh]), defect
            )
    for i, v in enumerate(V):
        row = sum(vals[i * nh : (i + 1) * nh])
        if abs(row - 1.0) > tol:
            return CheckResult(False, "row_sum_not_identity", v, abs(row - 1.0))
    forbidden = _pair_index_set(gkey, hkey)
    cut = tol * 0.5
    live = [i for i, e in enumerate(vals) if abs(e) > cut]
    for i1 in live:
        e1 = vals[i1]
        for i2 in live:
            if (i1, i2) in forbidden:
                r = abs(e1 * vals[i2])
                if r > tol:
                    return CheckResult(
                        False,
                        "contradictory_product_nonzero",
                        ((V[i1 // nh], W[i1 % nh]), (V[i2 // nh], W[i2 % nh])),
                        r,
                    )
    return CheckResult(True)


def qhom_from_classical(f: StructureMap, grade: int = 1) -> QuantumHomomorphism:
    """Lift a classical homomorphism: the (v, w) entry is the identity when
    w = f(v) and zero otherwise."""
    check = is_homomorphism(f)
    if not check:
        raise ValueError(f"not a homomorphism: witness {check.witness!r}")
    one, zero = identity(grade), zero_matrix(grade)
    family = {
        (v, w): (one if f(v) == w else zero)
        for v in f.domain.universe
        for w in f.codomain.universe
    }
    return QuantumHomomorphism(f.domain, f.codomain, grade, family)


def block_diagonal_qhom(maps: Sequence[StructureMap]) -> QuantumHomomorphism:
    """Stack classical homomorphisms on the diagonal, one dimension each."""
    if not maps:
        raise ValueError("need at least one classical homomorphism")
    first = maps[0]
    for f in maps:
        if f.domain != first.domain or f.codomain != first.codomain:
            raise ValueError("all maps must share source and target")
        check = is_homomorphism(f)
        if not check:
            raise ValueError(f"not a homomorphism: witness {check.witness!r}")
    d = len(maps)
    family = {}
    for v in first.domain.universe:
        for w in first.codomain.universe:
            family[(v, w)] = np.diag(
                [1.0 + 0j if f(v) == w else 0.0 + 0j for f in maps]
            )
    return QuantumHomomorphism(first.domain, first.codomain, d, family)


# ---------------------------------------------------------------------------
# strategies and games
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Strategy:
    """Shared-state strategy data for the (source, target) graph game.

    ``psi`` is the joint state of length dA * dB; ``alice`` and ``bob`` each
    assign one matrix per (question, answer) pair.  Nothing beyond shapes
    and completeness is enforced here: perfection is a property checked by
    :func:`verify_perfect_strategy`, and losing strategies are legitimate
    inputs to :func:`evaluate_game`.
    """

    source: RelationalStructure
    target: RelationalStructure
    psi: np.ndarray
    alice: Mapping[VertexPair, np.ndarray]
    bob: Mapping[VertexPair, np.ndarray]
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        _require_graph(self.source, "source")
        _require_graph(self.target, "target")
        pairs = [(v, w) for v in self.source.universe for w in self.target.universe]
        for fam, who in ((self.alice, "alice"), (self.bob, "bob")):
            for vw in pairs:
                if vw not in fam:
                    raise ValueError(f"{who} family is missing {vw!r}")
        psi = np.asarray(self.psi, dtype=complex).reshape(-1)
        object.__setattr__(self, "psi", psi)
        da, db = self.dims
        if len(psi) != da * db:
            raise ValueError(
                f"state length {len(psi)} is not alice dim {da} times bob dim {db}"
            )
        for fam, dim, who in ((self.alice, da, "alice"), (self.bob, db, "bob")):
            for vw in pairs:
                if np.shape(fam[vw]) != (dim, dim):
                    raise ValueError(f"{who} entry {vw!r} is not {dim}x{dim}")

    @property
    def dims(self) -> tuple[int, int]:
        v0 = self.source.universe[0]
        w0 = self.target.universe[0]
        return (
            int(np.shape(self.alice[(v0, w0)])[0]),
            int(np.shape(self.bob[(v0, w0)])[0]),
        )


def _correlation(strategy: Strategy, e: np.ndarray, f: np.ndarray) -> complex:
    """psi* (e tensor f) psi, computed as <Psi, e Psi f^T> on the reshaped
    state matrix to avoid forming the Kronecker product."""
    da, db = strategy.dims
    m = strategy.psi.reshape(da, db)
    return complex(np.vdot(m, np.asarray(e, dtype=complex) @ m @ np.asarray(f, dtype=complex).T))


def strategy_from_qhom(q: QuantumHomomorphism) -> Strategy:
    """Perfect strategy induced by a verified quantum homomorphism.

    Uses the maximally entangled state on two registers of dimension d;
    the second player's projections are entrywise transposes of the first
    player's, which makes every required correlation a normalized trace of
    a vanishing product.
    """
    check = verify_quantum_homomorphism(q)
    if not check:
        raise ValueError(
            f"not a quantum homomorphism: {check.condition} at {check.witness!r}"
        )
    d = q.grade
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        psi[i * d + i] = 1.0
    psi /= np.sqrt(d)
    alice = {vw: np.asarray(m, dtype=complex).copy() for vw, m in q.family.items()}
    bob = {vw: np.asarray(m, dtype=complex).T.copy() for vw, m in q.family.items()}
    return Strategy(q.source, q.target, psi, alice, bob, q.tol)


def strategy_from_functions(
    source: RelationalStructure,
    target: RelationalStructure,
    answer_a: Mapping[Label, Label],
    answer_b: Mapping[Label, Label] | None = None,
) -> Strategy:
    """Deterministic one-dimensional strategy: each player answers by a
    fixed function of their question."""
    if answer_b is None:
        answer_b = answer_a
    one = np.ones((1, 1), dtype=complex)
    zero = np.zeros((1, 1), dtype=complex)
    alice = {
        (v, w): (one if answer_a[v] == w else zero)
        for v in source.universe
        for w in target.universe
    }
    bob = {
        (v, w): (one if answer_b[v] == w else zero)
        for v in source.universe
        for w in target.universe
    }
    return Strategy(source, target, np.ones(1, dtype=complex), alice, bob)


def verify_perfect_strategy(s: Strategy, tol: float | None = None) -> CheckResult:
    """Check perfection: normalized state, rows resolving the identity for
    both players, and zero correlation on contradictory answer pairs.

    Projectivity of the families is deliberately not required; use
    :func:`strategy_is_projective` when an input claims it.
    """
    if tol is None:
        tol = s.tol
    tol = float(tol)
    da, db = s.dims
    norm_defect = abs(float(np.linalg.norm(s.psi)) - 1.0)
    if norm_defect > tol:
        return CheckResult(False, "state_not_normalized", None, norm_defect)
    V, W = s.source.universe, s.target.universe
    for fam, dim, who in ((s.alice, da, "alice"), (s.bob, db, "bob")):
        eye = identity(dim)
        for v in V:
            row = sum(np.asarray(fam[(v, w)], dtype=complex) for w in W)
            defect = max_norm(row - eye)
            if defect > tol:
                return CheckResult(False, f"{who}_row_sum_not_identity", v, defect)
    for v in V:
        for w1, w2 in itertools.permutations(W, 2):
            r = abs(_correlation(s, s.alice[(v, w1)], s.bob[(v, w2)]))
            if r > tol:
                return CheckResult(
                    False, "same_question_inconsistent", (v, w1, w2), r
                )
    edges_g = s.source.relations[EDGE].tuples
    edges_h = s.target.relations[EDGE].tuples
    for v1, v2 in edges_g:
        for w1 in W:
            for w2 in W:
                if (w1, w2) in edges_h:
                    continue
                r = abs(_correlation(s, s.alice[(v1, w1)], s.bob[(v2, w2)]))
                if r > tol:
                    return CheckResult(
                        False, "adjacency_not_preserved", ((v1, w1), (v2, w2)), r
                    )
    return CheckResult(True)


def strategy_is_projective(s: Strategy, tol: float | None = None) -> bool:
    """Whether both families consist of projections (not required by
    perfection, but true for homomorphism-derived strategies)."""
    from .linalg import is_projection

    if tol is None:
        tol = s.tol
    return all(
        is_projection(np.asarray(m, dtype=complex), tol)
        for fam in (s.alice, s.bob)
        for m in fam.values()
    )


@dataclass(frozen=True, eq=False)
class GameEvaluation:
    """Correlation table and winning probability of a strategy.

    ``table[(v1, v2)][(w1, w2)]`` is the (real) probability of the answer
    pair given the question pair; rows sum to one.  The winning probability
    averages the winning answer mass under the question distribution.
    """

    question_weights: Mapping[VertexPair, float]
    table: Mapping[VertexPair, Mapping[VertexPair, float]]
    win_probability: float


def evaluate_game(
    s: Strategy,
    question_dist: Mapping[VertexPair, float] | None = None,
    tol: float | None = None,
) -> GameEvaluation:
    """Evaluate a strategy on the (source, target) graph game.

    Answers win when equal questions receive equal answers and adjacent
    questions receive adjacent answers.  The question distribution defaults
    to uniform over all ordered vertex pairs.  Raises when the strategy is
    malformed (rows not resolving the identity, unnormalized state) or when
    a correlation comes out non-real or negative beyond ``tol``.
    """
    if tol is None:
        tol = s.tol
    tol = float(tol)
    da, db = s.dims
    if abs(float(np.linalg.norm(s.psi)) - 1.0) > tol:
        raise ValueError("malformed strategy: state is not normalized")
    V, W = s.source.universe, s.target.universe
    for fam, dim, who in ((s.alice, da, "alice"), (s.bob, db, "bob")):
        eye = identity(dim)
        for v in V:
            row = sum(np.asarray(fam[(v, w)], dtype=complex) for w in W)
            if max_norm(row - eye) > tol:
                raise ValueError(
                    f"malformed strategy: {who} row at {v!r} does not resolve identity"
                )
    questions = list(itertools.product(V, V))
    if question_dist is None:
        weight = 1.0 / len(questions)
        weights = {qp: weight for qp in questions}
    else:
        stray = set(question_dist) - set(questions)
        if stray:
            raise ValueError(f"question weight on unknown pair {next(iter(stray))!r}")
        weights = {qp: float(question_dist.get(qp, 0.0)) for qp in questions}
        if any(w < -tol for w in weights.values()):
            raise ValueError("question weights must be nonnegative")
        total = sum(weights.values())
        if abs(total - 1.0) > tol:
            raise ValueError(f"question weights sum to {total}, not 1")
    edges_g = s.source.relations[EDGE].tuples
    edges_h = s.target.relations[EDGE].tuples
    table: dict[VertexPair, dict[VertexPair, float]] = {}
    win = 0.0
    for v1, v2 in questions:
        row: dict[VertexPair, float] = {}
        row_sum = 0.0
        win_mass = 0.0
        for w1 in W:
            for w2 in W:
                corr = _correlation(s, s.alice[(v1, w1)], s.bob[(v2, w2)])
                if abs(corr.imag) > tol:
                    raise ValueError(
                        f"correlation at {((v1, v2), (w1, w2))!r} is not real"
                    )
                p = corr.real
                if p < -tol:
                    raise ValueError(
                        f"correlation at {((v1, v2), (w1, w2))!r} is negative"
                    )
                row[(w1, w2)] = p
                row_sum += p
                wins = True
                if v1 == v2 and w1 != w2:
                    wins = False
                if (v1, v2) in edges_g and (w1, w2) not in edges_h:
                    wins = False
                if wins:
                    win_mass += p
        if abs(row_sum - 1.0) > tol:
            raise ValueError(
                f"correlations for question {(v1, v2)!r} sum to {row_sum}, not 1"
            )
        table[(v1, v2)] = row
        win += weights[(v1, v2)] * win_mass
    return GameEvaluation(weights, table, win)
