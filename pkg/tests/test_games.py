"""Quantum homomorphisms, strategies, and graph game evaluation."""

import itertools

import numpy as np
import pytest

from qeffectus import (
    QuantumHomomorphism,
    Strategy,
    StructureMap,
    block_diagonal_qhom,
    complete_graph,
    cycle_graph,
    evaluate_game,
    qhom_from_classical,
    strategy_from_functions,
    strategy_from_qhom,
    strategy_is_projective,
    verify_perfect_strategy,
    verify_quantum_homomorphism,
)

C5, K2, K3 = cycle_graph(5), complete_graph(2), complete_graph(3)
F_C5K3 = {"v1": "v1", "v2": "v2", "v3": "v1", "v4": "v2", "v5": "v3"}
G_C5K3 = {"v1": "v2", "v2": "v3", "v3": "v2", "v4": "v3", "v5": "v1"}


def test_qhom_constructor_validation():
    with pytest.raises(ValueError):
        QuantumHomomorphism(K2, K2, 0, {})
    fam = {(v, w): np.eye(1) for v in K2.universe for w in K2.universe}
    incomplete = dict(fam)
    del incomplete[("v1", "v1")]
    with pytest.raises(ValueError, match="missing"):
        QuantumHomomorphism(K2, K2, 1, incomplete)
    stray = dict(fam)
    stray[("v1", "v9")] = np.eye(1)
    with pytest.raises(ValueError, match="stray"):
        QuantumHomomorphism(K2, K2, 1, stray)
    wrong_shape = dict(fam)
    wrong_shape[("v1", "v1")] = np.eye(2)
    with pytest.raises(ValueError, match="not"):
        QuantumHomomorphism(K2, K2, 1, wrong_shape)


def test_qhom_requires_graphs():
    from qeffectus import structure

    s = structure(["a"], {"R": (1, [("a",)])})
    with pytest.raises(ValueError):
        QuantumHomomorphism(s, K2, 1, {})


def test_identity_qhom_verifies():
    q = qhom_from_classical(StructureMap(K3, K3, {v: v for v in K3.universe}))
    assert verify_quantum_homomorphism(q)
    assert q.grade == 1


def test_qhom_from_classical_rejects_non_hom():
    bad = StructureMap(K2, K2, {"v1": "v1", "v2": "v1"})
    with pytest.raises(ValueError):
        qhom_from_classical(bad)


def test_all_ones_family_fails_row_condition():
    fam = {(v, w): np.eye(1) for v in K2.universe for w in K2.universe}
    q = QuantumHomomorphism(K2, K2, 1, fam)
    res = verify_quantum_homomorphism(q)
    assert not res
    assert res.condition == "row_sum_not_identity"
    assert res.witness == "v1"


def test_non_projection_entry_fails_first():
    fam = {(v, w): np.eye(1) * 0.5 for v in K2.universe for w in K2.universe}
    q = QuantumHomomorphism(K2, K2, 1, fam)
    res = verify_quantum_homomorphism(q)
    assert not res
    assert res.condition == "entry_not_projection"


def test_contradictory_product_witness():
    f = StructureMap(K2, K2, {"v1": "v1", "v2": "v2"})
    q = qhom_from_classical(f)
    fam = {k: np.asarray(v).copy() for k, v in q.family.items()}
    fam[("v1", "v2")] = np.eye(1)
    fam[("v1", "v1")] = np.zeros((1, 1))
    fam[("v2", "v2")] = np.eye(1)
    broken = QuantumHomomorphism(K2, K2, 1, fam)
    res = verify_quantum_homomorphism(broken)
    assert not res
    assert res.condition == "contradictory_product_nonzero"
    (v1, w1), (v2, w2) = res.witness
    assert (v1 == v2 and w1 != w2) or v1 != v2


def test_block_diagonal_qhom_verifies():
    f = StructureMap(C5, K3, F_C5K3)
    g = StructureMap(C5, K3, G_C5K3)
    q = block_diagonal_qhom([f, g])
    assert q.grade == 2
    assert verify_quantum_homomorphism(q)
    assert np.allclose(q.family[("v1", "v1")], np.diag([1.0, 0.0]))
    assert np.allclose(q.family[("v1", "v2")], np.diag([0.0, 1.0]))


def test_block_diagonal_qhom_rejects_mixed_shapes():
    f = StructureMap(C5, K3, F_C5K3)
    g = StructureMap(K3, K3, {v: v for v in K3.universe})
    with pytest.raises(ValueError):
        block_diagonal_qhom([f, g])
    with pytest.raises(ValueError):
        block_diagonal_qhom([])


def test_grade_two_verifier_matches_scalar_on_embedded_family():
    f = StructureMap(C5, K3, F_C5K3)
    q1 = qhom_from_classical(f, grade=1)
    q2 = qhom_from_classical(f, grade=2)
    assert verify_quantum_homomorphism(q1)
    assert verify_quantum_homomorphism(q2)
    bad = {k: np.asarray(v, dtype=complex).copy() for k, v in q2.family.items()}
    bad[("v1", "v1")] = np.zeros((2, 2))
    res = verify_quantum_homomorphism(QuantumHomomorphism(C5, K3, 2, bad))
    assert not res
    assert res.condition == "row_sum_not_identity"


def test_strategy_from_qhom_round_trip():
    for q in (
        qhom_from_classical(StructureMap(C5, K3, F_C5K3)),
        block_diagonal_qhom(
            [StructureMap(C5, K3, F_C5K3), StructureMap(C5, K3, G_C5K3)]
        ),
    ):
        s = strategy_from_qhom(q)
        assert np.linalg.norm(s.psi) == pytest.approx(1.0)
        assert s.dims == (q.grade, q.grade)
        assert verify_perfect_strategy(s)
        assert strategy_is_projective(s)
        for vw, m in s.bob.items():
            assert np.allclose(m, np.asarray(q.family[vw]).T)


def test_strategy_from_qhom_rejects_invalid():
    fam = {(v, w): np.eye(1) for v in K2.universe for w in K2.universe}
    with pytest.raises(ValueError):
        strategy_from_qhom(QuantumHomomorphism(K2, K2, 1, fam))


def test_strategy_constructor_validation():
    s = strategy_from_functions(K2, K2, {"v1": "v1", "v2": "v2"})
    with pytest.raises(ValueError):
        Strategy(K2, K2, np.ones(2), s.alice, s.bob)
    missing = dict(s.alice)
    del missing[("v1", "v1")]
    with pytest.raises(ValueError):
        Strategy(K2, K2, s.psi, missing, s.bob)


def test_deterministic_identity_strategy_is_perfect():
    s = strategy_from_functions(K2, K2, {"v1": "v1", "v2": "v2"})
    assert verify_perfect_strategy(s)
    ev = evaluate_game(s)
    assert ev.win_probability == 1.0


def test_mismatched_players_fail_same_question():
    f = {"v1": "v1", "v2": "v2", "v3": "v3"}
    g = {"v1": "v1", "v2": "v3", "v3": "v2"}
    s = strategy_from_functions(K3, K3, f, g)
    res = verify_perfect_strategy(s)
    assert not res
    assert res.condition == "same_question_inconsistent"
    v, w1, w2 = res.witness
    assert f[v] != g[v]
    assert (w1, w2) == (f[v], g[v])


def test_non_hom_strategy_fails_adjacency():
    collapse = {v: "v1" for v in K2.universe}
    s = strategy_from_functions(K2, K2, collapse)
    res = verify_perfect_strategy(s)
    assert not res
    assert res.condition == "adjacency_not_preserved"


def test_unnormalized_state_fails_first():
    s = strategy_from_functions(K2, K2, {"v1": "v1", "v2": "v2"})
    bad = Strategy(K2, K2, np.array([2.0]), s.alice, s.bob, tol=1e-9)
    res = verify_perfect_strategy(bad)
    assert not res
    assert res.condition == "state_not_normalized"
    with pytest.raises(ValueError):
        evaluate_game(bad)


def test_k2_to_k1_uniform_value_is_half():
    k1 = complete_graph(1)
    s = strategy_from_functions(K2, k1, {"v1": "v1", "v2": "v1"})
    ev = evaluate_game(s)
    assert ev.win_probability == 0.5
    assert ev.question_weights[("v1", "v2")] == 0.25
    for row in ev.table.values():
        assert sum(row.values()) == pytest.approx(1.0)


def test_evaluate_game_explicit_distribution():
    k1 = complete_graph(1)
    s = strategy_from_functions(K2, k1, {"v1": "v1", "v2": "v1"})
    dist = {("v1", "v1"): 0.5, ("v1", "v2"): 0.5}
    ev = evaluate_game(s, dist)
    assert ev.win_probability == 0.5
    only_equal = {("v1", "v1"): 1.0}
    assert evaluate_game(s, only_equal).win_probability == 1.0


def test_evaluate_game_rejects_bad_distributions():
    s = strategy_from_functions(K2, K2, {"v1": "v1", "v2": "v2"})
    with pytest.raises(ValueError):
        evaluate_game(s, {("v1", "v9"): 1.0})
    with pytest.raises(ValueError):
        evaluate_game(s, {("v1", "v1"): 0.4})
    with pytest.raises(ValueError):
        evaluate_game(s, {("v1", "v1"): 1.5, ("v1", "v2"): -0.5})


def test_quantum_strategy_wins_perfectly():
    q = block_diagonal_qhom(
        [StructureMap(C5, K3, F_C5K3), StructureMap(C5, K3, G_C5K3)]
    )
    s = strategy_from_qhom(q)
    ev = evaluate_game(s)
    assert ev.win_probability == pytest.approx(1.0, abs=1e-9)


def _oracle_value(source, target, fa, fb, weights):
    """Winning probability of a deterministic strategy pair, summed in the
    same question order as evaluate_game."""
    edges_g = source.relations["E"].tuples
    edges_h = target.relations["E"].tuples
    win = 0.0
    for v1 in source.universe:
        for v2 in source.universe:
            w1, w2 = fa[v1], fb[v2]
            wins = True
            if v1 == v2 and w1 != w2:
                wins = False
            if (v1, v2) in edges_g and (w1, w2) not in edges_h:
                wins = False
            if wins:
                win += weights[(v1, v2)]
    return win


def test_deterministic_value_matches_oracle_exactly():
    source, target = cycle_graph(3), K2
    questions = list(itertools.product(source.universe, repeat=2))
    weights = {qp: 1.0 / len(questions) for qp in questions}
    count = 0
    for images_a in itertools.product(target.universe, repeat=source.size):
        fa = dict(zip(source.universe, images_a))
        for images_b in itertools.product(target.universe, repeat=source.size):
            fb = dict(zip(source.universe, images_b))
            s = strategy_from_functions(source, target, fa, fb)
            ev = evaluate_game(s)
            assert ev.win_probability == _oracle_value(source, target, fa, fb, weights)
            count += 1
    assert count == 64


def test_correlation_table_of_deterministic_strategy_is_indicator():
    s = strategy_from_functions(K2, K2, {"v1": "v2", "v2": "v1"})
    ev = evaluate_game(s)
    for (v1, v2), row in ev.table.items():
        for (w1, w2), p in row.items():
            expected = 1.0 if (w1, w2) == ("v2" if v1 == "v1" else "v1", "v2" if v2 == "v1" else "v1") else 0.0
            assert p == expected


def test_strategy_is_projective_detects_non_projections():
    s = strategy_from_functions(K2, K2, {"v1": "v1", "v2": "v2"})
    assert strategy_is_projective(s)
    alice = {k: np.asarray(v, dtype=complex).copy() for k, v in s.alice.items()}
    alice[("v1", "v1")] = np.array([[0.5]])
    alice[("v1", "v2")] = np.array([[0.5]])
    t = Strategy(K2, K2, s.psi, alice, s.bob)
    assert not strategy_is_projective(t)
    assert evaluate_game(t).win_probability == pytest.approx(0.75)
