"""Structures, graphs, structure maps, coproducts, and classical search."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qeffectus import (
    Relation,
    RelationalStructure,
    StructureMap,
    bang,
    complete_graph,
    compose,
    coproduct,
    coproduct_components,
    cycle_graph,
    find_classical_hom,
    graph,
    identity_map,
    initial,
    is_graph,
    is_homomorphism,
    same_signature,
    signature,
    structure,
    sum_map,
    terminal,
)
from qeffectus.rstruct import EDGE, TERMINAL_POINT, cotuple


def test_relation_rejects_bad_arity():
    with pytest.raises(ValueError):
        Relation(0, frozenset())
    with pytest.raises(ValueError):
        Relation(2, frozenset({("a",)}))


def test_structure_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        RelationalStructure(("a", "a"))


def test_structure_rejects_stray_tuple_labels():
    with pytest.raises(ValueError):
        structure(["a"], {"R": (1, [("b",)])})


def test_structure_constructor_and_signature():
    s = structure(["a", "b"], {"R": (2, [("a", "b")]), "S": (1, [("a",)])})
    assert s.size == 2
    assert signature(s) == {"R": 2, "S": 1}
    assert s.relation("R").tuples == frozenset({("a", "b")})
    t = structure(["x"], {"R": (2, []), "S": (1, [])})
    assert same_signature(s, t)
    assert not same_signature(s, structure(["x"], {"R": (2, [])}))


def test_graph_symmetrizes_edges():
    g = graph(["a", "b", "c"], [("a", "b")])
    assert g.relation(EDGE).tuples == frozenset({("a", "b"), ("b", "a")})
    assert is_graph(g)


def test_graph_rejects_loops():
    with pytest.raises(ValueError):
        graph(["a"], [("a", "a")])


def test_is_graph_rejects_asymmetric_relation():
    s = structure(["a", "b"], {EDGE: (2, [("a", "b")])})
    assert not is_graph(s)
    assert not is_graph(structure(["a"], {"R": (2, [])}))


def test_complete_graph_edge_count():
    for n in range(1, 6):
        k = complete_graph(n)
        assert k.size == n
        assert len(k.relation(EDGE).tuples) == n * (n - 1)


def test_cycle_graph():
    c = cycle_graph(5)
    assert len(c.relation(EDGE).tuples) == 10
    assert cycle_graph(3).relation(EDGE).tuples == complete_graph(3).relation(EDGE).tuples
    with pytest.raises(ValueError):
        cycle_graph(2)


def test_structure_map_totality():
    k2 = complete_graph(2)
    with pytest.raises(ValueError):
        StructureMap(k2, k2, {"v1": "v1"})
    with pytest.raises(ValueError):
        StructureMap(k2, k2, {"v1": "v1", "v2": "v9"})
    f = StructureMap(k2, k2, {"v1": "v2", "v2": "v1"})
    assert f("v1") == "v2"


def test_identity_and_compose():
    k3 = complete_graph(3)
    f = StructureMap(k3, k3, {"v1": "v2", "v2": "v3", "v3": "v1"})
    assert compose(f, identity_map(k3)).mapping == f.mapping
    assert compose(identity_map(k3), f).mapping == f.mapping
    ff = compose(f, f)
    assert ff("v1") == "v3"
    with pytest.raises(ValueError):
        compose(f, StructureMap(complete_graph(2), complete_graph(2), {"v1": "v1", "v2": "v2"}))


def test_is_homomorphism_accepts_proper_coloring():
    c5, k3 = cycle_graph(5), complete_graph(3)
    f = StructureMap(c5, k3, {"v1": "v1", "v2": "v2", "v3": "v1", "v4": "v2", "v5": "v3"})
    assert is_homomorphism(f)


def test_is_homomorphism_witness():
    c5, k3 = cycle_graph(5), complete_graph(3)
    f = StructureMap(c5, k3, {x: "v1" for x in c5.universe})
    res = is_homomorphism(f)
    assert not res
    assert res.condition == "relation_not_preserved"
    name, t, image = res.witness
    assert name == EDGE
    assert t in c5.relation(EDGE).tuples
    assert image == ("v1", "v1")


def test_is_homomorphism_rejects_signature_mismatch():
    s = structure(["a"], {"R": (1, [])})
    t = structure(["b"], {"S": (1, [])})
    with pytest.raises(ValueError):
        is_homomorphism(StructureMap(s, t, {"a": "b"}))


def test_coproduct_tags_points():
    k2, k3 = complete_graph(2), complete_graph(3)
    total, k1, kk2 = coproduct(k2, k3)
    assert total.universe == (("v1", 1), ("v2", 1), ("v1", 2), ("v2", 2), ("v3", 2))
    assert len(total.relation(EDGE).tuples) == 2 + 6
    assert is_homomorphism(k1) and is_homomorphism(kk2)
    assert k1("v1") == ("v1", 1) and kk2("v1") == ("v1", 2)


def test_coproduct_components_round_trip():
    k2, c4 = complete_graph(2), cycle_graph(4)
    total, _, _ = coproduct(k2, c4)
    left, right = coproduct_components(total)
    assert left == k2
    assert right == c4


def test_coproduct_components_rejects_untagged():
    with pytest.raises(ValueError):
        coproduct_components(complete_graph(2))
    mixed = structure(
        [("a", 1), ("b", 2)], {EDGE: (2, [(("a", 1), ("b", 2))])}
    )
    with pytest.raises(ValueError):
        coproduct_components(mixed)


def test_cotuple_acts_tagwise():
    k2, k3 = complete_graph(2), complete_graph(3)
    f = StructureMap(k2, k3, {"v1": "v1", "v2": "v2"})
    g = StructureMap(k3, k3, {"v1": "v3", "v2": "v1", "v3": "v2"})
    h = cotuple(f, g)
    assert h(("v1", 1)) == "v1"
    assert h(("v1", 2)) == "v3"
    with pytest.raises(ValueError):
        cotuple(f, StructureMap(k2, k2, {"v1": "v1", "v2": "v2"}))


def test_cotuple_of_coprojections_is_identity():
    k2, k3 = complete_graph(2), complete_graph(3)
    total, k1, kk2 = coproduct(k2, k3)
    assert cotuple(k1, kk2).mapping == identity_map(total).mapping


def test_sum_map_acts_tagwise():
    k2, k3 = complete_graph(2), complete_graph(3)
    f = StructureMap(k2, k2, {"v1": "v2", "v2": "v1"})
    g = StructureMap(k3, k3, {"v1": "v1", "v2": "v3", "v3": "v2"})
    h = sum_map(f, g)
    assert h(("v1", 1)) == ("v2", 1)
    assert h(("v2", 2)) == ("v3", 2)
    assert is_homomorphism(h)


def test_terminal_and_bang():
    c5 = cycle_graph(5)
    t = terminal(signature(c5))
    assert t.universe == (TERMINAL_POINT,)
    assert t.relation(EDGE).tuples == frozenset({(TERMINAL_POINT, TERMINAL_POINT)})
    b = bang(c5)
    assert is_homomorphism(b)
    assert all(b(x) == TERMINAL_POINT for x in c5.universe)


def test_initial_is_empty():
    s = initial({"R": 3})
    assert s.universe == ()
    assert s.relation("R").tuples == frozenset()


def all_small_graphs(max_vertices):
    out = []
    for n in range(1, max_vertices + 1):
        verts = [f"v{i}" for i in range(1, n + 1)]
        slots = list(itertools.combinations(verts, 2))
        for mask in itertools.product([False, True], repeat=len(slots)):
            out.append(graph(verts, [e for e, keep in zip(slots, mask) if keep]))
    return out


def brute_force_has_hom(a, b):
    for images in itertools.product(b.universe, repeat=a.size):
        f = StructureMap(a, b, dict(zip(a.universe, images)))
        if is_homomorphism(f):
            return True
    return False


def test_find_classical_hom_matches_brute_force():
    graphs = all_small_graphs(3)
    assert len(graphs) == 1 + 2 + 8
    for a in graphs:
        for b in graphs:
            found = find_classical_hom(a, b)
            if found is None:
                assert not brute_force_has_hom(a, b)
            else:
                assert found.domain == a and found.codomain == b
                assert is_homomorphism(found)


def test_find_classical_hom_known_cases():
    assert find_classical_hom(cycle_graph(5), complete_graph(3)) is not None
    assert find_classical_hom(cycle_graph(5), complete_graph(2)) is None
    assert find_classical_hom(complete_graph(4), complete_graph(3)) is None
    assert find_classical_hom(complete_graph(3), cycle_graph(6)) is None
    assert find_classical_hom(cycle_graph(6), complete_graph(2)) is not None


def test_find_classical_hom_is_deterministic():
    a, b = cycle_graph(5), complete_graph(3)
    first = find_classical_hom(a, b)
    second = find_classical_hom(a, b)
    assert first.mapping == second.mapping


def _random_edges(draw, verts):
    slots = list(itertools.combinations(verts, 2))
    if not slots:
        return set()
    return draw(st.sets(st.sampled_from(slots)))


@st.composite
def small_graph_and_map(draw):
    n = draw(st.integers(min_value=1, max_value=4))
    m = draw(st.integers(min_value=1, max_value=4))
    verts_a = [f"a{i}" for i in range(n)]
    verts_b = [f"b{i}" for i in range(m)]
    ga = graph(verts_a, _random_edges(draw, verts_a))
    gb = graph(verts_b, _random_edges(draw, verts_b))
    mapping = {x: draw(st.sampled_from(verts_b)) for x in verts_a}
    return StructureMap(ga, gb, mapping)


@settings(max_examples=200, deadline=None)
@given(small_graph_and_map())
def test_is_homomorphism_matches_definition(f):
    edges = f.domain.relation(EDGE).tuples
    target = f.codomain.relation(EDGE).tuples
    expected = all((f(u), f(v)) in target for u, v in edges)
    assert bool(is_homomorphism(f)) == expected
