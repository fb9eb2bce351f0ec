import itertools

import pytest
from hypothesis import given, strategies as st

from funcgraph.canon import (DUMMY, GENERAL, QUADRATIC, CanonLabel, GraphLabel,
                             LabelTrie, component_units, from_ascii, is_isomorphic,
                             label_graph, label_tree_general, label_tree_quadratic,
                             max_rotation_naive, max_rotation_start, pack_symbols,
                             rotate_max, unpack_symbols)
from funcgraph.errors import ShapeViolation
from funcgraph.graph import FunctionalGraph, decompose, graph_from_table

from oracles import brute_isomorphic, conjugate, naive_canonical

BINARY_EXAMPLE = {"A": ["B", "E"], "B": ["C", "D"], "E": ["F", "I"], "F": ["G", "H"]}
GENERAL_EXAMPLE = {"A": ["B", "C", "F"], "C": ["D", "E"], "F": ["G"]}


def test_worked_example_trees():
    assert label_tree_quadratic("A", BINARY_EXAMPLE).symbols == "111000100"
    assert label_tree_general("A", GENERAL_EXAMPLE).symbols == "11101001100100"


def test_tree_label_small_cases():
    assert label_tree_quadratic(0, {}).symbols == "0"
    assert label_tree_general(0, {}).symbols == "0"
    assert label_tree_general(0, {0: [1]}).symbols == "1100"
    # cycle vertex 1 of X^2 over F_5: child 4 with leaves 2, 3
    assert label_tree_quadratic(1, {1: [4], 4: [2, 3]}).symbols == "1100"


def test_quadratic_dummy_rules():
    assert label_tree_quadratic(0, {0: [1, 2], 1: [3]}).symbols == "110" + DUMMY + "0"
    with pytest.raises(ShapeViolation):
        label_tree_quadratic(0, {0: [1, 2], 1: [3], 2: [4]})
    with pytest.raises(ShapeViolation):
        label_tree_quadratic(0, {0: [1, 2, 3]})


def test_ascii_form():
    lab = CanonLabel(from_ascii("10d"), QUADRATIC)
    assert lab.symbols == "10" + DUMMY
    assert lab.ascii() == "10d"
    with pytest.raises(ValueError):
        from_ascii("102")


def test_component_labels_quadratic():
    G = graph_from_table([1, 2, 0, 0, 2])
    D = decompose(G)
    assert component_units(D.components[0], QUADRATIC) in (
        ["10", "0", "10"], ["0", "10", "10"], ["10", "10", "0"])
    assert label_graph(G, QUADRATIC).components == ("10100",)
    assert set(label_graph(graph_from_table([0, 1, 4, 4, 1]), QUADRATIC).components) == {"0", "1100"}


def test_component_labels_general():
    assert label_graph(graph_from_table([1, 2, 0]), GENERAL).components == ("000",)
    assert label_graph(graph_from_table([0, 0, 0]), GENERAL).components == ("110100",)
    lab = label_graph(graph_from_table([1, 2, 0, 0, 2]), GENERAL)
    assert lab.components == ("110011000",)
    assert lab.ascii() == "110011000"


def test_pure_cycle_is_all_zero():
    for k in range(1, 12):
        G = graph_from_table([(i + 1) % k for i in range(k)])
        assert label_graph(G, GENERAL).components == ("0" * k,)


def test_distinct_quadratics_over_f5():
    from funcgraph.field import field
    from funcgraph.graph import graph_from_poly
    from funcgraph.polyring import Poly
    F = field(5)
    labels = {label_graph(graph_from_poly(F, Poly(F, [a, 0, 1])), QUADRATIC) for a in range(5)}
    assert len(labels) == 5


def test_identity_label():
    lab = label_graph(graph_from_table([0, 1, 2]), GENERAL)
    assert lab.components == ("0", "0", "0")


def test_quadratic_falls_back_on_even_order():
    lab = label_graph(graph_from_table([1, 0]), QUADRATIC)
    assert lab.mode == GENERAL and lab.fallback


def test_rotation_examples():
    assert max_rotation_start([0, 2, 1, 2]) == 1
    assert max_rotation_start([1, 1, 1]) == 0
    assert rotate_max(["0", "10", "10"]) == "10100"


@given(st.lists(st.integers(0, 3), min_size=1, max_size=30))
def test_linear_rotation_matches_naive(seq):
    units = [str(x) for x in seq]
    n = len(seq)
    i = max_rotation_start(seq)
    best = max(tuple(seq[k:] + seq[:k]) for k in range(n))
    assert tuple(seq[i:] + seq[:i]) == best
    assert i == min(k for k in range(n) if tuple(seq[k:] + seq[:k]) == best)
    assert rotate_max(units) == rotate_max(units, naive=True)


@given(st.lists(st.sampled_from(["0", "10", "1100", "110100", "111000"]), min_size=1, max_size=12))
def test_unit_rotation_matches_string_rotation(units):
    # prefix-free units: unit-rank order equals string order of rotations
    assert rotate_max(units) == "".join(units[max_rotation_naive(units):]) + "".join(
        units[:max_rotation_naive(units)])


@given(st.text(alphabet="10.", max_size=40))
def test_pack_roundtrip(s):
    data = pack_symbols(s)
    assert unpack_symbols(data) == (s, len(data))


def test_graph_label_packed_roundtrip():
    lab = label_graph(graph_from_table([0, 1, 4, 4, 1]), QUADRATIC)
    again = GraphLabel.from_packed(lab.packed())
    assert again == lab and again.hex() == lab.hex()


def test_trie_counts():
    t = LabelTrie()
    for s in ["10100", "0", "0", "1100"]:
        t.insert(s)
    assert t.count("0") == 2 and t.total == 4
    assert t.match("0") and t.match("0") and not t.match("0")
    assert not t.match("111")
    assert t.match("10100") and t.match("1100")
    assert t.all_zero()


def test_trie_strict_rejects_prefix():
    t = LabelTrie()
    t.insert("1100", strict=True)
    with pytest.raises(ValueError):
        t.insert("11", strict=True)
    with pytest.raises(ValueError):
        t.insert("110010", strict=True)


def test_isomorphism_examples():
    G = graph_from_table([1, 2, 0, 0, 2])
    assert is_isomorphic(G, G)
    assert not is_isomorphic(graph_from_table([1, 2, 0]), graph_from_table([0, 1, 2]))
    assert not is_isomorphic(graph_from_table([0]), graph_from_table([0, 0]))


def test_unique_isomorphic_pair_over_f17():
    from funcgraph.field import field
    from funcgraph.graph import graph_from_poly
    from funcgraph.polyring import Poly
    F = field(17)
    gs = [graph_from_poly(F, Poly(F, [a, 0, 1])) for a in range(17)]
    pairs = [(a, b) for a, b in itertools.combinations(range(17), 2)
             if is_isomorphic(gs[a], gs[b], QUADRATIC)]
    # found independently with the nested-tuple canonical form
    assert pairs == [(11, 14)]
    assert naive_canonical(gs[11].out) == naive_canonical(gs[14].out)


maps = st.integers(1, 30).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))


@given(maps, st.randoms(use_true_random=False))
def test_label_invariant_under_conjugation(out, rnd):
    perm = list(range(len(out)))
    rnd.shuffle(perm)
    G, H = FunctionalGraph(out), FunctionalGraph(conjugate(out, perm))
    for mode in (GENERAL, QUADRATIC):
        assert label_graph(G, mode) == label_graph(H, mode)
        assert is_isomorphic(G, H, mode)


@given(maps, maps)
def test_label_equality_matches_naive_canonical_form(a, b):
    same = naive_canonical(a) == naive_canonical(b)
    for mode in (GENERAL, QUADRATIC):
        assert (label_graph(FunctionalGraph(a), mode) == label_graph(FunctionalGraph(b), mode)) == same
        assert is_isomorphic(FunctionalGraph(a), FunctionalGraph(b), mode) == same


@given(maps)
def test_general_label_length(out):
    D = decompose(FunctionalGraph(out))
    lab = label_graph(FunctionalGraph(out), GENERAL, D)
    assert len(lab) <= 2 * len(out)
    for c in D.components:
        units = component_units(c, GENERAL)
        for v, u in zip(c.cycle, units):
            size = 1 + _tree_size(D.tree_children, v) - 1
            assert len(u) == (1 if size == 1 else 2 * size)


def _tree_size(kids, v):
    return 1 + sum(_tree_size(kids, c) for c in kids[v])


def test_brute_force_agreement_tiny():
    # every pair of maps on 3 nodes
    tables = [list(t) for t in itertools.product(range(3), repeat=3)]
    for a, b in itertools.product(tables, repeat=2):
        assert is_isomorphic(FunctionalGraph(a), FunctionalGraph(b)) == brute_isomorphic(a, b)
