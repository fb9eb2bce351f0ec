import random

import pytest
from hypothesis import given, strategies as st

from funcgraph.errors import OutOfRange
from funcgraph.field import field
from funcgraph.graph import (FunctionalGraph, decompose, graph_from_poly,
                             graph_from_table, graph_stats, most_popular,
                             read_map_file, write_map_file)
from funcgraph.polyring import Poly

from oracles import cyclic_nodes, naive_stats, weak_components

F5 = field(5)

maps = st.integers(1, 40).flatmap(
    lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))


def test_graph_from_poly_examples():
    assert graph_from_poly(F5, Poly(F5, [0, 0, 1])).out == [0, 1, 4, 4, 1]
    assert graph_from_poly(F5, Poly(F5, [1, 0, 1])).out == [1, 2, 0, 0, 2]
    F3 = field(3)
    assert graph_from_poly(F3, Poly(F3, [])).out == [0, 0, 0]


def test_table_validation():
    assert graph_from_table([1, 2, 0]).n == 3
    assert graph_from_table([0, 0, 0]).in_degrees() == [3, 0, 0]
    with pytest.raises(OutOfRange):
        graph_from_table([3, 0, 0])


def test_decompose_x_squared_f5():
    D = decompose(graph_from_table([0, 1, 4, 4, 1]))
    assert [c.size for c in D.components] == [1, 4]
    small, big = D.components
    assert small.cycle == [0] and big.cycle == [1]
    assert D.tree_children[1] == [4]
    assert sorted(D.tree_children[4]) == [2, 3]
    assert D.size_classes == {1: 1, 4: 1}


def test_decompose_x_squared_plus_one_f5():
    D = decompose(graph_from_table([1, 2, 0, 0, 2]))
    (c,) = D.components
    assert sorted(c.cycle) == [0, 1, 2]
    # cycle order follows edges
    assert [c.cycle[(i + 1) % 3] for i in range(3)] == [[1, 2, 0, 0, 2][v] for v in c.cycle]
    assert D.tree_children[0] == [3]
    assert D.tree_children[2] == [4]
    assert D.tree_children[1] == []


def test_identity_map():
    G = graph_from_table(range(4))
    D = decompose(G)
    assert len(D.components) == 4 and all(len(c.cycle) == 1 for c in D.components)
    st_ = graph_stats(G, D)
    assert (st_.num_components, st_.largest_component, st_.most_popular_size,
            st_.popular_size_multiplicity) == (4, 1, 1, 4)


def test_x_squared_stats_f5():
    st_ = graph_stats(graph_from_table([0, 1, 4, 4, 1]))
    assert st_.cyclic_points == 2  # r + 1 with r = 1
    assert st_.num_leaves == 2


def test_most_popular_ties_go_to_smallest():
    assert most_popular({1: 2, 3: 2, 5: 1}) == (1, 2)
    assert most_popular({2: 1, 4: 3}) == (4, 3)


@given(maps)
def test_decomposition_partitions_nodes(out):
    G = FunctionalGraph(out)
    D = decompose(G)
    nodes = sorted(v for c in D.components for v in c.nodes)
    assert nodes == list(range(len(out)))
    assert sorted(v for v in range(len(out)) if D.on_cycle[v]) == sorted(cyclic_nodes(out))
    assert sorted(sorted(c.nodes) for c in D.components) == sorted(weak_components(out))
    for i, c in enumerate(D.components):
        assert all(D.component_of[v] == i for v in c.nodes)
    # ordered by size
    assert [c.size for c in D.components] == sorted(c.size for c in D.components)
    # tree children are exactly the off-cycle preimages
    for v in range(len(out)):
        pre = sorted(u for u in range(len(out)) if out[u] == v and not D.on_cycle[u])
        assert sorted(D.tree_children[v]) == pre


@given(maps)
def test_graph_stats_match_naive(out):
    assert graph_stats(FunctionalGraph(out)).__dict__ == naive_stats(out)


def test_decompose_large_is_iterative():
    # a 200000-node path into a loop would overflow a recursive DFS
    n = 200000
    out = [i + 1 for i in range(n - 1)] + [n - 1]
    D = decompose(FunctionalGraph(out))
    assert len(D.components) == 1 and D.components[0].size == n


def test_relabel_preserves_stats():
    rng = random.Random(3)
    out = [rng.randrange(50) for _ in range(50)]
    perm = list(range(50))
    rng.shuffle(perm)
    G = FunctionalGraph(out)
    assert graph_stats(G) == graph_stats(G.relabel(perm))


def test_map_file_roundtrip(tmp_path):
    G = graph_from_table([1, 2, 0, 0, 2])
    path = tmp_path / "g.map"
    write_map_file(G, path)
    assert path.read_text() == "5\n1 2 0 0 2\n"
    assert read_map_file(path) == G


def test_map_file_errors(tmp_path):
    bad = tmp_path / "bad.map"
    bad.write_text("3\n0 1\n")
    with pytest.raises(ValueError):
        read_map_file(bad)
    bad.write_text("2\n0 5\n")
    with pytest.raises(OutOfRange):
        read_map_file(bad)
