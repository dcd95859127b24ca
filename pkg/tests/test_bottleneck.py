import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pktroute.bottleneck import (feasibility_reachable, max_capacity_bsearch, max_capacity_buckets,
                                 max_capacity_dijkstra, multicast_tree_bsearch,
                                 multicast_tree_from_labels)
from pktroute.errors import InputError, UnreachableError
from pktroute.graph import INF, from_edges, to_directed

from oracles import bottleneck_of, random_graph, seeded, widest_brute

FIXTURE = [(1, 2, 5), (2, 3, 2), (1, 3, 4)]


def fixture(directed=False):
    g = from_edges(3, FIXTURE)
    return to_directed(g) if directed else g


def test_single_arc():
    g = from_edges(2, [(1, 2, 7)], directed=True)
    lab = max_capacity_dijkstra(g, {1})
    assert lab.cmx[2] == 7 and lab.path_to(2) == [1, 2]


@pytest.mark.parametrize("directed", [False, True])
def test_fixture_direct_edge_wins(directed):
    lab = max_capacity_dijkstra(fixture(directed), [1])
    assert lab.cmx[3] == 4 and lab.path_to(3) == [1, 3]
    assert lab.cmx[1] == INF


def test_unreachable_has_no_parent():
    lab = max_capacity_dijkstra(from_edges(2, [], directed=True), [1])
    assert lab.cmx[2] == 0 and lab.parent[2] is None and not lab.reachable(2)


def test_zero_capacity_reach_is_distinguished():
    lab = max_capacity_dijkstra(from_edges(3, [(1, 2, 0)]), [1])
    assert lab.cmx[2] == 0 and lab.reachable(2) and lab.path_to(2) == [1, 2]
    assert not lab.reachable(3)


def test_empty_sources_rejected():
    with pytest.raises(InputError):
        max_capacity_dijkstra(fixture(), [])


@pytest.mark.parametrize("lazy", [True, False])
def test_buckets_fixture(lazy):
    assert max_capacity_buckets(fixture(), [1], capmax=5, lazy=lazy).cmx == max_capacity_dijkstra(fixture(), [1]).cmx


def test_buckets_uniform_capacity():
    g = from_edges(4, [(1, 2, 6), (2, 3, 6), (3, 4, 6)])
    lab = max_capacity_buckets(g, [1], capmax=6)
    assert lab.cmx[2:] == [6, 6, 6]


def test_buckets_range_check():
    with pytest.raises(InputError):
        max_capacity_buckets(fixture(), [1], capmax=3)


def test_bsearch_fixture():
    res = max_capacity_bsearch(fixture(), 1, 3)
    assert res.capacity == 4 and res.path == [1, 3]


def test_bsearch_same_vertex_and_unreachable():
    assert max_capacity_bsearch(fixture(), 2, 2).capacity == INF
    assert max_capacity_bsearch(fixture(), 2, 2).path == [2]
    res = max_capacity_bsearch(from_edges(3, [(1, 2, 3)]), 1, 3)
    assert not res.reachable and res.path is None


def test_feasibility():
    g = fixture()
    assert feasibility_reachable(g, 0, 1, {2, 3}) == {2, 3}
    assert feasibility_reachable(g, 5, 1, {2, 3}) == {2}
    assert feasibility_reachable(g, 99, 1, {1, 2, 3}) == {1}


TREE = [(1, 2, 5), (2, 3, 2), (1, 3, 4), (3, 4, 1)]


def check_tree(g, tree, s, dests):
    vs = tree.vertices()
    assert set(dests) <= vs
    assert len(tree.tree_edges) == len(vs) - 1
    children = [c for _, c, _ in tree.tree_edges]
    assert len(set(children)) == len(children) and s not in children
    for p, c, cap in tree.tree_edges:
        assert any(w == c and g.edges[i].weights[0] == cap for w, i in g.adj[p])
    assert tree.capacity == min((c for _, _, c in tree.tree_edges), default=INF)


def test_tree_from_labels():
    g = from_edges(4, TREE)
    tree = multicast_tree_from_labels(g, max_capacity_dijkstra(g, 1), 1, [2, 4])
    assert tree.capacity == 1
    check_tree(g, tree, 1, [2, 4])


def test_tree_single_destination_is_source():
    g = from_edges(4, TREE)
    tree = multicast_tree_from_labels(g, max_capacity_dijkstra(g, 1), 1, [1])
    assert tree.capacity == INF and tree.tree_edges == []
    tree = multicast_tree_bsearch(g, 1, [1])
    assert tree.capacity == INF and tree.vertices() == {1}


def test_tree_path():
    g = from_edges(3, [(1, 2, 5), (2, 3, 2)])
    tree = multicast_tree_from_labels(g, max_capacity_dijkstra(g, 1), 1, [3])
    assert tree.capacity == 2 and sorted(tree.tree_edges) == [(1, 2, 5), (2, 3, 2)]


def test_tree_bsearch_prunes():
    g = from_edges(4, TREE)
    tree = multicast_tree_bsearch(g, 1, [2, 4])
    assert tree.capacity == 1
    check_tree(g, tree, 1, [2, 4])
    parents = {p for p, _, _ in tree.tree_edges}
    leaves = tree.vertices() - parents
    assert leaves <= {1, 2, 4}


def test_tree_star():
    g = from_edges(5, [(1, v, v) for v in range(2, 6)])
    tree = multicast_tree_bsearch(g, 1, [2, 3, 4, 5])
    assert tree.vertices() == {1, 2, 3, 4, 5} and tree.capacity == 2


def test_tree_unreachable():
    g = from_edges(4, [(1, 2, 3)])
    with pytest.raises(UnreachableError):
        multicast_tree_from_labels(g, max_capacity_dijkstra(g, 1), 1, [2, 3])
    with pytest.raises(UnreachableError):
        multicast_tree_bsearch(g, 1, [3])


def test_self_loops_ignored():
    g = from_edges(2, [(1, 1, 9), (1, 2, 3)])
    assert max_capacity_dijkstra(g, 1).cmx[2] == 3
    assert max_capacity_buckets(g, 1).cmx[2] == 3


def test_strategies_agree_random():
    rng = seeded(5)
    for _ in range(500):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.randint(0, 14), directed=rng.random() < 0.3)
        s = rng.randint(1, n)
        dj = max_capacity_dijkstra(g, s)
        lazy = max_capacity_buckets(g, s, capmax=10)
        eager = max_capacity_buckets(g, s, capmax=10, lazy=False)
        assert dj.cmx == lazy.cmx == eager.cmx
        for t in range(1, n + 1):
            res = max_capacity_bsearch(g, s, t)
            if t == s:
                continue
            if dj.reachable(t):
                assert res.capacity == dj.cmx[t]
                for lab in (dj, lazy, eager):
                    path = lab.path_to(t)
                    assert path[0] == s and path[-1] == t and len(set(path)) == len(path)
                    assert bottleneck_of(g, path) >= lab.cmx[t]
                assert bottleneck_of(g, res.path) == res.capacity
            else:
                assert not lazy.reachable(t) and not res.reachable


graphs = st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(1, n), st.integers(1, n), st.integers(0, 10)), max_size=12)))


@settings(max_examples=150, deadline=None)
@given(graphs, st.data())
def test_dijkstra_matches_brute_force(case, data):
    n, edges = case
    g = from_edges(n, edges)
    s = data.draw(st.integers(1, n))
    lab = max_capacity_dijkstra(g, s)
    for t in range(1, n + 1):
        want = widest_brute(g, s, t)
        if want is None:
            assert not lab.reachable(t)
        else:
            assert lab.cmx[t] == want


def test_multi_source():
    g = from_edges(4, [(1, 2, 1), (3, 2, 8), (2, 4, 6)])
    lab = max_capacity_dijkstra(g, [1, 3])
    assert lab.cmx[2] == 8 and lab.cmx[4] == 6 and lab.path_to(4) == [3, 2, 4]
