import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pktroute.bindex import (ROOT, build_index, check_invariants, disconnected, index_from_parents,
                             lca_naive, lca_sqrt, load_index, query_levelwise, query_levelwise_batch,
                             query_via_lca, serialize_index)
from pktroute.bottleneck import max_capacity_dijkstra
from pktroute.errors import InputError
from pktroute.graph import INF, from_edges, parse_graph, serialize_graph

from oracles import random_graph, seeded, widest_brute

FIXTURE = [(1, 2, 5), (2, 3, 2), (1, 3, 4)]


def test_fixture_queries():
    idx = build_index(from_edges(3, FIXTURE))
    assert query_levelwise(idx, 1, 3) == 4
    assert query_levelwise(idx, 2, 3) == 4
    assert query_via_lca(idx, 2, 3) == 4
    assert query_via_lca(idx, 1, 3) == 4
    assert query_levelwise(idx, 2, 2) == INF and query_via_lca(idx, 2, 2) == INF


def test_single_vertex():
    idx = build_index(from_edges(1, []))
    assert idx.parent[1] == ROOT and idx.level[1] == 1


def test_two_components():
    idx = build_index(from_edges(4, [(1, 2, 3), (3, 4, 9)]))
    roots = [v for v in range(1, 5) if idx.parent[v] == ROOT]
    assert len(roots) == 2 and all(idx.parent_cap[r] == 0 for r in roots)
    assert query_levelwise(idx, 1, 4) == 0 and query_via_lca(idx, 1, 4) == 0
    assert disconnected(idx, 1, 4) and not disconnected(idx, 1, 2)


def test_directed_rejected():
    with pytest.raises(InputError):
        build_index(from_edges(2, [(1, 2, 1)], directed=True))


def test_lca_chain():
    # r -> 1 -> 2 -> 3
    idx = index_from_parents([0, 0, 1, 2], [0, 0, 5, 4])
    assert lca_sqrt(idx, 2, 3) == 2
    assert lca_sqrt(idx, 3, 3) == 3
    assert lca_sqrt(idx, 3, 1) == 1


def test_cycle_rejected():
    with pytest.raises(InputError):
        index_from_parents([0, 2, 1], [0, 1, 1])


def test_ancestry_matches_intervals():
    rng = seeded(3)
    for _ in range(30):
        n = rng.randint(1, 40)
        parent = [0] + [rng.randint(0, v - 1) for v in range(1, n + 1)]
        idx = index_from_parents(parent, [0] * (n + 1))
        for a in range(n + 1):
            for b in range(n + 1):
                x, anc = b, False
                while x != -1:
                    if x == a:
                        anc = True
                        break
                    x = idx.parent[x]
                assert idx.is_ancestor(a, b) == anc


def test_queries_match_dijkstra_random():
    rng = seeded(21)
    for _ in range(300):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.randint(0, 12))
        idx = build_index(g)
        assert check_invariants(idx) == []
        for u in range(1, n + 1):
            lab = max_capacity_dijkstra(g, u)
            for v in range(1, n + 1):
                want = INF if u == v else lab.cmx[v]
                assert query_levelwise(idx, u, v) == want
                assert query_via_lca(idx, u, v) == want


def test_batch_matches_single():
    rng = seeded(8)
    g = random_graph(rng, 50, 120, hi=30)
    idx = build_index(g)
    pairs = [(rng.randint(1, 50), rng.randint(1, 50)) for _ in range(300)]
    assert query_levelwise_batch(idx, pairs) == [query_levelwise(idx, u, v) for u, v in pairs]


def test_height_bound():
    rng = seeded(4)
    for n in (2, 17, 300, 2000):
        g = random_graph(rng, n, 2 * n, hi=100)
        idx = build_index(g)
        forest_height = idx.H - 1
        assert forest_height <= math.floor(math.log2(n)) + 1
        assert idx.k == math.ceil(math.sqrt(idx.H))


def test_serialized_index_round_trip_and_deterministic():
    rng = seeded(9)
    g = random_graph(rng, 30, 60, hi=20)
    a = serialize_index(build_index(g))
    b = serialize_index(build_index(parse_graph(serialize_graph(g))))
    assert a == b
    back = load_index(a)
    for u in range(1, 31):
        for v in range(1, 31):
            assert query_levelwise(back, u, v) == query_levelwise(build_index(g), u, v)


def test_load_index_rejects_garbage():
    with pytest.raises(InputError):
        load_index("hello")
    with pytest.raises(InputError):
        load_index("index 2 H 1 k 1\n1 0 0 0\n")


forests = st.integers(1, 60).flatmap(
    lambda n: st.tuples(*[st.integers(0, v - 1) for v in range(1, n + 1)]))


@settings(max_examples=200, deadline=None)
@given(forests, st.data())
def test_lca_sqrt_matches_naive(parents, data):
    n = len(parents)
    idx = index_from_parents([0] + list(parents), [0] * (n + 1))
    for _ in range(20):
        u = data.draw(st.integers(0, n))
        v = data.draw(st.integers(0, n))
        assert lca_sqrt(idx, u, v) == lca_naive(idx, u, v)


small_graphs = st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(1, n), st.integers(1, n), st.integers(0, 10)), max_size=12)))


@settings(max_examples=100, deadline=None)
@given(small_graphs)
def test_index_matches_brute_force(case):
    n, edges = case
    g = from_edges(n, edges)
    idx = build_index(g)
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            want = widest_brute(g, u, v)
            want = 0 if want is None else want
            assert query_levelwise(idx, u, v) == want == query_via_lca(idx, u, v)
