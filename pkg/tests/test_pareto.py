import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pktroute.errors import CapabilityError, InputError
from pktroute.graph import INF, Graph
from pktroute.pareto import (CostModel, enumerate_reachable, front_from_sp, monotone_sp, pareto_front,
                             replay_edges)

from oracles import pareto_brute, pareto_walks_brute, random_dag, random_graph, seeded

ADD2 = CostModel.from_kinds(("sum", "sum"), vmax=15)
PARALLEL = Graph(2, [(1, 2, (1, 3)), (1, 2, (2, 1))], directed=True, arity=2)


def scores(front):
    return [e.scores for e in front]


def test_no_edges():
    states = enumerate_reachable(Graph(3, [], arity=2), ADD2, [1, 3])
    assert sorted(states.pred) == [(1, (0, 0)), (3, (0, 0))]


def test_parallel_edges():
    states = enumerate_reachable(PARALLEL, ADD2, 1)
    assert states.at(2) == [(1, 3), (2, 1)]
    assert scores(pareto_front(states, 2)) == [(1, 3), (2, 1)]


def test_dominated_state_removed():
    g = Graph(2, [(1, 2, (1, 3)), (1, 2, (2, 1)), (1, 2, (2, 4))], directed=True, arity=2)
    assert scores(pareto_front(enumerate_reachable(g, ADD2, 1), 2)) == [(1, 3), (2, 1)]


def test_single_state_front():
    front = pareto_front(enumerate_reachable(PARALLEL, ADD2, 1), 1)
    assert scores(front) == [(0, 0)] and front[0].path == [1] and front[0].edges == []


def test_strict_keeps_ties_weak_drops_them():
    g = Graph(2, [(1, 2, (1, 3)), (1, 2, (1, 5))], directed=True, arity=2)
    states = enumerate_reachable(g, ADD2, 1)
    assert scores(pareto_front(states, 2)) == [(1, 3), (1, 5)]
    assert scores(pareto_front(states, 2, weak=True)) == [(1, 3)]


def test_vmax_clips_long_chain():
    g = Graph(6, [(i, i + 1, (1, 1)) for i in range(1, 6)], directed=True, arity=2)
    model = CostModel.from_kinds(("sum", "sum"), vmax=3)
    states = enumerate_reachable(g, model, 1)
    assert states.at(4) == [(3, 3)] and states.at(5) == [] and states.discarded == 1


def test_sp_parallel_fixture():
    table = monotone_sp(PARALLEL, ADD2, 1)
    assert table.value[(2, (1,))] == 3 and table.value[(2, (2,))] == 1
    assert table.value[(1, (0,))] == 0


def test_min_objective_seeds_with_inf():
    model = CostModel.from_kinds(("sum", "min"), vmax=10)
    assert model.seeds == (0, INF) and model.senses == ("min", "max")
    g = Graph(3, [(1, 2, (1, 5)), (2, 3, (1, 2)), (1, 3, (4, 7))], directed=True, arity=2)
    front = pareto_front(enumerate_reachable(g, model, 1), 3, weak=True)
    assert scores(front) == [(2, 2), (4, 7)]
    assert scores(front_from_sp(monotone_sp(g, model, 1), 3)) == [(2, 2), (4, 7)]


def test_budget_and_errors():
    g = random_graph(seeded(1), 6, 15, directed=True, arity=2, lo=0, hi=1)
    with pytest.raises(CapabilityError):
        enumerate_reachable(g, CostModel.from_kinds(("sum", "sum"), vmax=40), 1, budget=10)
    with pytest.raises(CapabilityError):
        monotone_sp(g, CostModel.from_kinds(("sum", "sum"), vmax=40), 1, budget=3)
    with pytest.raises(InputError):
        enumerate_reachable(g, CostModel.from_kinds(("sum", "sum"), vmax=0), 1)
    with pytest.raises(InputError):
        monotone_sp(g, CostModel.from_kinds(("sum",), vmax=5), 1)
    with pytest.raises(InputError):
        CostModel.from_kinds(("avg",), vmax=5)
    with pytest.raises(InputError):
        CostModel.from_kinds(("sum",), vmax=5, senses=("up",))


def check_front(g, model, front):
    for a in front:
        assert replay_edges(g, model, a.edges) == a.scores
        assert a.path[-1] == a.vertex and len(a.path) == len(a.edges) + 1
        for b in front:
            assert not model.dominates(a.scores, b.scores)


def test_front_matches_walk_brute_force():
    rng = seeded(60)
    for trial in range(200):
        n = rng.randint(1, 6)
        g = random_graph(rng, n, rng.randint(0, 10), directed=rng.random() < 0.5, arity=2, lo=1, hi=3)
        s = rng.randint(1, n)
        dests = set(rng.sample(range(1, n + 1), rng.randint(1, n)))
        states = enumerate_reachable(g, ADD2, s)
        for weak in (False, True):
            front = pareto_front(states, dests, weak=weak)
            assert scores(front) == pareto_walks_brute(g, s, dests, 6, 15, strict=not weak)
            check_front(g, ADD2, front)


def test_front_matches_simple_paths_on_dags():
    rng = seeded(61)
    for _ in range(200):
        n = rng.randint(2, 6)
        g = random_dag(rng, n, rng.randint(0, 10))
        dests = {n}
        states = enumerate_reachable(g, ADD2, 1)
        for weak in (False, True):
            assert scores(pareto_front(states, dests, weak=weak)) == pareto_brute(g, 1, dests, strict=not weak)


def test_mixed_senses():
    rng = seeded(62)
    model = CostModel.from_kinds(("sum", "sum"), vmax=15, senses=("min", "max"))
    for _ in range(100):
        n = rng.randint(2, 6)
        g = random_dag(rng, n, rng.randint(0, 10))
        front = pareto_front(enumerate_reachable(g, model, 1), n, weak=True)
        assert scores(front) == pareto_brute(g, 1, {n}, senses=("min", "max"), strict=False)
        check_front(g, model, front)


def test_sp_front_matches_enumeration():
    rng = seeded(63)
    for _ in range(200):
        n = rng.randint(1, 6)
        vmax = rng.randint(0, 12)
        model = CostModel.from_kinds(("sum", "sum"), vmax=vmax)
        g = random_graph(rng, n, rng.randint(0, 10), directed=rng.random() < 0.5, arity=2,
                         lo=0, hi=min(3, vmax))
        s = rng.randint(1, n)
        dests = set(range(1, n + 1))
        table = monotone_sp(g, model, s)
        want = pareto_front(enumerate_reachable(g, model, s), dests, weak=True)
        got = front_from_sp(table, dests)
        assert scores(got) == scores(want)
        for e in got:
            assert replay_edges(g, model, e.edges) == e.scores


def test_three_objectives_with_max():
    rng = seeded(64)
    model = CostModel.from_kinds(("sum", "max", "sum"), vmax=15)
    for _ in range(100):
        n = rng.randint(1, 5)
        g = random_graph(rng, n, rng.randint(0, 8), directed=True, arity=3, lo=1, hi=3)
        states = enumerate_reachable(g, model, 1)
        want = pareto_front(states, range(1, n + 1), weak=True)
        got = front_from_sp(monotone_sp(g, model, 1), range(1, n + 1))
        assert scores(got) == scores(want)
        check_front(g, model, want)


edges2 = st.lists(st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(1, 3), st.integers(1, 3)),
                  max_size=8)


@settings(max_examples=100, deadline=None)
@given(edges2)
def test_front_property(edges):
    g = Graph(4, [(u, v, (a, b)) for u, v, a, b in edges], directed=True, arity=2)
    front = pareto_front(enumerate_reachable(g, ADD2, 1), 4)
    assert scores(front) == pareto_walks_brute(g, 1, {4}, 6, 15)
    check_front(g, ADD2, front)
