from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from certroute.graph import generate_graph, make_graph
from certroute.oracle import build_oracle

from conftest import floyd_warshall


def test_path_distance(path3):
    oracle = build_oracle(path3)
    assert oracle.dist(1, 3) == 2


def test_zero_diagonal(random32, random32_oracle):
    assert all(random32_oracle.dist(v, v) == 0 for v in random32.nodes)


def test_agrees_with_floyd_warshall(random32, random32_oracle):
    fw = floyd_warshall(random32)
    for u in random32.nodes:
        for v in random32.nodes:
            assert random32_oracle.dist(u, v) == fw[(u, v)]


def test_symmetry_and_triangle_inequality():
    g = generate_graph("random-connected", 64, (1, 10), seed=3)
    oracle = build_oracle(g)
    dm = oracle.dist_matrix()
    assert (dm == dm.T).all()
    for i, j, k in itertools.islice(
        itertools.product(range(0, 64, 7), repeat=3), 1000
    ):
        assert dm[i, j] <= dm[i, k] + dm[k, j]


def test_next_min_unique_path(path3):
    oracle = build_oracle(path3)
    assert oracle.next_min(1, 3) == path3.port(1, 2)


def test_next_min_prefers_smallest_port():
    # Two disjoint shortest 0->3 paths; ports at 0 are 1 (to node 1) and 2 (to node 2).
    g = make_graph([0, 1, 2, 3], [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    oracle = build_oracle(g)
    assert oracle.tight_ports(0, 3) == [1, 2]
    assert oracle.next_min(0, 3) == 1


def test_next_min_tightness_everywhere(random32, random32_oracle):
    g, oracle = random32, random32_oracle
    for u in g.nodes:
        for t in g.nodes:
            if u == t:
                continue
            nbr, w = g.via_port(u, oracle.next_min(u, t))
            assert w + oracle.dist(nbr, t) == oracle.dist(u, t)


def test_next_min_descent_terminates(random32, random32_oracle):
    g, oracle = random32, random32_oracle
    for u in g.nodes:
        for t in g.nodes:
            if u == t:
                continue
            path = oracle.canonical_path(u, t)
            assert path[0] == u and path[-1] == t
            dists = [oracle.dist(x, t) for x in path]
            assert all(a > b for a, b in zip(dists, dists[1:]))


def test_next_min_self_is_contract_violation(random32_oracle):
    with pytest.raises(ValueError):
        random32_oracle.next_min(5, 5)


@settings(max_examples=25, deadline=None)
@given(
    n=st.integers(min_value=2, max_value=16),
    seed=st.integers(min_value=0, max_value=2**16),
    hi=st.integers(min_value=1, max_value=7),
)
def test_oracle_matches_floyd_warshall_on_random_graphs(n, seed, hi):
    g = generate_graph("random-connected", n, (1, hi), seed=seed)
    oracle = build_oracle(g)
    fw = floyd_warshall(g)
    assert all(oracle.dist(u, v) == fw[(u, v)] for u in g.nodes for v in g.nodes)
