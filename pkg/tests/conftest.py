from __future__ import annotations

import pytest

from certroute.graph import WeightedGraph, generate_graph, make_graph
from certroute.oracle import build_oracle


def floyd_warshall(g: WeightedGraph) -> dict[tuple[int, int], int]:
    """Independent all-pairs oracle: plain triple-loop Floyd-Warshall."""
    inf = float("inf")
    nodes = list(g.nodes)
    d = {(u, v): (0 if u == v else inf) for u in nodes for v in nodes}
    for u, v, w in g.edges:
        d[(u, v)] = min(d[(u, v)], w)
        d[(v, u)] = min(d[(v, u)], w)
    for k in nodes:
        for i in nodes:
            dik = d[(i, k)]
            if dik is inf:
                continue
            for j in nodes:
                alt = dik + d[(k, j)]
                if alt < d[(i, j)]:
                    d[(i, j)] = alt
    return {k: int(v) for k, v in d.items()}


@pytest.fixture
def path3() -> WeightedGraph:
    return make_graph([1, 2, 3], [(1, 2, 1), (2, 3, 1)])


@pytest.fixture
def random32() -> WeightedGraph:
    return generate_graph("random-connected", 32, (1, 10), seed=7)


@pytest.fixture
def random32_oracle(random32):
    return build_oracle(random32)
