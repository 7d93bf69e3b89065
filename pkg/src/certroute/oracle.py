"""Exact all-pairs shortest-path oracle with canonical tie-breaking.

Distances come from per-source Dijkstra (scipy.sparse.csgraph).  Weights are
positive integers well below 2**52, so the float matrix is exact and is
stored back as int64.  On top of the distance matrix the oracle precomputes,
for every (u, t), the smallest port at u whose edge lies on a shortest u-t
path; that single canonical choice is what every scheme and every lemma
check in this package uses.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .graph import WeightedGraph


class DistanceOracle:
    def __init__(self, g: WeightedGraph):
        self.g = g
        n = g.n
        idx = {v: i for i, v in enumerate(g.nodes)}
        rows, cols, data = [], [], []
        # Directed twin arrays for vectorized sweeps: one entry per (u, v) arc.
        src, dst, wgt, prt = [], [], [], []
        for u, v, w in g.edges:
            rows += [idx[u], idx[v]]
            cols += [idx[v], idx[u]]
            data += [w, w]
            src += [idx[u], idx[v]]
            dst += [idx[v], idx[u]]
            wgt += [w, w]
            prt += [g.port(u, v), g.port(v, u)]
        mat = csr_matrix((data, (rows, cols)), shape=(n, n))
        dist = dijkstra(mat, directed=False)
        if not np.isfinite(dist).all():
            raise ValueError("graph is not connected")
        self._dist = dist.astype(np.int64)
        self._src = np.asarray(src, dtype=np.int64)
        self._dst = np.asarray(dst, dtype=np.int64)
        self._wgt = np.asarray(wgt, dtype=np.int64)
        self._prt = np.asarray(prt, dtype=np.int64)
        self._port = self._min_port_matrix()

    def _min_port_matrix(self) -> np.ndarray:
        """port[u, t] = smallest port at u on a shortest u-t path (0 on the diagonal)."""
        n = self.g.n
        out = np.zeros((n, n), dtype=np.int32)
        if n == 1:
            return out
        big = np.int32(2**31 - 1)
        col = np.empty(n, dtype=np.int32)
        for t in range(n):
            col.fill(big)
            tight = self._wgt + self._dist[self._dst, t] == self._dist[self._src, t]
            np.minimum.at(col, self._src[tight], self._prt[tight].astype(np.int32))
            col[t] = 0
            out[:, t] = col
        if (out == big).any():
            raise AssertionError("missing shortest-path port; oracle is inconsistent")
        return out

    def dist(self, u: int, v: int) -> int:
        return int(self._dist[self.g.index(u), self.g.index(v)])

    def dist_matrix(self) -> np.ndarray:
        """Read-only int64 matrix indexed by node position (see g.nodes / g.index)."""
        return self._dist

    def next_min(self, u: int, t: int) -> int:
        """Smallest port at u of an edge on a shortest u-t path."""
        if u == t:
            raise ValueError("next_min is undefined for u == t")
        return int(self._port[self.g.index(u), self.g.index(t)])

    def tight_ports(self, u: int, t: int) -> list[int]:
        """All ports at u whose edges lie on some shortest u-t path."""
        if u == t:
            return []
        du = self.dist(u, t)
        return sorted(
            p for v, w, p in self.g.incident(u) if w + self.dist(v, t) == du
        )

    def canonical_path(self, u: int, t: int) -> list[int]:
        """The unique path u..t obtained by following next_min at every step."""
        path = [u]
        v = u
        while v != t:
            v, _ = self.g.via_port(v, self.next_min(v, t))
            path.append(v)
        return path

    def on_some_shortest_path(self, u: int, w: int, t: int) -> bool:
        """True iff w lies on at least one shortest u-t path."""
        return self.dist(u, w) + self.dist(w, t) == self.dist(u, t)


def build_oracle(g: WeightedGraph) -> DistanceOracle:
    return DistanceOracle(g)


def next_min(oracle: DistanceOracle, u: int, t: int) -> int:
    return oracle.next_min(u, t)
