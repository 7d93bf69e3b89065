"""Stretch-3 landmark routing scheme.

Construction: sample a landmark set L until every cluster is strictly below
4*sqrt(n) and |L| stays under 2*sqrt(n)*log2(n); bunches/clusters follow the
strict-inequality definitions; names are (t, l_t, next(l_t, t)); tables hold
the landmark list and the cluster with next-pointers.  Ties for the nearest
landmark are broken by the smallest landmark id and next-pointers always use
the smallest shortest-path port, so the whole construction is deterministic
given (graph, seed).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import constants
from .graph import WeightedGraph
from .oracle import DistanceOracle
from .sim import Header


@dataclass(frozen=True)
class LandmarkSet:
    landmarks: tuple[int, ...]  # sorted ids
    nearest: dict[int, int]  # v -> l_v (ties: smallest landmark id)
    radius: dict[int, int]  # v -> dist(v, l_v)
    rounds: int  # sampling rounds consumed

    def __contains__(self, v: int) -> bool:
        return v in self.radius and self.nearest[v] == v and self.radius[v] == 0


def _clusters_for(
    oracle: DistanceOracle, landmark_idx: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized nearest landmark + cluster membership mask.

    Returns (nearest_idx, nearest_dist, member) where member[v, u] is True
    iff u belongs to cluster(v), all indexed by node position.
    """
    dm = oracle.dist_matrix()
    sub = dm[:, landmark_idx]
    pick = np.argmin(sub, axis=1)  # first minimum = smallest landmark id
    nearest_idx = landmark_idx[pick]
    nearest_dist = sub[np.arange(dm.shape[0]), pick]
    member = dm < nearest_dist[None, :]
    return nearest_idx, nearest_dist, member


def sample_landmarks(
    g: WeightedGraph, oracle: DistanceOracle, seed: int
) -> LandmarkSet:
    """Resample until cluster and landmark-count bounds hold.

    Each round includes every node independently with probability
    min(1, sqrt(n)*ln(n)/n); empty draws count as failed rounds.
    """
    n = g.n
    if n == 1:
        v = g.nodes[0]
        return LandmarkSet((v,), {v: v}, {v: 0}, rounds=0)
    rng = random.Random(("landmarks", seed).__repr__())
    p = constants.landmark_rate(n)
    climit = constants.cluster_limit(n)
    llimit = constants.landmark_limit(n)
    for round_no in range(1, constants.MAX_SAMPLING_ROUNDS + 1):
        chosen = [v for v in g.nodes if rng.random() < p]
        if not chosen or len(chosen) > llimit:
            continue
        lidx = np.asarray([g.index(v) for v in chosen], dtype=np.int64)
        nearest_idx, nearest_dist, member = _clusters_for(oracle, lidx)
        if member.sum(axis=1).max() >= climit:
            continue
        nearest = {v: g.nodes[nearest_idx[g.index(v)]] for v in g.nodes}
        radius = {v: int(nearest_dist[g.index(v)]) for v in g.nodes}
        return LandmarkSet(tuple(chosen), nearest, radius, rounds=round_no)
    raise constants.RetryLimitExceeded(
        f"no landmark set satisfied the bounds in {constants.MAX_SAMPLING_ROUNDS} rounds"
    )


def compute_bunch_cluster(
    g: WeightedGraph, oracle: DistanceOracle, landmarks: LandmarkSet
) -> tuple[dict[int, set[int]], dict[int, set[int]]]:
    """Strict-inequality bunches and clusters for an already-fixed L.

    bunch(v) = {u : d(v,u) < d(v, l_v)}, cluster(v) = {u : d(v,u) < d(u, l_u)};
    the two are dual: u in cluster(v) iff v in bunch(u).
    """
    lidx = np.asarray(sorted(g.index(v) for v in landmarks.landmarks), dtype=np.int64)
    _, nearest_dist, member = _clusters_for(oracle, lidx)
    nodes = g.nodes
    cluster = {
        v: {nodes[u] for u in np.nonzero(member[g.index(v)])[0]} for v in nodes
    }
    dm = oracle.dist_matrix()
    bunch = {
        v: {nodes[u] for u in np.nonzero(dm[:, g.index(v)] < nearest_dist[g.index(v)])[0]}
        for v in nodes
    }
    return bunch, cluster


@dataclass(frozen=True)
class TzName:
    node: int
    landmark: int
    landmark_port: int  # next(l_t, t); 0 when t is itself a landmark

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.node, self.landmark, self.landmark_port)


@dataclass
class TzTable:
    """Routing table of one node: all landmarks and the cluster, each with a
    next-pointer.  The self entry carries port 0 (delivery needs no edge)."""

    node: int
    landmarks: dict[int, int]  # landmark id -> next(v, l)
    cluster: dict[int, int]  # member id -> next(v, t)

    def entry_count(self) -> int:
        return len(self.landmarks) + len(self.cluster)

    def bit_size(self) -> int:
        # 64-bit id + 32-bit port per entry; matches the serialized encoding.
        return 96 * self.entry_count()

    def copy(self) -> "TzTable":
        return TzTable(self.node, dict(self.landmarks), dict(self.cluster))


@dataclass
class TzScheme:
    g: WeightedGraph
    landmarks: LandmarkSet
    names: dict[int, TzName]
    tables: dict[int, TzTable]
    cluster_sets: dict[int, set[int]]

    def forwarder(self) -> "TzForwarder":
        return TzForwarder(self)


def landmark_set_from(
    g: WeightedGraph, oracle: DistanceOracle, chosen: Iterable[int]
) -> LandmarkSet:
    """LandmarkSet for an explicitly fixed L (tests, fixtures, hierarchies)."""
    lidx = np.asarray(sorted(g.index(v) for v in set(chosen)), dtype=np.int64)
    nearest_idx, nearest_dist, _ = _clusters_for(oracle, lidx)
    nearest = {v: g.nodes[nearest_idx[g.index(v)]] for v in g.nodes}
    radius = {v: int(nearest_dist[g.index(v)]) for v in g.nodes}
    return LandmarkSet(tuple(g.nodes[i] for i in lidx), nearest, radius, rounds=0)


def build_tz(
    g: WeightedGraph,
    oracle: DistanceOracle,
    seed: int,
    landmarks: LandmarkSet | None = None,
) -> TzScheme:
    if landmarks is None:
        landmarks = sample_landmarks(g, oracle, seed)
    lset = set(landmarks.landmarks)
    _, cluster = compute_bunch_cluster(g, oracle, landmarks)
    names: dict[int, TzName] = {}
    tables: dict[int, TzTable] = {}
    for t in g.nodes:
        lt = landmarks.nearest[t]
        port = 0 if t in lset else oracle.next_min(lt, t)
        names[t] = TzName(t, lt, port)
    for v in g.nodes:
        lports = {l: (0 if l == v else oracle.next_min(v, l)) for l in landmarks.landmarks}
        cports = {t: (0 if t == v else oracle.next_min(v, t)) for t in sorted(cluster[v])}
        tables[v] = TzTable(v, lports, cports)
    return TzScheme(g, landmarks, names, tables, cluster)


class TzForwarder:
    """Forwarding per the stretch-3 scheme; the header is the target's name
    and is never rewritten."""

    def __init__(self, scheme: TzScheme):
        self.names = scheme.names
        self.tables = scheme.tables

    def make_header(self, s: int, t: int) -> Header:
        return Header("tz", self.names[t].as_tuple())

    def forward(self, v: int, header: Header) -> tuple[int | None, Header]:
        t, lt, lport = header.data
        if t == v:
            return None, header
        table = self.tables[v]
        port = table.cluster.get(t)
        if port is None:
            port = table.landmarks.get(t)
        if port is not None:
            return port, header
        if v == lt:
            return lport, header
        return table.landmarks[lt], header
