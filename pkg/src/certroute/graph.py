"""Weighted graph model with per-node port labels, plus generators and the
line-oriented on-disk format.

A graph is undirected, connected, has positive integer edge lengths, and at
every node the incident edges carry distinct port numbers 1..deg(v).  Ports
are the only thing a forwarding function may return, so the bijection
invariant is enforced at construction time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Graph validation or parse failure with a machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class WeightedGraph:
    """Immutable undirected graph.

    nodes: sorted tuple of distinct non-negative ids.
    edges: tuple of (u, v, w) with u < v, sorted, weights >= 1.
    Adjacency and port maps are derived once in __post_init__.
    """

    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    # node -> {neighbor: (weight, port at node)}
    _adj: dict[int, dict[int, tuple[int, int]]] = field(
        default_factory=dict, repr=False, compare=False
    )
    # node -> {port: neighbor}
    _by_port: dict[int, dict[int, int]] = field(
        default_factory=dict, repr=False, compare=False
    )
    _index: dict[int, int] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def index(self, v: int) -> int:
        return self._index[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def neighbors(self, v: int) -> list[int]:
        return list(self._adj[v])

    def incident(self, v: int) -> list[tuple[int, int, int]]:
        """(neighbor, weight, port at v) for every incident edge."""
        return [(u, w, p) for u, (w, p) in self._adj[v].items()]

    def weight(self, u: int, v: int) -> int:
        return self._adj[u][v][0]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def port(self, u: int, v: int) -> int:
        """Port number at u of the edge {u, v}."""
        return self._adj[u][v][1]

    def via_port(self, u: int, p: int) -> tuple[int, int]:
        """(neighbor, weight) of the edge leaving u through port p."""
        try:
            v = self._by_port[u][p]
        except KeyError:
            raise GraphError("bad-port", f"node {u} has no port {p}") from None
        return v, self._adj[u][v][0]

    def to_text(self) -> str:
        """Canonical serialization: header, edges sorted by (min id, max id),
        then port overrides for every port differing from the canonical
        ascending-neighbor-id assignment."""
        lines = [f"graph {self.n} {self.m}"]
        for u, v, w in self.edges:
            lines.append(f"edge {u} {v} {w}")
        canonical = _canonical_ports(self.nodes, self.edges)
        for v in self.nodes:
            for u in sorted(self._adj[v]):
                p = self._adj[v][u][1]
                if canonical[v][u] != p:
                    lines.append(f"port {v} {u} {p}")
        return "\n".join(lines) + "\n"


def _canonical_ports(
    nodes: Sequence[int], edges: Iterable[tuple[int, int, int]]
) -> dict[int, dict[int, int]]:
    """Ascending neighbor id -> ascending port, per node."""
    nbrs: dict[int, list[int]] = {v: [] for v in nodes}
    for u, v, _ in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    return {
        v: {u: i + 1 for i, u in enumerate(sorted(vs))} for v, vs in nbrs.items()
    }


def _connected(nodes: Sequence[int], adj: dict[int, dict]) -> bool:
    if not nodes:
        return False
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(nodes)


def make_graph(
    nodes: Iterable[int],
    edges: Iterable[tuple[int, int, int]],
    port_overrides: Iterable[tuple[int, int, int]] = (),
) -> WeightedGraph:
    """Validate and build a WeightedGraph.

    Raises GraphError with codes: empty-graph, bad-node, self-loop,
    duplicate-edge, non-positive-weight, unknown-node, disconnected,
    port-non-bijection.
    """
    node_list = sorted(set(nodes))
    if not node_list:
        raise GraphError("empty-graph", "a graph needs at least one node")
    if node_list[0] < 0:
        raise GraphError("bad-node", "node ids must be non-negative")
    node_set = set(node_list)

    norm: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for u, v, w in edges:
        if u == v:
            raise GraphError("self-loop", f"self-loop at node {u}")
        if u not in node_set or v not in node_set:
            raise GraphError("unknown-node", f"edge {u}-{v} references unknown node")
        if not isinstance(w, int) or w < 1:
            raise GraphError("non-positive-weight", f"edge {u}-{v} has weight {w!r}")
        a, b = (u, v) if u < v else (v, u)
        if (a, b) in seen:
            raise GraphError("duplicate-edge", f"edge {a}-{b} listed twice")
        seen.add((a, b))
        norm.append((a, b, w))
    norm.sort()

    ports = _canonical_ports(node_list, norm)
    for u, v, p in port_overrides:
        if u not in node_set or v not in node_set or (min(u, v), max(u, v)) not in seen:
            raise GraphError("unknown-node", f"port override for missing edge {u}-{v}")
        ports[u][v] = p

    adj: dict[int, dict[int, tuple[int, int]]] = {v: {} for v in node_list}
    by_port: dict[int, dict[int, int]] = {v: {} for v in node_list}
    for u, v, w in norm:
        adj[u][v] = (w, ports[u][v])
        adj[v][u] = (w, ports[v][u])
    for v in node_list:
        got = sorted(p for _, p in adj[v].values())
        if got != list(range(1, len(adj[v]) + 1)):
            raise GraphError(
                "port-non-bijection",
                f"ports at node {v} are {got}, expected 1..{len(adj[v])}",
            )
        by_port[v] = {p: u for u, (_, p) in adj[v].items()}

    if not _connected(node_list, adj):
        raise GraphError("disconnected", "graph is not connected")

    g = WeightedGraph(tuple(node_list), tuple(norm))
    g._adj.update(adj)
    g._by_port.update(by_port)
    g._index.update({v: i for i, v in enumerate(node_list)})
    return g


def load_graph(text: str) -> WeightedGraph:
    """Parse the line-oriented format:

        graph <n> <m>
        edge <u> <v> <w>     (m lines)
        port <u> <v> <p>     (optional overrides)

    '#' starts a comment; blank lines are ignored.
    """
    n = m = None
    nodes: set[int] = set()
    edges: list[tuple[int, int, int]] = []
    overrides: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        try:
            vals = [int(a) for a in args]
        except ValueError:
            raise GraphError("parse-error", f"line {lineno}: non-integer field") from None
        if kind == "graph":
            if n is not None or len(vals) != 2:
                raise GraphError("parse-error", f"line {lineno}: bad graph header")
            n, m = vals
        elif kind == "edge":
            if len(vals) != 3:
                raise GraphError("parse-error", f"line {lineno}: bad edge line")
            edges.append((vals[0], vals[1], vals[2]))
            nodes.update(vals[:2])
        elif kind == "node":
            if len(vals) != 1:
                raise GraphError("parse-error", f"line {lineno}: bad node line")
            nodes.add(vals[0])
        elif kind == "port":
            if len(vals) != 3:
                raise GraphError("parse-error", f"line {lineno}: bad port line")
            overrides.append((vals[0], vals[1], vals[2]))
        else:
            raise GraphError("parse-error", f"line {lineno}: unknown directive {kind!r}")
    if n is None:
        raise GraphError("parse-error", "missing 'graph <n> <m>' header")
    if m != len(edges):
        raise GraphError("parse-error", f"header claims {m} edges, file has {len(edges)}")
    if n == 1 and not nodes:
        nodes = {0}
    if len(nodes) != n:
        raise GraphError(
            "parse-error", f"header claims {n} nodes, edges reference {len(nodes)}"
        )
    return make_graph(nodes, edges, overrides)


def generate_graph(
    kind: str, n: int, weight_range: tuple[int, int] = (1, 1), seed: int = 0
) -> WeightedGraph:
    """Deterministic generators: random-connected, grid, ring, star.

    random-connected draws a uniform random spanning tree (random attachment)
    plus ~n extra edges; grid is the squarest rows x cols factorization of n;
    ring and star are the obvious 1-indexed-weight constructions.
    """
    lo, hi = weight_range
    if n < 1:
        raise GraphError("bad-node", "n must be >= 1")
    if lo < 1 or hi < lo:
        raise GraphError("non-positive-weight", f"bad weight range {weight_range}")
    rng = random.Random((kind, n, lo, hi, seed).__repr__())
    w = lambda: rng.randint(lo, hi)
    nodes = range(n)
    edges: list[tuple[int, int, int]] = []
    if n == 1:
        return make_graph(nodes, [])
    if kind == "ring":
        edges = [(i, (i + 1) % n, w()) for i in range(n)] if n > 2 else [(0, 1, w())]
    elif kind == "star":
        edges = [(0, i, w()) for i in range(1, n)]
    elif kind == "grid":
        rows = max(r for r in range(1, int(n**0.5) + 1) if n % r == 0)
        cols = n // rows
        for r in range(rows):
            for c in range(cols):
                i = r * cols + c
                if c + 1 < cols:
                    edges.append((i, i + 1, w()))
                if r + 1 < rows:
                    edges.append((i, i + cols, w()))
    elif kind == "random-connected":
        for v in range(1, n):
            edges.append((rng.randrange(v), v, w()))
        have = {(u, v) if u < v else (v, u) for u, v, _ in edges}
        extra = 0
        attempts = 0
        while extra < n and attempts < 20 * n:
            attempts += 1
            u, v = rng.randrange(n), rng.randrange(n)
            key = (min(u, v), max(u, v))
            if u == v or key in have:
                continue
            have.add(key)
            edges.append((key[0], key[1], w()))
            extra += 1
    else:
        raise GraphError("parse-error", f"unknown generator kind {kind!r}")
    return make_graph(nodes, edges)
