"""Message-forwarding simulator.

A scheme exposes a forwarder: make_header(s, t) builds the initial header and
forward(v, header) maps the current node's state plus the header to either
(None, header) meaning deliver-here, or (port, new_header).  Forwarders are
pure; every bit of per-message state lives in the header, so the simulator
can detect loops by hashing (node, header) pairs.  Legal routes may revisit a
node with a different header, which is why the key includes the header.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .graph import GraphError, WeightedGraph
from .oracle import DistanceOracle

DELIVERED = "delivered"
LOOP = "loop-detected"
STEP_LIMIT = "step-limit"
FORWARD_ERROR = "forwarding-error"


@dataclass(frozen=True)
class Header:
    """Scheme-tagged routing header; data is an opaque hashable tuple."""

    kind: str
    data: tuple

    def __str__(self) -> str:
        return f"{self.kind}{self.data}"


class Forwarder(Protocol):
    def make_header(self, s: int, t: int) -> Header: ...

    def forward(self, v: int, header: Header) -> tuple[int | None, Header]: ...


@dataclass
class SimTrace:
    source: int
    target: int
    outcome: str
    hops: list[tuple[int, int, Header]] = field(default_factory=list)
    total_length: int = 0
    final_node: int | None = None
    detail: str = ""

    @property
    def delivered(self) -> bool:
        return self.outcome == DELIVERED


def simulate(
    g: WeightedGraph,
    forwarder: Forwarder,
    s: int,
    t: int,
    step_limit: int | None = None,
    record_hops: bool = True,
) -> SimTrace:
    if step_limit is None:
        step_limit = g.n * g.n
    trace = SimTrace(source=s, target=t, outcome=STEP_LIMIT)
    if s == t:
        trace.outcome = DELIVERED
        trace.final_node = s
        return trace
    header = forwarder.make_header(s, t)
    v = s
    seen: set[tuple[int, Header]] = set()
    for _ in range(step_limit):
        key = (v, header)
        if key in seen:
            trace.outcome = LOOP
            trace.final_node = v
            trace.detail = f"revisited node {v} with header {header}"
            return trace
        seen.add(key)
        try:
            port, new_header = forwarder.forward(v, header)
        except GraphError as exc:
            trace.outcome = FORWARD_ERROR
            trace.final_node = v
            trace.detail = str(exc)
            return trace
        if port is None:
            trace.final_node = v
            if v == t:
                trace.outcome = DELIVERED
            else:
                trace.outcome = FORWARD_ERROR
                trace.detail = f"delivered at {v}, expected {t}"
            return trace
        try:
            nxt, w = g.via_port(v, port)
        except GraphError as exc:
            trace.outcome = FORWARD_ERROR
            trace.final_node = v
            trace.detail = str(exc)
            return trace
        if record_hops:
            trace.hops.append((v, port, header))
        trace.total_length += w
        v = nxt
        header = new_header
    trace.final_node = v
    trace.detail = f"no delivery within {step_limit} steps"
    return trace


@dataclass
class StretchReport:
    """Realized-vs-shortest route lengths over a set of ordered pairs.

    records hold (s, t, delta, realized) for delivered pairs; failures hold
    (s, t, outcome) for everything else.  Ratios are realized/delta with the
    convention that a 0-hop pair (s == t) is excluded up front.
    """

    records: list[tuple[int, int, int, int]] = field(default_factory=list)
    failures: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def max_ratio(self) -> float:
        return max((r / d for _, _, d, r in self.records), default=0.0)

    @property
    def mean_ratio(self) -> float:
        if not self.records:
            return 0.0
        return sum(r / d for _, _, d, r in self.records) / len(self.records)

    def ratio_histogram(self, edges=(1.0, 1.5, 2.0, 3.0, 5.0)) -> dict[str, int]:
        buckets = {f"<= {e}": 0 for e in edges}
        buckets[f"> {edges[-1]}"] = 0
        for _, _, d, r in self.records:
            ratio = r / d
            for e in edges:
                if ratio <= e + 1e-12:
                    buckets[f"<= {e}"] += 1
                    break
            else:
                buckets[f"> {edges[-1]}"] += 1
        return buckets

    def worst_pairs(self, count: int = 5) -> list[dict]:
        ranked = sorted(self.records, key=lambda rec: rec[3] / rec[2], reverse=True)
        return [
            {"pair": [s, t], "delta": d, "realized": r, "ratio": r / d}
            for s, t, d, r in ranked[:count]
        ]

    def to_records(self) -> list[dict]:
        out = [
            {"pair": [s, t], "delta": d, "realized": r, "ratio": r / d}
            for s, t, d, r in self.records
        ]
        out += [
            {"pair": [s, t], "outcome": outcome} for s, t, outcome in self.failures
        ]
        return out

    def to_text(self) -> str:
        lines = [
            f"pairs {len(self.records) + len(self.failures)}"
            f" delivered {len(self.records)} failed {len(self.failures)}",
            f"max-ratio {self.max_ratio:.6f}",
            f"mean-ratio {self.mean_ratio:.6f}",
        ]
        for s, t, outcome in self.failures:
            lines.append(f"fail {s} {t} {outcome}")
        return "\n".join(lines) + "\n"


def measure_stretch(
    g: WeightedGraph,
    forwarder: Forwarder,
    oracle: DistanceOracle,
    pairs: str | list[tuple[int, int]] = "all",
    sample_size: int = 0,
    seed: int = 0,
    step_limit: int | None = None,
) -> StretchReport:
    """Route ordered pairs and compare realized lengths with the oracle.

    pairs='all' runs every ordered pair s != t; pairs='sample' draws
    sample_size pairs deterministically from seed; an explicit list is used
    as given.
    """
    import random

    if pairs == "all":
        todo = [(s, t) for s in g.nodes for t in g.nodes if s != t]
    elif pairs == "sample":
        rng = random.Random(seed)
        todo = []
        nodes = list(g.nodes)
        for _ in range(sample_size):
            s, t = rng.sample(nodes, 2)
            todo.append((s, t))
    else:
        todo = list(pairs)
    report = StretchReport()
    for s, t in todo:
        trace = simulate(g, forwarder, s, t, step_limit=step_limit, record_hops=False)
        if trace.delivered:
            report.records.append((s, t, oracle.dist(s, t), trace.total_length))
        else:
            report.failures.append((s, t, trace.outcome))
    return report
