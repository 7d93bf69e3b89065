from __future__ import annotations

from certroute.graph import generate_graph
from certroute.oracle import build_oracle
from certroute.sim import (
    DELIVERED,
    FORWARD_ERROR,
    LOOP,
    STEP_LIMIT,
    Header,
    measure_stretch,
    simulate,
)
from certroute.tz import build_tz


class OraclePathForwarder:
    """Follows next_min; the header is just the target id."""

    def __init__(self, oracle):
        self.oracle = oracle

    def make_header(self, s, t):
        return Header("target", (t,))

    def forward(self, v, header):
        (t,) = header.data
        if v == t:
            return None, header
        return self.oracle.next_min(v, t), header


def test_source_equals_target(path3):
    oracle = build_oracle(path3)
    trace = simulate(path3, OraclePathForwarder(oracle), 2, 2)
    assert trace.outcome == DELIVERED
    assert trace.hops == [] and trace.total_length == 0


def test_tz_on_path_delivers_shortest(path3):
    oracle = build_oracle(path3)
    scheme = build_tz(path3, oracle, seed=1)
    trace = simulate(path3, scheme.forwarder(), 1, 3)
    assert trace.outcome == DELIVERED
    assert trace.total_length == 2 == oracle.dist(1, 3)


def test_invalid_port_is_forwarding_error(path3):
    class Bad:
        def make_header(self, s, t):
            return Header("t", (t,))

        def forward(self, v, header):
            return 99, header

    trace = simulate(path3, Bad(), 1, 3)
    assert trace.outcome == FORWARD_ERROR


def test_wrong_delivery_is_forwarding_error(path3):
    class DeliverEarly:
        def make_header(self, s, t):
            return Header("t", (t,))

        def forward(self, v, header):
            return None, header

    trace = simulate(path3, DeliverEarly(), 1, 3)
    assert trace.outcome == FORWARD_ERROR


def test_loop_detected_on_same_header(path3):
    class PingPong:
        def make_header(self, s, t):
            return Header("t", (t,))

        def forward(self, v, header):
            return 1, header  # port 1 always exists

    trace = simulate(path3, PingPong(), 1, 3)
    assert trace.outcome == LOOP


def test_header_change_is_not_a_loop_but_hits_step_limit(path3):
    class Wanderer:
        def make_header(self, s, t):
            return Header("n", (0,))

        def forward(self, v, header):
            (i,) = header.data
            return 1, Header("n", (i + 1,))

    trace = simulate(path3, Wanderer(), 1, 3, step_limit=50)
    assert trace.outcome == STEP_LIMIT


def test_trace_hops_are_adjacent_and_lengths_add_up(random32, random32_oracle):
    fwd = OraclePathForwarder(random32_oracle)
    trace = simulate(random32, fwd, random32.nodes[0], random32.nodes[-1])
    assert trace.outcome == DELIVERED
    total = 0
    at = trace.source
    for node, port, _ in trace.hops:
        assert node == at
        at, w = random32.via_port(node, port)
        total += w
    assert at == trace.target
    assert total == trace.total_length


def test_star_stretch_is_one():
    g = generate_graph("star", 6, (1, 1), seed=2)
    oracle = build_oracle(g)
    scheme = build_tz(g, oracle, seed=5)
    report = measure_stretch(g, scheme.forwarder(), oracle, pairs="all")
    assert not report.failures
    assert report.max_ratio == 1.0


def test_tz_random_graph_all_pairs_delivered_stretch_three():
    g = generate_graph("random-connected", 64, (1, 10), seed=9)
    oracle = build_oracle(g)
    scheme = build_tz(g, oracle, seed=9)
    report = measure_stretch(g, scheme.forwarder(), oracle, pairs="all")
    assert not report.failures
    assert report.max_ratio <= 3.0
    assert all(r >= d for _, _, d, r in report.records)


def test_stretch_report_serialization(random32, random32_oracle):
    fwd = OraclePathForwarder(random32_oracle)
    report = measure_stretch(random32, fwd, random32_oracle, pairs="sample", sample_size=20, seed=4)
    recs = report.to_records()
    assert len(recs) == 20
    assert {"pair", "delta", "realized", "ratio"} <= set(recs[0])
    text = report.to_text()
    assert text.startswith("pairs 20 delivered")
