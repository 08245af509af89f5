import random

import networkx as nx
import pytest

from src.metrics.types import LinkEstimate, MetricKind
from src.olsr.mpr import covers_two_hop, maybe_trigger_tc, select_mprs
from src.olsr.neighbors import build_hello, expire_neighbors, process_hello
from src.olsr.node import OlsrNode
from src.olsr.profiles import PROFILES, load_profile
from src.olsr.routing import compute_routing_table, dump_routes, walk_route
from src.olsr.tc import TopologyTable, flood_tc, generate_tc, relayed
from src.olsr.types import HelloLink, HelloMessage, NeighborState, OlsrConfig, TcMessage, TcRedundancy
from src.sim.engine import Simulator
from src.topology.generator import connected_topology
from tests.builders import make_state
from tests.oracles import best_paths, min_mpr_cover, random_graph_neighbors, random_link_state, reachable

DEFAULT = load_profile("olsr-default")


# -- profiles ---------------------------------------------------------------------------


def test_profiles():
    assert (DEFAULT.hello_interval, DEFAULT.tc_interval, DEFAULT.window_w) == (2.0, 5.0, 20.0)
    eolsr = load_profile("EOLSR")
    assert (eolsr.hello_interval, eolsr.tc_interval, eolsr.window_w) == (1.0, 15.0, 10.0)
    assert DEFAULT.expected_hellos == eolsr.expected_hellos == 10
    assert DEFAULT.neighbor_hold == 6.0 and DEFAULT.topology_hold == 15.0
    with pytest.raises(ValueError):
        load_profile("aodv")


def test_config_rejects_window_not_multiple_of_interval():
    with pytest.raises(ValueError):
        OlsrConfig(hello_interval=2.0, tc_interval=5.0, window_w=5.0)
    with pytest.raises(ValueError):
        OlsrConfig(hello_interval=0.0, tc_interval=5.0, window_w=5.0)


# -- neighbor sensing -----------------------------------------------------------------------


def test_first_hello_creates_neighbor_and_two_hop_entry():
    state = NeighborState(node=0)
    msg = HelloMessage(origin=3, neighbor_list=(HelloLink(0, 5), HelloLink(7, 3)), emitted_at=1.0)
    process_hello(state, msg, 1.0, DEFAULT)

    entry = state.one_hop[3]
    assert list(entry.window.receipt_timestamps) == [1.0]
    assert entry.symmetric
    assert entry.estimate.fd == 0.5
    assert entry.estimate.rd == pytest.approx(0.1)
    assert state.two_hop == {7: {3}}


def test_asymmetric_neighbor_contributes_no_two_hop():
    state = NeighborState(node=0)
    process_hello(state, HelloMessage(origin=3, neighbor_list=(HelloLink(7, 3),), emitted_at=1.0), 1.0, DEFAULT)
    assert not state.one_hop[3].symmetric
    assert state.one_hop[3].estimate.fd == 0.0
    assert state.two_hop == {}


def test_own_hello_rejected():
    state = NeighborState(node=4)
    with pytest.raises(ValueError):
        process_hello(state, HelloMessage(origin=4, neighbor_list=(), emitted_at=0.0), 0.0, DEFAULT)
    with pytest.raises(ValueError):
        HelloMessage(origin=4, neighbor_list=(HelloLink(4, 1),), emitted_at=0.0)


def test_hello_records_mpr_selection():
    state = NeighborState(node=0)
    msg = HelloMessage(origin=2, neighbor_list=(HelloLink(0, 1),), emitted_at=1.0, mprs=frozenset({0}))
    process_hello(state, msg, 1.0, DEFAULT)
    assert state.mpr_selectors == {2}
    msg = HelloMessage(origin=2, neighbor_list=(HelloLink(0, 2),), emitted_at=3.0)
    process_hello(state, msg, 3.0, DEFAULT)
    assert state.mpr_selectors == set()


def test_build_hello_reports_heard_counts():
    state = NeighborState(node=0)
    for t in (2.0, 4.0, 6.0):
        process_hello(state, HelloMessage(origin=5, neighbor_list=(), emitted_at=t), t, DEFAULT)
    hello = build_hello(state, 6.0, DEFAULT)
    assert hello.origin == 0
    assert hello.neighbor_list == (HelloLink(5, 3, None),)
    assert hello.size_bytes == 16 + 8


def test_neighbors_expire_after_hold_time():
    state = NeighborState(node=0)
    process_hello(state, HelloMessage(origin=1, neighbor_list=(HelloLink(0, 1), HelloLink(9, 1)), emitted_at=1.0), 1.0, DEFAULT)
    state.mpr_set = {1}
    assert not expire_neighbors(state, 7.0, DEFAULT.neighbor_hold)
    assert expire_neighbors(state, 7.5, DEFAULT.neighbor_hold)
    assert state.one_hop == {} and state.two_hop == {} and state.mpr_set == set()


# -- MPR selection --------------------------------------------------------------------------


def test_select_mprs_examples():
    assert select_mprs(make_state(0, {1: {0}})) == set()
    assert select_mprs(make_state(0, {1: {0, 2}})) == {1}


def test_select_mprs_prefers_higher_degree_then_smaller_id():
    state = make_state(0, {1: {0, 5}, 2: {0, 5, 6}, 6: set()}, asymmetric={6})
    assert state.two_hop == {5: {1, 2}}
    assert select_mprs(state) == {2}

    tied = make_state(0, {3: {0, 5}, 2: {0, 5}})
    assert select_mprs(tied) == {2}


def test_select_mprs_is_idempotent():
    state = make_state(0, {1: {0, 4, 5}, 2: {0, 5, 6}, 3: {0, 6, 7}})
    first = select_mprs(state)
    assert select_mprs(state) == first
    assert covers_two_hop(state, first)


def test_stale_two_hop_entries_are_dropped():
    state = make_state(0, {1: {0, 4}})
    state.one_hop[1].symmetric = False
    assert select_mprs(state) == set()
    assert state.two_hop == {}


def test_maybe_trigger_tc_examples():
    state = NeighborState(node=0)
    with pytest.raises(ValueError):
        maybe_trigger_tc(state)
    state.selections = 1
    state.mpr_set = {1, 2}
    assert maybe_trigger_tc(state)
    assert not maybe_trigger_tc(state)
    state.mpr_set = {1, 3}
    assert maybe_trigger_tc(state)

    fresh = NeighborState(node=0, selections=1)
    assert not maybe_trigger_tc(fresh)
    fresh.mpr_set = {4}
    assert maybe_trigger_tc(fresh)


def _random_state(rng: random.Random) -> NeighborState:
    n = rng.randint(2, 10)
    adj = random_graph_neighbors(rng, n, rng.uniform(0.2, 0.8))
    asym = {v for v in adj[0] if rng.random() < 0.15}
    return make_state(0, {v: adj[v] for v in adj[0]}, asymmetric=asym)


def test_mpr_coverage_and_quality_on_random_states():
    rng = random.Random(2024)
    for _ in range(1200):
        state = _random_state(rng)
        mprs = select_mprs(state)
        assert mprs <= set(state.symmetric_neighbors())
        assert covers_two_hop(state, mprs)
        assert len(mprs) <= 2 * min_mpr_cover(state)


# -- topology control -----------------------------------------------------------------------


def test_generate_tc_advertises_mpr_selectors():
    state = make_state(0, {1: {0}, 2: {0}, 3: {0}})
    state.mpr_selectors = {1, 3}
    first = generate_tc(state, DEFAULT, 5.0, triggered=False)
    second = generate_tc(state, DEFAULT, 7.3, triggered=True)
    assert [v for v, _ in first.advertised] == [1, 3]
    assert (first.sequence, second.sequence) == (1, 2)
    assert second.triggered and second.emitted_at == 7.3
    assert first.size_bytes == 16 + 2 * 8

    everyone = OlsrConfig(**{**DEFAULT.model_dump(), "tc_redundancy": TcRedundancy.ALL_NEIGHBORS})
    assert [v for v, _ in generate_tc(state, everyone, 10.0, False).advertised] == [1, 2, 3]


def _tc(origin: int, sequence: int, ttl: int = 255) -> TcMessage:
    return TcMessage(origin=origin, advertised=((4, LinkEstimate(1.0, 1.0)),), sequence=sequence, ttl=ttl)


def test_flood_tc_examples():
    state = NeighborState(node=5, mpr_selectors={1})
    table = TopologyTable()

    decision = flood_tc(_tc(9, 1), state, table, sender=2, now=1.0, config=DEFAULT)
    assert (decision.process, decision.forward) == (True, False)

    decision = flood_tc(_tc(9, 2), state, table, sender=1, now=2.0, config=DEFAULT)
    assert (decision.process, decision.forward) == (True, True)

    duplicate = flood_tc(_tc(9, 2), state, table, sender=1, now=2.1, config=DEFAULT)
    assert (duplicate.process, duplicate.forward) == (False, False)

    own = flood_tc(_tc(5, 1), state, table, sender=1, now=3.0, config=DEFAULT)
    assert not own.process

    last_hop = flood_tc(_tc(8, 1, ttl=1), state, table, sender=1, now=3.0, config=DEFAULT)
    assert (last_hop.process, last_hop.forward) == (True, False)
    assert relayed(_tc(8, 1, ttl=3)).ttl == 2


def test_topology_table_keeps_sequence_after_expiry():
    table = TopologyTable()
    assert table.update(_tc(9, 3), now=0.0, hold_time=15.0)
    assert not table.update(_tc(9, 4), now=1.0, hold_time=15.0)
    assert table.link_state() == {(9, 4): LinkEstimate(1.0, 1.0)}
    assert table.expire(20.0)
    assert len(table) == 0
    assert table.is_stale(9, 4)
    assert not table.is_stale(9, 5)


# -- routing --------------------------------------------------------------------------------


def _both_ways(pairs, estimate):
    out = {}
    for u, v in pairs:
        out[(u, v)] = estimate
        out[(v, u)] = estimate
    return out


def test_routes_on_perfect_triangle():
    links = _both_ways([(0, 1), (1, 2), (0, 2)], LinkEstimate(1.0, 1.0))
    table = compute_routing_table(0, links, MetricKind.ETX)
    assert {d: (e.next_hop, e.cost.value) for d, e in table.entries.items()} == {1: (1, 1.0), 2: (2, 1.0)}


def test_weak_direct_link_is_avoided():
    links = _both_ways([(0, 2), (2, 1)], LinkEstimate(1.0, 1.0))
    links.update(_both_ways([(0, 1)], LinkEstimate(0.2, 1.0)))

    etx = compute_routing_table(0, links, MetricKind.ETX)
    assert etx.next_hop(1) == 2 and etx.entries[1].cost.value == 2.0

    ml = compute_routing_table(0, links, "ml")
    assert ml.next_hop(1) == 2 and ml.entries[1].cost.value == 1.0

    inv = compute_routing_table(0, links, MetricKind.INVETX)
    assert inv.next_hop(1) == 1 and inv.entries[1].cost.hops == 1


def test_md_skips_links_without_delay():
    links = {(0, 1): LinkEstimate(1.0, 1.0, None), (0, 2): LinkEstimate(1.0, 1.0, 0.01),
             (2, 1): LinkEstimate(1.0, 1.0, 0.02)}
    table = compute_routing_table(0, links, MetricKind.MD)
    assert table.next_hop(1) == 2
    assert table.entries[1].cost.value == pytest.approx(0.03)


def test_equal_cost_routes_pick_smaller_next_hop():
    links = _both_ways([(0, 2), (2, 3), (0, 1), (1, 3)], LinkEstimate(1.0, 1.0))
    assert compute_routing_table(0, links, MetricKind.ETX).next_hop(3) == 1


@pytest.mark.parametrize("kind", list(MetricKind))
def test_perfect_links_reduce_to_hop_count(kind):
    rng = random.Random(31)
    perfect = LinkEstimate(1.0, 1.0, 0.01)
    for _ in range(60):
        n = rng.randint(2, 8)
        links = {k: perfect for k in random_link_state(rng, n)}
        table = compute_routing_table(0, links, kind)
        g = nx.DiGraph(list(links))
        g.add_node(0)
        hops = nx.single_source_shortest_path_length(g, 0)
        assert set(table.entries) == set(hops) - {0}
        for dest, entry in table.entries.items():
            assert entry.cost.hops == hops[dest]
            if kind is MetricKind.ETX:
                assert entry.cost.value == hops[dest]


@pytest.mark.parametrize("kind", list(MetricKind))
def test_routing_matches_exhaustive_enumeration(kind):
    rng = random.Random(77)
    for _ in range(150):
        n = rng.randint(2, 8)
        links = random_link_state(rng, n)
        table = compute_routing_table(0, links, kind)
        oracle = best_paths(kind, links, 0)
        assert set(table.entries) == set(oracle) == reachable(links, kind, 0)
        for dest, best in oracle.items():
            got = table.entries[dest].cost
            assert got.value == pytest.approx(best.value, rel=1e-12)
            if kind is MetricKind.INVETX:
                assert got.hops == best.hops
            assert (0, table.next_hop(dest)) in links


def test_dump_routes_format():
    links = _both_ways([(0, 1)], LinkEstimate(1.0, 1.0))
    tables = [compute_routing_table(1, links, "etx"), compute_routing_table(0, links, "etx")]
    assert dump_routes(tables) == ["D 0 1 1 1.0", "D 1 0 0 1.0"]


# -- node facade and converged networks -----------------------------------------------------


def test_node_reports_mpr_trigger():
    node = OlsrNode(0, DEFAULT, "etx")
    links_changed, trigger = node.receive_hello(
        HelloMessage(origin=1, neighbor_list=(HelloLink(0, 1), HelloLink(2, 1)), emitted_at=2.0), 2.0
    )
    assert links_changed and trigger
    assert node.mpr_set == {1}
    assert node.recompute_routes()
    assert node.next_hop(1) == 1
    assert node.next_hop(2) is None


def test_node_records_probe_delay_for_known_neighbor():
    node = OlsrNode(0, DEFAULT, "md")
    node.receive_hello(HelloMessage(origin=1, neighbor_list=(), emitted_at=2.0), 2.0)
    node.record_probe_delay(1, 0.004)
    node.record_probe_delay(1, 0.004)
    node.record_probe_delay(7, 0.5)
    assert node.state.one_hop[1].delay_in == pytest.approx(0.004)
    assert 7 not in node.state.one_hop


@pytest.mark.parametrize("metric", ["etx", "invetx"])
def test_converged_routes_are_loop_free(metric):
    topology = connected_topology(10, side=500.0, radio_range=250.0, seed=5).lossless()
    sim = Simulator(topology, PROFILES["olsr-default"], [], metric, 80.0, seed=5, jitter=False)
    sim.run()
    tables = sim.routing_tables()
    for src in topology.node_ids():
        for dst in topology.node_ids():
            if src == dst:
                continue
            hop = tables[src].next_hop(dst)
            assert hop is not None and topology.has_link(src, hop)
            path = walk_route(tables, src, dst, max_hops=topology.n)
            assert path[-1] == dst
            assert len(path) == len(set(path))
