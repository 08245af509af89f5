import pytest

from src.topology.channel import link_delivery_probability
from src.topology.generator import connected_topology, connectivity_check, generate_topology
from src.topology.serialize import dumps, link_lines, loads
from src.topology.types import LinkQuality, Position
from tests.builders import line_topology, make_topology


def test_delivery_probability_examples():
    assert link_delivery_probability(0.0, 250.0) == 1.0
    assert link_delivery_probability(250.0, 250.0) == 0.0
    assert link_delivery_probability(0.75 * 250.0, 250.0) == pytest.approx(0.5)
    assert link_delivery_probability(400.0, 250.0) == 0.0


def test_delivery_probability_monotone():
    values = [link_delivery_probability(d, 100.0) for d in range(0, 121)]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert all(0.0 <= v <= 1.0 for v in values)


@pytest.mark.parametrize("distance, radio_range", [(-1.0, 100.0), (10.0, 0.0)])
def test_delivery_probability_rejects_bad_input(distance, radio_range):
    with pytest.raises(ValueError):
        link_delivery_probability(distance, radio_range)


def test_generate_two_nodes_in_small_box():
    topo = generate_topology(2, side=10.0, radio_range=100.0, seed=1)
    assert topo.n == 2
    assert topo.undirected_links() == [(0, 1)]
    assert topo.link(0, 1) == topo.link(1, 0).swapped()


def test_generate_is_deterministic_and_symmetric():
    a = generate_topology(50, side=1000.0, radio_range=250.0, seed=7)
    b = generate_topology(50, side=1000.0, radio_range=250.0, seed=7)
    assert a == b
    assert a.n == 50
    for (i, j), q in a.links.items():
        assert a.links[(j, i)] == q.swapped()
        assert a.distance(i, j) <= 250.0
        assert 0.0 <= q.fd <= 1.0 and 0.0 <= q.rd <= 1.0


def test_generate_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        generate_topology(1, side=100.0, radio_range=10.0, seed=1)
    with pytest.raises(ValueError):
        generate_topology(5, side=0.0, radio_range=10.0, seed=1)


def test_connectivity_check_examples():
    assert connectivity_check(make_topology(2, [(0, 1)]))
    assert not connectivity_check(make_topology(3, []))


def test_connected_topology_records_regenerations():
    topo = connected_topology(20, side=800.0, radio_range=250.0, seed=11)
    assert connectivity_check(topo)
    assert topo.requested_seed == 11
    assert topo.seed == topo.requested_seed + topo.regenerations


def test_connected_topology_gives_up():
    with pytest.raises(ValueError, match="no connected topology"):
        connected_topology(10, side=10_000.0, radio_range=1.0, seed=1, max_attempts=3)


def test_degrees_and_lossless():
    topo = make_topology(4, [(0, 1), (0, 2), (0, 3)], quality=LinkQuality(0.5, 0.7))
    assert topo.degree(0) == 3
    assert topo.max_degree() == 3
    perfect = topo.lossless()
    assert all(q == LinkQuality(1.0, 1.0) for q in perfect.links.values())
    assert perfect.undirected_links() == topo.undirected_links()


def test_link_quality_bounds():
    with pytest.raises(ValueError):
        LinkQuality(1.2, 0.5)


def test_with_capacity_updates_both_directions():
    topo = line_topology(3).with_capacity(1, 2, 9.0)
    assert topo.capacity(1, 2) == topo.capacity(2, 1) == 9.0
    with pytest.raises(ValueError):
        topo.with_capacity(0, 2, 1.0)


def test_serialized_topology_loads_back_identically():
    topo = generate_topology(12, side=500.0, radio_range=200.0, seed=3)
    assert loads(dumps(topo)) == topo
    assert all(line.startswith("L ") for line in link_lines(topo))


def test_dumps_ends_with_one_link_record_per_undirected_link():
    topo = generate_topology(12, side=500.0, radio_range=200.0, seed=3)
    records = link_lines(topo)
    assert len(records) == len(topo.undirected_links())
    body = dumps(topo).splitlines()
    assert body[len(body) - len(records):] == records
    assert dumps(line_topology(1)).splitlines()[-1] == "N 0 0.0 0.0"


def test_loads_reports_bad_line():
    text = "# radio_range=100.0\n# side=10.0\nN 0 0.0 0.0\nN 1 1.0 bad\n"
    with pytest.raises(ValueError, match="line 4"):
        loads(text)


def test_loads_requires_dense_ids():
    text = "# radio_range=100.0\n# side=10.0\nN 0 0.0 0.0\nN 2 1.0 1.0\n"
    with pytest.raises(ValueError, match="dense"):
        loads(text)


def test_position_distance():
    assert Position(0.0, 0.0).distance_to(Position(3.0, 4.0)) == 5.0
