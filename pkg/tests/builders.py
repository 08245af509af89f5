from typing import Dict, Iterable, Mapping, Optional, Tuple

from src.metrics.types import HelloWindow, LinkEstimate
from src.olsr.neighbors import rebuild_two_hop
from src.olsr.types import NeighborEntry, NeighborState
from src.topology.types import LinkQuality, Position, Topology

PERFECT = LinkQuality(1.0, 1.0)


def make_topology(
    n: int,
    edges: Iterable[Tuple[int, int]],
    quality: LinkQuality = PERFECT,
    capacities: Optional[Mapping[Tuple[int, int], float]] = None,
) -> Topology:
    """Hand-built topology; positions are placeholders on a line."""
    links: Dict[Tuple[int, int], LinkQuality] = {}
    caps: Dict[Tuple[int, int], float] = {}
    for i, j in edges:
        links[(i, j)] = quality
        links[(j, i)] = quality.swapped()
        cap = (capacities or {}).get((i, j), (capacities or {}).get((j, i), 1.0))
        caps[(i, j)] = caps[(j, i)] = float(cap)
    return Topology(
        positions=tuple(Position(10.0 * i, 0.0) for i in range(n)),
        links=links,
        radio_range=100.0,
        side=10.0 * n,
        capacities=caps,
    )


def line_topology(n: int) -> Topology:
    return make_topology(n, [(i, i + 1) for i in range(n - 1)])


def make_state(
    node: int,
    neighbors: Mapping[int, Iterable[int]],
    asymmetric: Iterable[int] = (),
) -> NeighborState:
    """NeighborState whose 1-hop entries report the given neighbor sets."""
    asym = set(asymmetric)
    state = NeighborState(node=node)
    for v, reported in neighbors.items():
        state.one_hop[v] = NeighborEntry(
            window=HelloWindow(window_seconds=20.0, hello_interval=2.0),
            estimate=LinkEstimate(1.0, 1.0),
            last_heard=0.0,
            symmetric=v not in asym,
            reported=frozenset(reported),
        )
    rebuild_two_hop(state)
    return state
