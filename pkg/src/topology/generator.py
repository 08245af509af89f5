# src/topology/generator.py
from __future__ import annotations

import logging
import random
from dataclasses import replace
from typing import Dict, Optional

import networkx as nx

from src.common.numbers import clamp
from src.config.config import (
    JITTER_HIGH,
    JITTER_LOW,
    LINK_CAPACITY,
    MAX_REGENERATIONS,
)
from src.topology.channel import link_delivery_probability
from src.topology.types import LinkKey, LinkQuality, Position, Topology

logger = logging.getLogger(__name__)


def generate_topology(
    n: int,
    side: float,
    radio_range: float,
    seed: int,
    capacity: float = LINK_CAPACITY,
    capacity_overrides: Optional[Dict[LinkKey, float]] = None,
) -> Topology:
    """
    Place n nodes uniformly in a side x side square with a seeded generator and derive
    the link set: a link exists iff the Euclidean distance is within radio_range.

    fd and rd are drawn independently per direction as the distance model times a
    uniform jitter factor in [JITTER_LOW, JITTER_HIGH].
    """
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got n={n}")
    if side <= 0 or radio_range <= 0:
        raise ValueError(f"side and radio_range must be positive (side={side}, radio_range={radio_range})")

    rng = random.Random(seed)
    positions = tuple(Position(rng.uniform(0.0, side), rng.uniform(0.0, side)) for _ in range(n))

    links: Dict[LinkKey, LinkQuality] = {}
    caps: Dict[LinkKey, float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = positions[i].distance_to(positions[j])
            if d > radio_range:
                continue
            p = link_delivery_probability(d, radio_range)
            fd = clamp(p * rng.uniform(JITTER_LOW, JITTER_HIGH))
            rd = clamp(p * rng.uniform(JITTER_LOW, JITTER_HIGH))
            q = LinkQuality(fd=fd, rd=rd)
            links[(i, j)] = q
            links[(j, i)] = q.swapped()
            caps[(i, j)] = caps[(j, i)] = capacity

    for (i, j), cap in (capacity_overrides or {}).items():
        if (i, j) in links:
            caps[(i, j)] = caps[(j, i)] = float(cap)

    return Topology(
        positions=positions,
        links=links,
        radio_range=float(radio_range),
        side=float(side),
        capacities=caps,
        seed=seed,
        requested_seed=seed,
    )


def to_graph(topology: Topology) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(topology.node_ids())
    g.add_edges_from(topology.undirected_links())
    return g


def connectivity_check(topology: Topology) -> bool:
    """True iff breadth-first reachability from node 0 covers every node."""
    if topology.n == 0:
        return False
    reached = nx.node_connected_component(to_graph(topology), 0)
    return len(reached) == topology.n


def connected_topology(
    n: int,
    side: float,
    radio_range: float,
    seed: int,
    capacity: float = LINK_CAPACITY,
    max_attempts: int = MAX_REGENERATIONS,
) -> Topology:
    """
    generate_topology, retried with seed+1 until connected.
    The effective seed and the number of regenerations are kept on the Topology.
    """
    for attempt in range(max_attempts):
        topo = generate_topology(n, side, radio_range, seed + attempt, capacity=capacity)
        if connectivity_check(topo):
            if attempt:
                logger.info("Topology seed %d disconnected; regenerated %d time(s) -> seed %d",
                            seed, attempt, seed + attempt)
            return replace(topo, requested_seed=seed, regenerations=attempt)
    raise ValueError(
        f"no connected topology after {max_attempts} attempts "
        f"(n={n}, side={side}, radio_range={radio_range}, seed={seed})"
    )
