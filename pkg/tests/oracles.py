"""Brute-force references the fast implementations are checked against."""
import itertools
import random
from dataclasses import replace
from typing import Dict, Mapping, Set, Tuple

import networkx as nx

from src.metrics.paths import better, link_allowed, path_cost
from src.metrics.types import LinkEstimate, MetricKind, PathCost
from src.olsr.mpr import covers_two_hop
from src.olsr.types import NeighborState
from src.topology.types import Topology

LinkState = Dict[Tuple[int, int], LinkEstimate]


def best_paths(kind: MetricKind, links: Mapping[Tuple[int, int], LinkEstimate], src: int) -> Dict[int, PathCost]:
    """Best cost per destination over every simple path of allowed links."""
    g = nx.DiGraph()
    g.add_node(src)
    g.add_edges_from(k for k, est in links.items() if k[0] != k[1] and link_allowed(kind, est))
    best: Dict[int, PathCost] = {}
    for dest in g.nodes:
        if dest == src:
            continue
        for path in nx.all_simple_paths(g, src, dest):
            cost = path_cost(kind, [links[(a, b)] for a, b in zip(path, path[1:])])
            cost = replace(cost, next_hop=path[1])
            if dest not in best or better(kind, cost, best[dest]):
                best[dest] = cost
    return best


def random_link_state(rng: random.Random, n: int, density: float = 0.45) -> LinkState:
    """Directed estimates over a random graph; some links unusable, some without a delay."""
    links: LinkState = {}
    for u, v in itertools.permutations(range(n), 2):
        if u > v or rng.random() > density:
            continue
        for a, b in ((u, v), (v, u)):
            fd = 0.0 if rng.random() < 0.05 else rng.uniform(0.1, 1.0)
            rd = rng.uniform(0.1, 1.0)
            delay = None if rng.random() < 0.05 else rng.uniform(0.001, 0.05)
            links[(a, b)] = LinkEstimate(fd, rd, delay)
    return links


def min_mpr_cover(state: NeighborState) -> int:
    """Size of the smallest set of symmetric neighbors covering the 2-hop set."""
    candidates = state.symmetric_neighbors()
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            if covers_two_hop(state, set(combo)):
                return size
    raise AssertionError("2-hop set cannot be covered")


def widest_by_enumeration(topology: Topology, s: int, t: int) -> float:
    g = nx.Graph()
    g.add_nodes_from(topology.node_ids())
    g.add_edges_from(topology.undirected_links())
    best = 0.0
    for path in nx.all_simple_paths(g, s, t):
        width = min(topology.capacity(a, b) for a, b in zip(path, path[1:]))
        best = max(best, width)
    return best


def random_graph_neighbors(rng: random.Random, n: int, density: float) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {i: set() for i in range(n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < density:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def reachable(links: Mapping[Tuple[int, int], LinkEstimate], kind: MetricKind, src: int) -> Set[int]:
    g = nx.DiGraph()
    g.add_node(src)
    g.add_edges_from(k for k, est in links.items() if link_allowed(kind, est))
    return set(nx.descendants(g, src))

