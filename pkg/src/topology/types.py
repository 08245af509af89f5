# src/topology/types.py
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Mapping, Tuple

# Dense index in [0, N); stable for the lifetime of a run.
NodeId = int
LinkKey = Tuple[NodeId, NodeId]


@dataclass(frozen=True)
class Position:
    """Node coordinates in meters, inside the [0, side] square."""
    x: float
    y: float

    def distance_to(self, other: "Position") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class LinkQuality:
    """
    Delivery probabilities of one directed link view.
    For link (i, j): fd is i->j, rd is j->i. The (j, i) entry stores them swapped.
    """
    fd: float
    rd: float

    def __post_init__(self) -> None:
        for name in ("fd", "rd"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"{name} must be a probability in [0,1], got {v!r}")

    def swapped(self) -> "LinkQuality":
        return LinkQuality(fd=self.rd, rd=self.fd)


@dataclass(frozen=True)
class Topology:
    """
    Immutable static network: node positions plus the symmetric link set.

    `links` holds both directions of every link; `capacities` mirrors the key set
    (packets/s, the Cap_ij of the efficiency model).
    """
    positions: Tuple[Position, ...]
    links: Mapping[LinkKey, LinkQuality]
    radio_range: float
    side: float
    capacities: Mapping[LinkKey, float] = field(default_factory=dict)
    seed: int = 0
    requested_seed: int = 0
    regenerations: int = 0

    def __post_init__(self) -> None:
        # neighbor lists are derived once; Topology is shared read-only by runs
        adj: Dict[NodeId, List[NodeId]] = {i: [] for i in range(len(self.positions))}
        for (i, j) in self.links:
            adj[i].append(j)
        object.__setattr__(self, "_adjacency", {i: tuple(sorted(v)) for i, v in adj.items()})

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def nodes(self) -> List[Tuple[NodeId, Position]]:
        return list(enumerate(self.positions))

    def node_ids(self) -> range:
        return range(self.n)

    def neighbors(self, u: NodeId) -> Tuple[NodeId, ...]:
        return self._adjacency[u]  # type: ignore[attr-defined]

    def degree(self, u: NodeId) -> int:
        return len(self.neighbors(u))

    def max_degree(self) -> int:
        """d_max: the largest 1-hop neighborhood in the graph (0 for an empty graph)."""
        return max((self.degree(u) for u in self.node_ids()), default=0)

    def link(self, u: NodeId, v: NodeId) -> LinkQuality:
        return self.links[(u, v)]

    def has_link(self, u: NodeId, v: NodeId) -> bool:
        return (u, v) in self.links

    def capacity(self, u: NodeId, v: NodeId) -> float:
        return self.capacities.get((u, v), 0.0)

    def distance(self, u: NodeId, v: NodeId) -> float:
        return self.positions[u].distance_to(self.positions[v])

    def undirected_links(self) -> List[LinkKey]:
        return sorted((i, j) for (i, j) in self.links if i < j)

    def lossless(self) -> "Topology":
        """Same graph with fd = rd = 1 on every link (analytical cross-checks)."""
        perfect = LinkQuality(1.0, 1.0)
        return replace(self, links={k: perfect for k in self.links})

    def with_capacity(self, u: NodeId, v: NodeId, cap: float) -> "Topology":
        """Copy with Cap_uv (both directions) overridden."""
        if not self.has_link(u, v):
            raise ValueError(f"no link ({u},{v}) to set a capacity on")
        caps = dict(self.capacities)
        caps[(u, v)] = cap
        caps[(v, u)] = cap
        return replace(self, capacities=caps)
