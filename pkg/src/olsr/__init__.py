from .types import (
    OlsrConfig,
    TcRedundancy,
    HelloLink,
    HelloMessage,
    TcMessage,
    NeighborEntry,
    NeighborState,
    RouteEntry,
    RoutingTable,
    ForwardDecision,
)
from .profiles import PROFILES, load_profile
from .neighbors import process_hello, build_hello, expire_neighbors
from .mpr import select_mprs, maybe_trigger_tc, covers_two_hop
from .tc import generate_tc, flood_tc, TopologyTable
from .routing import compute_routing_table, dump_routes, walk_route
from .node import OlsrNode

__all__ = [
    "OlsrConfig",
    "TcRedundancy",
    "HelloLink",
    "HelloMessage",
    "TcMessage",
    "NeighborEntry",
    "NeighborState",
    "RouteEntry",
    "RoutingTable",
    "ForwardDecision",
    "PROFILES",
    "load_profile",
    "process_hello",
    "build_hello",
    "expire_neighbors",
    "select_mprs",
    "maybe_trigger_tc",
    "covers_two_hop",
    "generate_tc",
    "flood_tc",
    "TopologyTable",
    "compute_routing_table",
    "dump_routes",
    "walk_route",
    "OlsrNode",
]
