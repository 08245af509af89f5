from .types import NodeId, Position, LinkQuality, Topology
from .channel import link_delivery_probability
from .generator import generate_topology, connectivity_check, connected_topology
from .serialize import dumps, loads, save_topology, load_topology

__all__ = [
    "NodeId",
    "Position",
    "LinkQuality",
    "Topology",
    "link_delivery_probability",
    "generate_topology",
    "connectivity_check",
    "connected_topology",
    "dumps",
    "loads",
    "save_topology",
    "load_topology",
]
