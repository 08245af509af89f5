from .events import Event, EventKind, EventQueue
from .channel import Direction, Packet, PacketKind, transmit, transmission_delay
from .traffic import CbrFlow, draw_flows
from .stats import SimStats, RunMetrics, finalize_stats, delivery_ratio, drop_ratio
from .trace import EventTrace
from .engine import ForwardAction, Simulator, derive_rng, run

__all__ = [
    "Event",
    "EventKind",
    "EventQueue",
    "Direction",
    "Packet",
    "PacketKind",
    "transmit",
    "transmission_delay",
    "CbrFlow",
    "draw_flows",
    "SimStats",
    "RunMetrics",
    "finalize_stats",
    "delivery_ratio",
    "drop_ratio",
    "EventTrace",
    "ForwardAction",
    "Simulator",
    "derive_rng",
    "run",
]
