from typing import Optional

from src.common.numbers import clamp
from src.config.config import MD_ALPHA
from src.metrics.types import HelloWindow


def delivery_ratio(window: HelloWindow, now: float) -> float:
    """Receipts within the trailing w seconds divided by the HELLOs expected in w, clamped to [0, 1]."""
    expected = window.expected_count
    if expected <= 0:
        raise ValueError("expected_count must be positive")
    received = window.count(now)
    if received == 0:
        return 0.0
    return clamp(received / expected)


def ratio_from_count(heard: int, expected: int) -> float:
    """Forward ratio from the count a neighbor reports hearing from us."""
    if expected <= 0:
        raise ValueError("expected_count must be positive")
    return clamp(heard / expected)


def update_delay_estimate(current: Optional[float], sample: float, alpha: float = MD_ALPHA) -> float:
    """EWMA of one-way probe delays; the first sample is taken as-is."""
    if sample < 0:
        raise ValueError(f"delay sample must be non-negative, got {sample!r}")
    if current is None:
        return sample
    return (1.0 - alpha) * current + alpha * sample
