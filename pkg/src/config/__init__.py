from .config import (
    RADIO_RANGE,
    LINK_CAPACITY,
    DEFAULT_SEEDS,
    DEFAULT_RATES,
)

__all__ = [
    "RADIO_RANGE",
    "LINK_CAPACITY",
    "DEFAULT_SEEDS",
    "DEFAULT_RATES",
]
