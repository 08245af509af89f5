from .types import MetricKind, HelloWindow, LinkEstimate, PathCost, InvalidPathError
from .estimators import delivery_ratio, update_delay_estimate
from .paths import (
    etx_path,
    invetx_path,
    ml_path,
    md_path,
    path_cost,
    better,
    computation_cost,
)

__all__ = [
    "MetricKind",
    "HelloWindow",
    "LinkEstimate",
    "PathCost",
    "InvalidPathError",
    "delivery_ratio",
    "update_delay_estimate",
    "etx_path",
    "invetx_path",
    "ml_path",
    "md_path",
    "path_cost",
    "better",
    "computation_cost",
]
