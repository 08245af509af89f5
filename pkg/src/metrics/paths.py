# src/metrics/paths.py
"""
Path-level aggregation for the four quality link metrics.

    ETX     sum of 1/(fd*rd)      lower is better
    InvETX  sum of fd*rd          fewer hops first, then higher sum
    ML      product of fd*rd      higher is better
    MD      sum of delay          lower is better

Sums are left folds in path order so route computation and brute-force enumeration
produce bit-identical values for the same path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Sequence

from src.metrics.types import InvalidPathError, LinkEstimate, MetricKind, PathCost


def _require_usable(links: Sequence[LinkEstimate]) -> None:
    for i, link in enumerate(links):
        if not link.usable:
            raise InvalidPathError(f"link {i} on path is unusable (fd*rd = 0)")


def etx_path(links: Sequence[LinkEstimate]) -> PathCost:
    _require_usable(links)
    value = 0.0
    for link in links:
        value += 1.0 / (link.fd * link.rd)
    return PathCost(MetricKind.ETX, value, len(links))


def invetx_path(links: Sequence[LinkEstimate]) -> PathCost:
    _require_usable(links)
    value = 0.0
    for link in links:
        value += link.fd * link.rd
    return PathCost(MetricKind.INVETX, value, len(links))


def ml_path(links: Sequence[LinkEstimate]) -> PathCost:
    value = 1.0
    for link in links:
        value *= link.fd * link.rd
    return PathCost(MetricKind.ML, value, len(links))


def md_path(links: Sequence[LinkEstimate]) -> PathCost:
    value = 0.0
    for i, link in enumerate(links):
        if link.delay_estimate is None:
            raise InvalidPathError(f"link {i} on path has no delay sample yet")
        value += link.delay_estimate
    return PathCost(MetricKind.MD, value, len(links))


_PATH_FUNCS: Dict[MetricKind, Callable[[Sequence[LinkEstimate]], PathCost]] = {
    MetricKind.ETX: etx_path,
    MetricKind.INVETX: invetx_path,
    MetricKind.ML: ml_path,
    MetricKind.MD: md_path,
}


def path_cost(kind: MetricKind, links: Sequence[LinkEstimate]) -> PathCost:
    return _PATH_FUNCS[MetricKind.parse(kind)](links)


def link_allowed(kind: MetricKind, link: LinkEstimate) -> bool:
    """Whether a single link may appear on a routed path under `kind`."""
    if not link.usable:
        return False
    if kind is MetricKind.MD and link.delay_estimate is None:
        return False
    return True


def _strictly_better_value(kind: MetricKind, a: PathCost, b: PathCost) -> int:
    """+1 if a beats b on the metric alone, -1 if b beats a, 0 on an exact tie. Equal ML products prefer fewer hops."""
    if kind in (MetricKind.ETX, MetricKind.MD):
        return (a.value < b.value) - (a.value > b.value)
    if kind is MetricKind.ML:
        if a.value == b.value:
            return (a.hops < b.hops) - (a.hops > b.hops)
        return (a.value > b.value) - (a.value < b.value)
    # InvETX: hop count first, then the larger sum
    if a.hops != b.hops:
        return 1 if a.hops < b.hops else -1
    return (a.value > b.value) - (a.value < b.value)


def better(kind: MetricKind, a: PathCost, b: PathCost) -> bool:
    """True iff a is strictly preferred to b; exact ties go to the smaller next hop."""
    kind = MetricKind.parse(kind)
    if a.kind is not kind or b.kind is not kind:
        raise ValueError(f"mixed-kind comparison: {a.kind} vs {b.kind} under {kind}")
    cmp = _strictly_better_value(kind, a, b)
    if cmp:
        return cmp > 0
    if a.next_hop is not None and b.next_hop is not None:
        return a.next_hop < b.next_hop
    return False


@dataclass(frozen=True)
class OpCount:
    """Arithmetic work needed to evaluate a path metric."""
    multiplications: int = 0
    divisions: int = 0
    additions: int = 0

    @property
    def total(self) -> int:
        return self.multiplications + self.divisions + self.additions


def computation_cost(kind: MetricKind, hops: int) -> OpCount:
    """
    Operation count to evaluate one path of `hops` links. Every loss-based metric needs
    the fd*rd product per link; ETX additionally inverts each product, ML chains
    products, InvETX only sums. MD sums per-link delays.
    """
    if hops < 0:
        raise ValueError("hops must be non-negative")
    kind = MetricKind.parse(kind)
    joins = max(hops - 1, 0)
    if kind is MetricKind.ETX:
        return OpCount(multiplications=hops, divisions=hops, additions=joins)
    if kind is MetricKind.ML:
        return OpCount(multiplications=hops + joins)
    if kind is MetricKind.INVETX:
        return OpCount(multiplications=hops, additions=joins)
    return OpCount(additions=joins)
