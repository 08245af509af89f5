# src/experiment/compare.py
from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.table import Table

from src.common.numbers import fmt_sig
from src.experiment.results import PERF_FIELDS, ResultRow
from src.metrics.types import MetricKind

logger = logging.getLogger(__name__)

BASELINE = "olsr-default"
ENHANCED = "eolsr"
ALL_METRICS = tuple(m.value for m in MetricKind)
PASS_THRESHOLD = 4


class TrendStatus(str, Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    TIE = "TIE"
    UNTESTABLE = "UNTESTABLE"


class Check(str, Enum):
    HOLD = "hold"
    FAIL = "fail"
    TIE = "tie"


@dataclass
class TrendResult:
    name: str
    description: str
    status: TrendStatus
    checks: List[Dict[str, Any]] = field(default_factory=list)


@dataclass
class TrendReport:
    signs: List[Dict[str, Any]]
    trends: List[TrendResult]

    @property
    def holding(self) -> int:
        return sum(1 for t in self.trends if t.status is TrendStatus.HOLDS)

    @property
    def passed(self) -> bool:
        return self.holding >= PASS_THRESHOLD

    def to_dict(self) -> Dict[str, Any]:
        return {
            "signs": self.signs,
            "trends": [
                {"name": t.name, "description": t.description, "status": t.status.value, "checks": t.checks}
                for t in self.trends
            ],
            "holding": self.holding,
            "passed": self.passed,
        }


def sign(enhanced: Optional[float], baseline: Optional[float]) -> str:
    if enhanced is None or baseline is None:
        return "NA"
    if enhanced > baseline:
        return "+"
    if enhanced < baseline:
        return "-"
    return "TIE"


def _fold(checks: Sequence[Check]) -> TrendStatus:
    if not checks:
        return TrendStatus.UNTESTABLE
    if any(c is Check.FAIL for c in checks):
        return TrendStatus.FAILS
    if all(c is Check.TIE for c in checks):
        return TrendStatus.TIE
    return TrendStatus.HOLDS


def _strict(a: float, b: float, lower_is_better: bool) -> Check:
    if a == b:
        return Check.TIE
    return Check.HOLD if (a < b) == lower_is_better else Check.FAIL


def _at_least(a: float, b: float) -> Check:
    if a == b:
        return Check.TIE
    return Check.HOLD if a > b else Check.FAIL


Index = Dict[Tuple[str, str, float], ResultRow]


def _value(index: Index, profile: str, metric: str, rate: float, name: str) -> Optional[float]:
    row = index.get((profile, metric, rate))
    return None if row is None else row.value(name)


def _rates(index: Index) -> List[float]:
    return sorted({k[2] for k in index})


def _profiles(index: Index) -> List[str]:
    return sorted({k[0] for k in index})


def _pairwise_profiles(index: Index, rate: float, name: str, compare: Callable[[float, float], Check]):
    """(a)/(e): EOLSR vs OLSR per metric at one rate."""
    checks = []
    for metric in ALL_METRICS:
        enh = _value(index, ENHANCED, metric, rate, name)
        base = _value(index, BASELINE, metric, rate, name)
        if enh is None or base is None:
            continue
        checks.append({"metric": metric, "rate": rate, "eolsr": enh, "olsr": base,
                       "check": compare(enh, base).value})
    return checks


def _md_extreme(index: Index, profiles: Sequence[str], rates: Sequence[float], name: str, lowest: bool):
    """(b)/(c): MD is the minimum (or maximum) of the four metrics in every complete cell."""
    checks = []
    for profile in profiles:
        for rate in rates:
            values = {m: _value(index, profile, m, rate, name) for m in ALL_METRICS}
            if any(v is None for v in values.values()):
                continue
            md = values[MetricKind.MD.value]
            others = [v for m, v in values.items() if m != MetricKind.MD.value]
            best_other = min(others) if lowest else max(others)
            check = _strict(md, best_other, lower_is_better=lowest)
            checks.append({"profile": profile, "rate": rate, "md": md, "best_other": best_other,
                           "check": check.value})
    return checks


def compare_profiles(rows: Sequence[ResultRow], high_rate: float = 16.0) -> TrendReport:
    """
    Per-metric/rate signs of (EOLSR - OLSR) for each performance figure, plus the five
    trend checks. A trend with no complete cell to look at is UNTESTABLE.
    """
    index: Index = {(r.profile, r.metric, r.rate): r for r in rows}

    signs: List[Dict[str, Any]] = []
    for metric in ALL_METRICS:
        for rate in _rates(index):
            if (ENHANCED, metric, rate) not in index or (BASELINE, metric, rate) not in index:
                continue
            entry: Dict[str, Any] = {"metric": metric, "rate": rate}
            for name in PERF_FIELDS:
                entry[name] = sign(_value(index, ENHANCED, metric, rate, name),
                                   _value(index, BASELINE, metric, rate, name))
            signs.append(entry)

    rates = _rates(index)
    trend_checks = [
        ("a", "NRL(EOLSR) < NRL(OLSR) per metric at the highest rate",
         _pairwise_profiles(index, high_rate, "nrl", lambda e, b: _strict(e, b, lower_is_better=True))),
        ("b", "E2ED(MD) is the lowest of the four metrics under OLSR at rates >= 8",
         _md_extreme(index, [BASELINE], [r for r in rates if r >= 8], "e2ed", lowest=True)),
        ("c", "NRL(MD) is the highest of the four metrics",
         _md_extreme(index, _profiles(index), rates, "nrl", lowest=False)),
        ("d", "throughput(ML) >= throughput(ETX) at rates >= 10",
         _ml_vs_etx(index, [r for r in rates if r >= 10])),
        ("e", "throughput(EOLSR) >= throughput(OLSR) per metric at the highest rate",
         _pairwise_profiles(index, high_rate, "throughput", _at_least)),
    ]

    trends: List[TrendResult] = []
    for name, description, checks in trend_checks:
        status = _fold([Check(c["check"]) for c in checks])
        if status is TrendStatus.FAILS:
            failed = [c for c in checks if c["check"] == Check.FAIL.value]
            logger.warning("Trend (%s) fails in %d cell(s): %s", name, len(failed), failed)
        trends.append(TrendResult(name, description, status, checks))
    return TrendReport(signs=signs, trends=trends)


def _ml_vs_etx(index: Index, rates: Sequence[float]):
    checks = []
    for profile in _profiles(index):
        for rate in rates:
            ml = _value(index, profile, MetricKind.ML.value, rate, "throughput")
            etx = _value(index, profile, MetricKind.ETX.value, rate, "throughput")
            if ml is None or etx is None:
                continue
            checks.append({"profile": profile, "rate": rate, "ml": ml, "etx": etx,
                           "check": _at_least(ml, etx).value})
    return checks


def render_text(report: TrendReport, rows: Sequence[ResultRow] = ()) -> str:
    console = Console(record=True, width=110, file=io.StringIO(), color_system=None)

    if rows:
        cells = Table(title="Matrix cells (seed means)")
        for col in ("profile", "metric", "rate", "throughput", "e2ed", "nrl", "error"):
            cells.add_column(col)
        for r in rows:
            cells.add_row(r.profile, r.metric, fmt_sig(r.rate), fmt_sig(r.throughput_mean),
                          fmt_sig(r.e2ed_mean), fmt_sig(r.nrl_mean), r.error or "")
        console.print(cells)

    signs = Table(title="sign(EOLSR - OLSR)")
    for col in ("metric", "rate") + PERF_FIELDS:
        signs.add_column(col)
    for s in report.signs:
        signs.add_row(s["metric"], fmt_sig(s["rate"]), *(s[name] for name in PERF_FIELDS))
    console.print(signs)

    trends = Table(title=f"Trends: {report.holding}/{len(report.trends)} hold "
                         f"({'PASS' if report.passed else 'FAIL'})")
    trends.add_column("trend")
    trends.add_column("description")
    trends.add_column("status")
    trends.add_column("cells")
    for t in report.trends:
        trends.add_row(f"({t.name})", t.description, t.status.value, str(len(t.checks)))
    console.print(trends)
    return console.export_text()
