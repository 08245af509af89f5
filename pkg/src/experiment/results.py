# src/experiment/results.py
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, ConfigDict

from src.common.files import PathLike, staged
from src.common.numbers import NA, mean_or_none
from src.sim.stats import SimStats, delivery_ratio, drop_ratio, finalize_stats

logger = logging.getLogger(__name__)

PERF_FIELDS = ("throughput", "e2ed", "nrl")
DROP_FIELDS = ("drops_no_route", "drops_ttl", "drops_queue", "drops_channel")
CONTROL_FIELDS = ("hello_tx", "tc_tx", "md_probe_tx", "tc_originated", "tc_triggered", "tc_forwarded", "mpr_changes")


class SeedResult(BaseModel):
    """Outcome of one (cell, seed) run. Performance values are None when undefined or failed."""
    model_config = ConfigDict(frozen=True)

    seed: int
    throughput: Optional[float] = None
    e2ed: Optional[float] = None
    nrl: Optional[float] = None
    delivery_ratio: Optional[float] = None
    drop_ratio: Optional[float] = None
    counters: Dict[str, int] = {}
    error: Optional[str] = None

    @classmethod
    def from_stats(cls, seed: int, stats: SimStats, measured_duration: float) -> "SeedResult":
        if measured_duration > 0:
            throughput, e2ed, nrl = finalize_stats(stats, measured_duration)
        else:
            throughput, e2ed, nrl = None, None, None
        counters = {k: int(getattr(stats, k)) for k in DROP_FIELDS + CONTROL_FIELDS}
        return cls(
            seed=seed,
            throughput=throughput,
            e2ed=e2ed,
            nrl=nrl,
            delivery_ratio=delivery_ratio(stats),
            drop_ratio=drop_ratio(stats),
            counters=counters,
        )


class ResultRow(BaseModel):
    """One matrix cell: seed means plus the per-seed values they came from."""
    profile: str
    metric: str
    rate: float
    throughput_mean: Optional[float] = None
    e2ed_mean: Optional[float] = None
    nrl_mean: Optional[float] = None
    per_seed: List[SeedResult] = []
    delivery_ratio_mean: Optional[float] = None
    drop_ratio_mean: Optional[float] = None
    counter_means: Dict[str, Optional[float]] = {}
    error: Optional[str] = None

    def value(self, name: str) -> Optional[float]:
        return getattr(self, f"{name}_mean")

    def seed_values(self, name: str) -> List[Optional[float]]:
        return [getattr(s, name) for s in self.per_seed]


def aggregate(scenario: Any, seeds: Sequence[SeedResult]) -> ResultRow:
    """Fold per-seed results into a row; any undefined seed makes the mean undefined."""
    errors = [f"seed {s.seed}: {s.error}" for s in seeds if s.error]
    ok = [s for s in seeds if not s.error]
    counter_means: Dict[str, Optional[float]] = {}
    for name in DROP_FIELDS + CONTROL_FIELDS:
        counter_means[name] = mean_or_none(
            [float(s.counters[name]) for s in ok] if len(ok) == len(seeds) else [None]
        )
    return ResultRow(
        profile=scenario.profile,
        metric=scenario.metric.value,
        rate=scenario.rate,
        throughput_mean=mean_or_none(s.throughput for s in seeds),
        e2ed_mean=mean_or_none(s.e2ed for s in seeds),
        nrl_mean=mean_or_none(s.nrl for s in seeds),
        per_seed=list(seeds),
        delivery_ratio_mean=mean_or_none(s.delivery_ratio for s in seeds),
        drop_ratio_mean=mean_or_none(s.drop_ratio for s in seeds),
        counter_means=counter_means,
        error="; ".join(errors) or None,
    )


def _columns(n_seeds: int) -> List[str]:
    cols = ["profile", "metric", "rate", "throughput_mean", "e2ed_mean", "nrl_mean"]
    for i in range(1, n_seeds + 1):
        cols += [f"seed{i}_{name}" for name in PERF_FIELDS]
    cols += ["delivery_ratio_mean", "drop_ratio_mean"]
    cols += [f"{name}_mean" for name in DROP_FIELDS + CONTROL_FIELDS]
    cols += ["seed_ids", "error"]
    return cols


def to_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    n_seeds = max(len(r.per_seed) for r in rows)
    records: List[Dict[str, Any]] = []
    for r in rows:
        rec: Dict[str, Any] = {
            "profile": r.profile,
            "metric": r.metric,
            "rate": r.rate,
            "throughput_mean": r.throughput_mean,
            "e2ed_mean": r.e2ed_mean,
            "nrl_mean": r.nrl_mean,
            "delivery_ratio_mean": r.delivery_ratio_mean,
            "drop_ratio_mean": r.drop_ratio_mean,
            "seed_ids": ";".join(str(s.seed) for s in r.per_seed),
            "error": r.error,
        }
        for i, s in enumerate(r.per_seed, start=1):
            for name in PERF_FIELDS:
                rec[f"seed{i}_{name}"] = getattr(s, name)
        for name in DROP_FIELDS + CONTROL_FIELDS:
            rec[f"{name}_mean"] = r.counter_means.get(name)
        records.append(rec)
    return pd.DataFrame.from_records(records, columns=_columns(n_seeds))


def emit_csv(rows: Sequence[ResultRow], path: PathLike) -> None:
    """One line per matrix cell; 6 significant digits; undefined values written as NA."""
    if not rows:
        raise ValueError("no result rows to write")
    frame = to_frame(rows)
    with staged(path) as tmp:
        frame.to_csv(tmp, index=False, float_format="%.6g", na_rep=NA, lineterminator="\n")
    logger.info("Wrote %d rows to %s", len(rows), path)


def _cell(value: Any) -> Optional[float]:
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return None
    return float(value)


def read_csv(path: PathLike) -> List[ResultRow]:
    """Parse a results CSV back into rows (values at the written precision)."""
    frame = pd.read_csv(path, na_values=[NA], keep_default_na=False, dtype={"seed_ids": str, "error": str})
    n_seeds = sum(1 for c in frame.columns if c.startswith("seed") and c.endswith("_throughput"))
    rows: List[ResultRow] = []
    for rec in frame.to_dict(orient="records"):
        seed_ids = [int(s) for s in str(rec.get("seed_ids") or "").split(";") if s.strip()]
        per_seed = []
        for i in range(1, n_seeds + 1):
            if f"seed{i}_throughput" not in rec or i > len(seed_ids):
                continue
            per_seed.append(SeedResult(
                seed=seed_ids[i - 1],
                **{name: _cell(rec[f"seed{i}_{name}"]) for name in PERF_FIELDS},
            ))
        error = rec.get("error")
        rows.append(ResultRow(
            profile=str(rec["profile"]),
            metric=str(rec["metric"]),
            rate=float(rec["rate"]),
            throughput_mean=_cell(rec["throughput_mean"]),
            e2ed_mean=_cell(rec["e2ed_mean"]),
            nrl_mean=_cell(rec["nrl_mean"]),
            per_seed=per_seed,
            delivery_ratio_mean=_cell(rec.get("delivery_ratio_mean")),
            drop_ratio_mean=_cell(rec.get("drop_ratio_mean")),
            counter_means={n: _cell(rec.get(f"{n}_mean")) for n in DROP_FIELDS + CONTROL_FIELDS},
            error=None if error is None or (isinstance(error, float) and pd.isna(error)) else str(error),
        ))
    return rows
