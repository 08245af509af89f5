# src/overhead/report.py
from __future__ import annotations

import io
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple

import pandas as pd
from rich.console import Console
from rich.table import Table

from src.common.files import PathLike, ensure_dir, staged, write_text
from src.common.numbers import NA, fmt_sig, safe_div
from src.metrics.paths import computation_cost
from src.metrics.types import MetricKind
from src.overhead.costs import (
    DefaultTcReading,
    MprChangeLog,
    latency_costs,
    metric_cost,
    overhead_costs,
)
from src.overhead.efficiency import (
    BudgetStatus,
    EfficiencyProblem,
    MeasuredOverhead,
    check_budget,
    max_efficiency,
)
from src.sim.stats import SimStats, mean_hops
from src.topology.types import Topology

logger = logging.getLogger(__name__)

_REQUIRED = {
    "scenario": ("metric", "duration", "warmup"),
    "profile": ("hello_interval", "tc_interval"),
    "stats": ("hello_rx", "tc_default_rx", "md_probe_tx"),
}


def validate_run_meta(meta: Mapping[str, Any]) -> None:
    for section, keys in _REQUIRED.items():
        if section not in meta:
            raise ValueError(f"run metadata lacks the {section!r} section")
        for key in keys:
            if key not in meta[section]:
                raise ValueError(f"run metadata lacks {section}.{key}")


@dataclass
class OverheadReport:
    reading: DefaultTcReading
    lifetime: float
    terms: List[Dict[str, Any]] = field(default_factory=list)
    computation: List[Dict[str, Any]] = field(default_factory=list)
    budget: Optional[BudgetStatus] = None
    efficiency: Optional[float] = None

    def to_frame(self) -> pd.DataFrame:
        records = [{"section": "cost", **t} for t in self.terms]
        for c in self.computation:
            records.append({
                "section": "computation",
                "term": f"{c['metric']} ops ({c['hops']} hops)",
                "analytical": c["total"],
                "simulated": None,
                "ratio": None,
                "note": f"mul={c['multiplications']} div={c['divisions']} add={c['additions']}",
            })
        if self.budget is not None:
            records.append({"section": "efficiency", "term": "budget", "analytical": None,
                            "simulated": None, "ratio": None, "note": self.budget.value})
        if self.efficiency is not None:
            records.append({"section": "efficiency", "term": "max_efficiency", "analytical": self.efficiency,
                            "simulated": None, "ratio": None, "note": ""})
        return pd.DataFrame.from_records(
            records, columns=["section", "term", "analytical", "simulated", "ratio", "note"]
        )

    def render_text(self) -> str:
        console = Console(record=True, width=110, file=io.StringIO(), color_system=None)
        table = Table(title=f"Control overhead over {fmt_sig(self.lifetime)} s "
                            f"(default TC reading: {self.reading.value})")
        for col in ("term", "analytical", "simulated", "ratio", "note"):
            table.add_column(col)
        for t in self.terms:
            table.add_row(t["term"], fmt_sig(t["analytical"]), fmt_sig(t["simulated"]),
                          fmt_sig(t["ratio"]), t["note"])
        console.print(table)

        ops = Table(title="Metric computation per path")
        for col in ("metric", "hops", "mul", "div", "add", "total"):
            ops.add_column(col)
        for c in self.computation:
            ops.add_row(c["metric"], str(c["hops"]), str(c["multiplications"]), str(c["divisions"]),
                        str(c["additions"]), str(c["total"]))
        console.print(ops)

        if self.budget is not None:
            console.print(f"budget check: {self.budget.value}")
        if self.efficiency is not None:
            console.print(f"max efficiency e = {fmt_sig(self.efficiency)}")
        return console.export_text()


def _term(name: str, analytical: float, simulated: Optional[float], note: str = "") -> Dict[str, Any]:
    ratio = safe_div(simulated, analytical) if simulated is not None else None
    return {"term": name, "analytical": analytical, "simulated": simulated, "ratio": ratio, "note": note}


def build_report(
    topology: Topology,
    meta: Mapping[str, Any],
    change_gated: bool = False,
    budgets: Optional[Tuple[float, float]] = None,
    endpoints: Optional[Tuple[int, int]] = None,
) -> OverheadReport:
    """
    Analytical overhead terms for the run described by `meta`, side by side with the
    simulated counters they predict. Budgets, when given, gate the efficiency figure.
    """
    validate_run_meta(meta)
    sc, prof, stats = meta["scenario"], meta["profile"], meta["stats"]
    kind = MetricKind.parse(sc["metric"])
    start, end = float(sc["warmup"]), float(sc["duration"])
    lifetime = end - start
    hello_iv, tc_iv = float(prof["hello_interval"]), float(prof["tc_interval"])

    log = MprChangeLog.from_records(meta.get("mpr_changes", []))
    costs = overhead_costs(topology, lifetime, hello_iv, tc_iv, log, change_gated, start=start)
    probes = metric_cost(kind, topology, lifetime, hello_iv)
    latency = latency_costs(topology, lifetime, hello_iv, tc_iv, kind, log, start=start)
    reading = costs.default_reading

    terms = [
        _term("hello", costs.hello_cost, float(stats["hello_rx"]),
              f"receptions, d_max={topology.max_degree()}"),
        _term("tc_trigger", costs.tc_trigger_cost, None, f"{len(log.changes(start, end))} MPR changes"),
        _term("tc_default", costs.tc_default_cost, float(stats["tc_default_rx"]), reading.value),
        _term("metric", probes, float(stats["md_probe_tx"]), kind.label),
        _term("total", costs.total + probes, None),
        _term("latency_periodic", latency.periodic, None, "seconds of airtime"),
        _term("latency_triggered", latency.triggered, None, "seconds of airtime"),
        _term("latency_metric", latency.metric, None, "seconds of airtime"),
    ]

    hops = max(1, round(mean_hops(SimStats.from_dict(stats)) or 1))
    computation = []
    for m in MetricKind:
        ops = computation_cost(m, hops)
        computation.append({"metric": m.label, "hops": hops, "multiplications": ops.multiplications,
                            "divisions": ops.divisions, "additions": ops.additions, "total": ops.total})

    report = OverheadReport(reading=reading, lifetime=lifetime, terms=terms, computation=computation)
    if budgets is not None:
        measured = MeasuredOverhead.from_costs(costs, probes, latency)
        report.budget = check_budget(measured, *budgets)
        if endpoints is not None:
            problem = EfficiencyProblem(
                topology=topology,
                source=endpoints[0],
                sink=endpoints[1],
                energy_budget=budgets[0],
                latency_budget=budgets[1],
                measured=measured,
            )
            report.efficiency = max_efficiency(problem)
    return report


def write_report(report: OverheadReport, out_dir: PathLike) -> Tuple[Path, Path]:
    out = ensure_dir(out_dir)
    csv_path = out / "overhead.csv"
    with staged(csv_path) as tmp:
        report.to_frame().to_csv(tmp, index=False, float_format="%.6g", na_rep=NA, lineterminator="\n")
    txt_path = write_text(out / "overhead.txt", report.render_text())
    logger.info("Overhead report written to %s and %s", csv_path, txt_path)
    return csv_path, txt_path
