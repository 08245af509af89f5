import argparse
import io
import logging
from pathlib import Path
from typing import List, Optional

from rich.console import Console
from rich.table import Table

from src.common.env import load_env_file
from src.common.files import atomic_write_json, ensure_dir, read_json, write_lines, write_text
from src.common.log import setup_logging
from src.common.numbers import fmt_sig
from src.config.config import AREA_SIDE, DURATION, FLOW_COUNT, NODE_COUNT, RADIO_RANGE, WARMUP
from src.experiment.compare import compare_profiles, render_text
from src.experiment.results import emit_csv
from src.experiment.runner import run_matrix, run_meta, run_single
from src.experiment.scenario import Scenario, load_matrix_config
from src.metrics.types import MetricKind
from src.olsr.profiles import PROFILES
from src.olsr.routing import dump_routes
from src.overhead.report import build_report, write_report
from src.topology.serialize import load_topology, save_topology

LOGGER = logging.getLogger("experiment.cli")

_METRICS = [m.value for m in MetricKind]


def build_argparser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description="OLSR link-metric simulator: single runs, the experiment matrix, overhead analysis.")
    p.add_argument("--log-level", default=None, help="Overrides MHOP_LOG_LEVEL")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="Run one scenario and dump its topology, routes and stats")
    s.add_argument("--profile", choices=sorted(PROFILES), default="olsr-default")
    s.add_argument("--metric", choices=_METRICS, default="etx")
    s.add_argument("--rate", type=float, default=2.0, help="Packets per second per flow")
    s.add_argument("--seed", type=int, default=101)
    s.add_argument("--duration", type=float, default=DURATION)
    s.add_argument("--warmup", type=float, default=WARMUP)
    s.add_argument("--nodes", type=int, default=NODE_COUNT)
    s.add_argument("--flows", type=int, default=FLOW_COUNT)
    s.add_argument("--area-side", type=float, default=AREA_SIDE)
    s.add_argument("--radio-range", type=float, default=RADIO_RANGE)
    s.add_argument("--trace", action="store_true", help="Also write trace.txt")
    s.add_argument("--lossless", action="store_true", help="Force fd = rd = 1 on every link")
    s.add_argument("--no-jitter", action="store_true", help="Emit control messages exactly on the interval")
    s.add_argument("--out", default="runs/single")

    m = sub.add_parser("matrix", help="Run the profile x metric x rate x seed matrix")
    m.add_argument("--config", default=None, help="key=value matrix config (defaults when omitted)")
    m.add_argument("--out", default="runs/matrix")
    m.add_argument("--workers", type=int, default=None)
    m.add_argument("--profile", choices=sorted(PROFILES), default=None, help="Restrict to one profile")
    m.add_argument("--metric", choices=_METRICS, default=None, help="Restrict to one metric")
    m.add_argument("--rate", type=float, default=None, help="Restrict to one rate")

    a = sub.add_parser("analyze", help="Overhead report for a finished simulate run")
    a.add_argument("--topology", required=True)
    a.add_argument("--run-meta", required=True)
    a.add_argument("--out", default=None, help="Defaults to the run-meta directory")
    a.add_argument("--change-gated", action="store_true", help="Charge default TCs only in rounds with an MPR change")
    a.add_argument("--energy-budget", type=float, default=None)
    a.add_argument("--latency-budget", type=float, default=None)
    a.add_argument("--source", type=int, default=None)
    a.add_argument("--sink", type=int, default=None)
    return p


def cmd_simulate(args: argparse.Namespace) -> Path:
    scenario = Scenario(
        profile=args.profile,
        metric=args.metric,
        rate=args.rate,
        topology_seeds=(args.seed,),
        duration=args.duration,
        warmup=args.warmup,
        node_count=args.nodes,
        flow_count=args.flows,
        area_side=args.area_side,
        radio_range=args.radio_range,
        jitter=not args.no_jitter,
        lossless=args.lossless,
    )
    run = run_single(scenario, args.seed, trace=args.trace)
    out = ensure_dir(args.out)
    save_topology(run.topology, out / "topology.txt")
    atomic_write_json(out / "run_meta.json", run_meta(run))
    write_lines(out / "routes.txt", dump_routes(run.simulator.routing_tables().values()))
    if run.trace is not None:
        run.trace.write(out / "trace.txt")
    LOGGER.info("Run written to %s", out)
    return out


def cmd_matrix(args: argparse.Namespace) -> Path:
    config = load_matrix_config(args.config).filtered(args.profile, args.metric, args.rate)
    rows = run_matrix(config, workers=args.workers)
    out = ensure_dir(args.out)
    emit_csv(rows, out / "results.csv")
    report = compare_profiles(rows)
    atomic_write_json(out / "trends.json", report.to_dict())
    write_text(out / "trends.txt", render_text(report, rows))
    LOGGER.info("Trends: %d/%d hold (%s)", report.holding, len(report.trends),
                "PASS" if report.passed else "FAIL")
    return out


def cmd_analyze(args: argparse.Namespace) -> Path:
    budgets = None
    if args.energy_budget is not None or args.latency_budget is not None:
        if args.energy_budget is None or args.latency_budget is None:
            raise ValueError("--energy-budget and --latency-budget go together")
        budgets = (args.energy_budget, args.latency_budget)
    endpoints = None
    if args.source is not None or args.sink is not None:
        if args.source is None or args.sink is None or budgets is None:
            raise ValueError("--source/--sink need each other and both budgets")
        endpoints = (args.source, args.sink)

    topology = load_topology(args.topology)
    meta = read_json(args.run_meta)
    report = build_report(topology, meta, change_gated=args.change_gated,
                          budgets=budgets, endpoints=endpoints)
    out = Path(args.out) if args.out else Path(args.run_meta).parent
    write_report(report, out)
    print(report.render_text())
    return out


def _summary(out: Path) -> str:
    meta = read_json(out / "run_meta.json")
    sc = meta["scenario"]
    console = Console(record=True, width=100, file=io.StringIO(), color_system=None)
    table = Table(title=f"{sc['profile']} / {sc['metric']} / rate {fmt_sig(sc['rate'])} / seed {sc['seed']}")
    table.add_column("figure")
    table.add_column("value")
    metrics = meta["metrics"] or {}
    for name in ("throughput", "e2ed", "nrl"):
        table.add_row(name, fmt_sig(metrics.get(name)))
    for name in ("data_sent", "data_delivered", "in_flight", "drops_no_route", "drops_ttl",
                 "drops_queue", "drops_channel", "hello_tx", "tc_tx", "md_probe_tx", "mpr_changes"):
        table.add_row(name, str(meta["stats"][name]))
    console.print(table)
    return console.export_text()


_COMMANDS = {"simulate": cmd_simulate, "matrix": cmd_matrix, "analyze": cmd_analyze}


def main(argv: Optional[List[str]] = None) -> None:
    load_env_file()
    args = build_argparser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        result = _COMMANDS[args.command](args)
        if args.command == "simulate":
            print(_summary(result))
    except Exception:
        LOGGER.exception("%s failed", args.command)
        raise


if __name__ == "__main__":
    main()
