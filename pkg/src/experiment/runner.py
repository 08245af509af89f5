# src/experiment/runner.py
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from src.common.env import workers_from_env
from src.common.files import PathLike
from src.config.config import DEFAULT_WORKERS
from src.experiment.results import ResultRow, SeedResult, aggregate
from src.experiment.scenario import MatrixConfig, Scenario, load_matrix_config
from src.sim.engine import Simulator, derive_rng
from src.sim.stats import SimStats, finalize_stats
from src.sim.trace import EventTrace
from src.sim.traffic import CbrFlow, draw_flows
from src.topology.generator import connected_topology
from src.topology.types import Topology

logger = logging.getLogger(__name__)


@dataclass
class SingleRun:
    """Everything one simulation produced, kept for the `simulate` outputs."""
    scenario: Scenario
    seed: int
    topology: Topology
    flows: List[CbrFlow]
    simulator: Simulator
    stats: SimStats
    trace: Optional[EventTrace] = None
    extra: Dict[str, Any] = field(default_factory=dict)


def build_inputs(scenario: Scenario, seed: int) -> Tuple[Topology, List[CbrFlow]]:
    """Topology and flows of one seed; both depend only on the seed and the scenario shape."""
    topology = connected_topology(
        scenario.node_count, scenario.area_side, scenario.radio_range, seed
    )
    if scenario.lossless:
        topology = topology.lossless()
    flows = draw_flows(
        topology.n,
        scenario.flow_count,
        scenario.rate,
        derive_rng(seed, "flows"),
        start=scenario.warmup,
        stop=scenario.duration,
    )
    return topology, flows


def run_single(scenario: Scenario, seed: int, trace: bool = False) -> SingleRun:
    topology, flows = build_inputs(scenario, seed)
    event_trace = EventTrace() if trace else None
    sim = Simulator(
        topology,
        scenario.olsr_config(),
        flows,
        scenario.metric,
        scenario.duration,
        seed,
        warmup=scenario.warmup,
        jitter=scenario.jitter,
        trace=event_trace,
    )
    stats = sim.run()
    logger.debug("%s/%s rate=%g seed=%d done: delivered %d/%d",
                 scenario.profile, scenario.metric.value, scenario.rate, seed,
                 stats.data_delivered, stats.data_sent)
    return SingleRun(scenario, seed, topology, flows, sim, stats, event_trace)


def run_meta(run: SingleRun) -> Dict[str, Any]:
    """JSON-ready description of a run, consumed by `analyze`."""
    sc = run.scenario
    cfg = sc.olsr_config()
    measured = sc.measured_duration
    metrics = finalize_stats(run.stats, measured) if measured > 0 else None
    return {
        "scenario": {
            "profile": sc.profile,
            "metric": sc.metric.value,
            "rate": sc.rate,
            "seed": run.seed,
            "duration": sc.duration,
            "warmup": sc.warmup,
            "node_count": sc.node_count,
            "flow_count": sc.flow_count,
            "jitter": sc.jitter,
            "lossless": sc.lossless,
        },
        "topology": {
            "requested_seed": run.topology.requested_seed,
            "effective_seed": run.topology.seed,
            "regenerations": run.topology.regenerations,
        },
        "profile": {
            "hello_interval": cfg.hello_interval,
            "tc_interval": cfg.tc_interval,
            "window_w": cfg.window_w,
            "tc_redundancy": cfg.tc_redundancy.value,
        },
        "stats": run.stats.as_dict(),
        "metrics": None if metrics is None else metrics._asdict(),
        "mpr_changes": run.simulator.mpr_log.to_records(),
        "samples": run.simulator.samples,
    }


def _run_task(task: Tuple[Scenario, int]) -> SeedResult:
    scenario, seed = task
    try:
        run = run_single(scenario, seed)
    except Exception as e:
        logger.exception("run failed: %s/%s rate=%g seed=%d", scenario.profile,
                         scenario.metric.value, scenario.rate, seed)
        return SeedResult(seed=seed, error=f"{type(e).__name__}: {e}")
    return SeedResult.from_stats(seed, run.stats, scenario.measured_duration)


def run_matrix(
    config: Union[MatrixConfig, PathLike, None],
    workers: Optional[int] = None,
) -> List[ResultRow]:
    """
    Execute every (profile, metric, rate, seed) run and fold the seeds of each cell into a
    ResultRow. Rows come back in MatrixConfig.scenarios() order whatever the worker count.
    """
    cfg = config if isinstance(config, MatrixConfig) else load_matrix_config(config)
    scenarios = cfg.scenarios()
    tasks = [(sc, seed) for sc in scenarios for seed in sc.topology_seeds]

    n_workers = workers_from_env(workers or cfg.workers or DEFAULT_WORKERS)
    logger.info("Matrix: %d cells, %d runs, %d worker(s)", len(scenarios), len(tasks), n_workers)

    if n_workers == 1 or len(tasks) <= 1:
        results = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_run_task, tasks))

    rows: List[ResultRow] = []
    it = iter(results)
    for sc in scenarios:
        seeds = [next(it) for _ in sc.topology_seeds]
        row = aggregate(sc, seeds)
        if row.error:
            logger.warning("Cell %s/%s rate=%g failed: %s", sc.profile, sc.metric.value, sc.rate, row.error)
        rows.append(row)
    return rows
