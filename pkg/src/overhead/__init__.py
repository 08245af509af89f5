from .costs import (
    DefaultTcReading,
    LatencyCosts,
    MprChangeLog,
    MprSnapshot,
    OverheadCosts,
    hello_cost,
    latency_costs,
    metric_cost,
    overhead_costs,
    tc_default_cost,
    tc_trigger_cost,
    total_cost,
)
from .efficiency import (
    BudgetStatus,
    EfficiencyProblem,
    MeasuredOverhead,
    check_budget,
    max_efficiency,
    widest_path,
)

__all__ = [
    "DefaultTcReading",
    "LatencyCosts",
    "MprChangeLog",
    "MprSnapshot",
    "OverheadCosts",
    "hello_cost",
    "latency_costs",
    "metric_cost",
    "overhead_costs",
    "tc_default_cost",
    "tc_trigger_cost",
    "total_cost",
    "BudgetStatus",
    "EfficiencyProblem",
    "MeasuredOverhead",
    "check_budget",
    "max_efficiency",
    "widest_path",
]
