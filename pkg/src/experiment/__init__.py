from .scenario import Scenario, MatrixConfig, parse_matrix_config, load_matrix_config
from .results import SeedResult, ResultRow, aggregate, emit_csv, read_csv
from .runner import SingleRun, build_inputs, run_single, run_meta, run_matrix
from .compare import TrendStatus, TrendReport, compare_profiles

__all__ = [
    "Scenario",
    "MatrixConfig",
    "parse_matrix_config",
    "load_matrix_config",
    "SeedResult",
    "ResultRow",
    "aggregate",
    "emit_csv",
    "read_csv",
    "SingleRun",
    "build_inputs",
    "run_single",
    "run_meta",
    "run_matrix",
    "TrendStatus",
    "TrendReport",
    "compare_profiles",
]
