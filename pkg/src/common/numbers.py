import math
from typing import Iterable, Optional, Union

Number = Union[int, float]

# Marker rendered for undefined ratios (e.g. E2ED with zero deliveries). Never 0.
NA = "NA"


def safe_div(n: Number, d: Number) -> Optional[float]:
    """Return n/d, or None when the denominator is zero (undefined, not zero)."""
    if d == 0:
        return None
    return float(n) / float(d)


def mean_or_none(values: Iterable[Optional[float]]) -> Optional[float]:
    """Arithmetic mean; any undefined member makes the mean undefined."""
    vals = list(values)
    if not vals or any(v is None for v in vals):
        return None
    return math.fsum(vals) / len(vals)


def rel_close(a: float, b: float, rel_tol: float = 1e-9) -> bool:
    """Relative closeness with an absolute floor for values at zero."""
    return math.isclose(a, b, rel_tol=rel_tol, abs_tol=rel_tol if a == 0 or b == 0 else 0.0)


def fmt_sig(value: Optional[float], digits: int = 6) -> str:
    """Format with `digits` significant digits; undefined values render as NA."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return NA
    return f"{value:.{digits}g}"


def round_sig(value: Optional[float], digits: int = 6) -> Optional[float]:
    """Round a value the same way fmt_sig renders it."""
    if value is None:
        return None
    return float(fmt_sig(value, digits))


def clamp(x: float, lo: float = 0.0, hi: float = 1.0) -> float:
    return lo if x < lo else hi if x > hi else x
