from __future__ import annotations

from typing import Any, List, Optional

"""
String utilities shared by the config loaders and CLIs.
"""


def normalize_key(s: str) -> str:
    """Config keys: lowercase, dashes folded to underscores ('topology-seeds' -> 'topology_seeds')."""
    return s.strip().lower().replace("-", "_")


def split_list(v: Any) -> List[str]:
    """Split a comma list ('2, 4,6') into trimmed non-empty tokens; lists pass through."""
    if v is None:
        return []
    if isinstance(v, (list, tuple)):
        return [str(x).strip() for x in v if str(x).strip()]
    return [t.strip() for t in str(v).split(",") if t.strip()]


def to_bool(v: Any) -> Optional[bool]:
    """Parse common truthy/falsey strings to bool; return None if unknown."""
    if v is None:
        return None
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in {"1", "true", "yes", "y", "on"}:
        return True
    if s in {"0", "false", "no", "n", "off"}:
        return False
    return None
