import logging
import os
from typing import Optional, Union

"""Logger setup to enforce consistent formatting across simulator stages."""

_FORMAT = "[%(levelname)s] %(asctime)s %(name)s: %(message)s"


def _resolve_level(level: Union[int, str, None]) -> int:
    if level is None:
        level = os.getenv("MHOP_LOG_LEVEL", "INFO")
    if isinstance(level, int):
        return level
    return getattr(logging, str(level).upper(), logging.INFO)


def setup_logging(level: Optional[str] = None) -> None:
    """Configure the root logger once (CLI entrypoints only)."""
    root = logging.getLogger()
    if root.handlers:
        root.setLevel(_resolve_level(level))
        return
    logging.basicConfig(level=_resolve_level(level), format=_FORMAT)
