import logging
import os
from typing import Optional

"""Environment-derived helpers (kept side-effect free apart from .env loading)."""

logger = logging.getLogger(__name__)

WORKERS_ENV = "MHOP_SIM_WORKERS"


def load_env_file(path: Optional[str] = None) -> None:
    """Load .env if it exists (optional); never overrides variables already set."""
    try:
        from dotenv import load_dotenv, find_dotenv
    except ImportError as e:  # pragma: no cover - dependency declared in manifest
        logger.debug("dotenv not used: %s", e)
        return
    env_path = path or find_dotenv(usecwd=True)
    if env_path and os.path.exists(env_path):
        load_dotenv(env_path, override=False)
        logger.debug("Loaded .env from %s", env_path)


def workers_from_env(default: int) -> int:
    """Worker count for matrix runs; MHOP_SIM_WORKERS wins over the caller default."""
    raw = os.getenv(WORKERS_ENV)
    if not raw:
        return max(1, int(default))
    try:
        value = int(raw.strip())
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer)", WORKERS_ENV, raw)
        return max(1, int(default))
    return max(1, value)
