from typing import Dict

from src.olsr.types import OlsrConfig

# Conventional OLSR timing and the enhanced profile (faster HELLOs, shorter window,
# slower periodic TCs).
PROFILES: Dict[str, OlsrConfig] = {
    "olsr-default": OlsrConfig(name="olsr-default", hello_interval=2.0, tc_interval=5.0, window_w=20.0),
    "eolsr": OlsrConfig(name="eolsr", hello_interval=1.0, tc_interval=15.0, window_w=10.0),
}


def load_profile(name: str) -> OlsrConfig:
    key = (name or "").strip().lower()
    if key not in PROFILES:
        raise ValueError(f"unknown profile {name!r} (choose from {', '.join(PROFILES)})")
    return PROFILES[key]
