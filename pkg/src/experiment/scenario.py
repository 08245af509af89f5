# src/experiment/scenario.py
from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.common.files import PathLike, read_text
from src.common.strings import normalize_key, split_list, to_bool
from src.config.config import (
    AREA_SIDE,
    DEFAULT_RATES,
    DEFAULT_SEEDS,
    DURATION,
    FLOW_COUNT,
    NODE_COUNT,
    RADIO_RANGE,
    WARMUP,
)
from src.metrics.types import MetricKind
from src.olsr.profiles import PROFILES, load_profile
from src.olsr.types import OlsrConfig, TcRedundancy

logger = logging.getLogger(__name__)


class _RunParameters(BaseModel):
    """Parameters shared by a single scenario and a whole matrix."""
    model_config = ConfigDict(frozen=True)

    duration: float = Field(default=DURATION, ge=0)
    warmup: float = Field(default=WARMUP, ge=0)
    node_count: int = Field(default=NODE_COUNT, ge=2)
    area_side: float = Field(default=AREA_SIDE, gt=0)
    radio_range: float = Field(default=RADIO_RANGE, gt=0)
    flow_count: int = Field(default=FLOW_COUNT, ge=0)
    jitter: bool = True
    lossless: bool = False
    tc_redundancy: TcRedundancy = TcRedundancy.MPR_SELECTORS

    @model_validator(mode="after")
    def _check_window(self):
        if self.duration > 0 and self.warmup >= self.duration:
            raise ValueError(f"warmup ({self.warmup}) must be shorter than duration ({self.duration})")
        return self


class Scenario(_RunParameters):
    """One matrix cell: a profile/metric/rate combination averaged over topology seeds."""
    profile: str = "olsr-default"
    metric: MetricKind = MetricKind.ETX
    rate: float = Field(default=2.0, gt=0)
    topology_seeds: Tuple[int, ...] = DEFAULT_SEEDS

    @field_validator("profile")
    @classmethod
    def _known_profile(cls, v: str) -> str:
        return load_profile(v).name

    @field_validator("metric", mode="before")
    @classmethod
    def _parse_metric(cls, v: Any) -> MetricKind:
        return MetricKind.parse(v)

    @field_validator("topology_seeds")
    @classmethod
    def _seeds_present(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("at least one topology seed is required")
        return v

    def olsr_config(self) -> OlsrConfig:
        base = load_profile(self.profile)
        if base.tc_redundancy is self.tc_redundancy:
            return base
        return OlsrConfig(**{**base.model_dump(), "tc_redundancy": self.tc_redundancy})

    @property
    def measured_duration(self) -> float:
        return self.duration - self.warmup

    @property
    def key(self) -> Tuple[str, str, float]:
        return self.profile, self.metric.value, self.rate


class MatrixConfig(_RunParameters):
    profiles: Tuple[str, ...] = tuple(PROFILES)
    metrics: Tuple[MetricKind, ...] = tuple(MetricKind)
    rates: Tuple[float, ...] = DEFAULT_RATES
    seeds: Tuple[int, ...] = DEFAULT_SEEDS
    workers: Optional[int] = Field(default=None, ge=1)

    @field_validator("profiles")
    @classmethod
    def _known_profiles(cls, v: Tuple[str, ...]) -> Tuple[str, ...]:
        if not v:
            raise ValueError("profiles must not be empty")
        return tuple(load_profile(p).name for p in v)

    @field_validator("metrics", mode="before")
    @classmethod
    def _parse_metrics(cls, v: Any) -> Tuple[MetricKind, ...]:
        items = tuple(MetricKind.parse(m) for m in (split_list(v) if isinstance(v, str) else v))
        if not items:
            raise ValueError("metrics must not be empty")
        return items

    @field_validator("rates")
    @classmethod
    def _positive_rates(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        if not v or any(r <= 0 for r in v):
            raise ValueError(f"rates must be a non-empty list of positive values, got {v}")
        return v

    @field_validator("seeds")
    @classmethod
    def _seeds_present(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v:
            raise ValueError("at least one seed is required")
        return v

    def scenarios(self) -> List[Scenario]:
        """Matrix cells in output order: profile, then metric, then rate."""
        shared = self.model_dump(include=set(_RunParameters.model_fields))
        return [
            Scenario(profile=p, metric=m, rate=r, topology_seeds=self.seeds, **shared)
            for p in self.profiles
            for m in self.metrics
            for r in self.rates
        ]

    def filtered(
        self,
        profile: Optional[str] = None,
        metric: Optional[str] = None,
        rate: Optional[float] = None,
    ) -> "MatrixConfig":
        update: Dict[str, Any] = {}
        if profile is not None:
            update["profiles"] = (load_profile(profile).name,)
        if metric is not None:
            update["metrics"] = (MetricKind.parse(metric),)
        if rate is not None:
            update["rates"] = (float(rate),)
        return MatrixConfig(**{**self.model_dump(), **update})


_LIST_KEYS = {"profiles", "metrics", "rates", "seeds"}
_BOOL_KEYS = {"jitter", "lossless"}


def parse_matrix_config(text: str) -> MatrixConfig:
    """
    Flat `key=value` config. `#` starts a comment, blank lines are skipped, list values are
    comma separated. Unknown keys and malformed lines raise ValueError with the line number.
    """
    known = set(MatrixConfig.model_fields)
    values: Dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = normalize_key(key)
        if key == "topology_seeds":
            key = "seeds"
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in _LIST_KEYS:
            values[key] = split_list(value)
        elif key in _BOOL_KEYS:
            flag = to_bool(value)
            if flag is None:
                raise ValueError(f"line {lineno}: {key} expects a boolean, got {value!r}")
            values[key] = flag
        else:
            values[key] = value
    return MatrixConfig(**values)


def load_matrix_config(path: Optional[PathLike]) -> MatrixConfig:
    """Read a config file; None yields the defaults."""
    if path is None:
        return MatrixConfig()
    config = parse_matrix_config(read_text(path))
    logger.info("Loaded matrix config from %s (%d cells)", path, len(config.scenarios()))
    return config
