import os
from typing import Tuple

# Topology / channel
# Radio range is not given for the reference scenario; 250 m keeps a 50-node,
# 1000x1000 m placement connected with high probability.
RADIO_RANGE = float(os.getenv("MHOP_RADIO_RANGE", "250"))
AREA_SIDE = float(os.getenv("MHOP_AREA_SIDE", "1000"))
NODE_COUNT = int(os.getenv("MHOP_NODE_COUNT", "50"))
LINK_CAPACITY = float(os.getenv("MHOP_LINK_CAPACITY", "100"))     # packets/s, efficiency model
JITTER_LOW = float(os.getenv("MHOP_JITTER_LOW", "0.9"))           # per-direction fd/rd factor
JITTER_HIGH = float(os.getenv("MHOP_JITTER_HIGH", "1.0"))
MAX_REGENERATIONS = int(os.getenv("MHOP_MAX_REGENERATIONS", "100"))

# MAC abstraction
LINK_RATE_BPS = float(os.getenv("MHOP_LINK_RATE_BPS", "1000000"))  # 1 Mb/s
PROPAGATION_DELAY = float(os.getenv("MHOP_PROPAGATION_DELAY", "0.000001"))  # 1 us flat
QUEUE_CAPACITY = int(os.getenv("MHOP_QUEUE_CAPACITY", "50"))

# Packets
DATA_BYTES = int(os.getenv("MHOP_DATA_BYTES", "64"))
PROBE_BYTES = int(os.getenv("MHOP_PROBE_BYTES", "134"))
CONTROL_HEADER_BYTES = int(os.getenv("MHOP_CONTROL_HEADER_BYTES", "16"))
CONTROL_ENTRY_BYTES = int(os.getenv("MHOP_CONTROL_ENTRY_BYTES", "8"))
DATA_TTL = int(os.getenv("MHOP_DATA_TTL", "32"))
TC_TTL = int(os.getenv("MHOP_TC_TTL", "255"))

# Protocol timing
CONTROL_JITTER = float(os.getenv("MHOP_CONTROL_JITTER", "0.1"))   # fraction of the interval
ROUTE_DEBOUNCE = float(os.getenv("MHOP_ROUTE_DEBOUNCE", "0.1"))   # seconds
NEIGHBOR_HOLD_FACTOR = float(os.getenv("MHOP_NEIGHBOR_HOLD_FACTOR", "3"))
TOPOLOGY_HOLD_FACTOR = float(os.getenv("MHOP_TOPOLOGY_HOLD_FACTOR", "3"))

# MD estimator
MD_ALPHA = float(os.getenv("MHOP_MD_ALPHA", "0.3"))

# Experiment defaults
DURATION = float(os.getenv("MHOP_DURATION", "900"))
WARMUP = float(os.getenv("MHOP_WARMUP", "50"))
FLOW_COUNT = int(os.getenv("MHOP_FLOW_COUNT", "20"))
SAMPLE_INTERVAL = float(os.getenv("MHOP_SAMPLE_INTERVAL", "10"))
DEFAULT_RATES: Tuple[float, ...] = tuple(
    float(x) for x in os.getenv("MHOP_DEFAULT_RATES", "2,4,6,8,10,12,14,16").split(",") if x.strip()
)
DEFAULT_SEEDS: Tuple[int, ...] = tuple(
    int(x) for x in os.getenv("MHOP_DEFAULT_SEEDS", "101,102,103,104,105").split(",") if x.strip()
)
DEFAULT_WORKERS = int(os.getenv("MHOP_DEFAULT_WORKERS", str(os.cpu_count() or 1)))

# Overhead model
BUDGET_REL_TOL = float(os.getenv("MHOP_BUDGET_REL_TOL", "1e-9"))
