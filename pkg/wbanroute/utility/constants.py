import os

from .enum_types import ProtocolKind

# Define the root directory of the project which is parent of the parent of
# the current directory
ROOT_DIR = os.path.abspath(
    os.path.join(os.path.dirname(__file__), os.pardir, os.pardir)
)

# Define the default directory where reports are written
DEFAULT_OUTPUT_DIR = os.path.join(os.getcwd(), "reports")

# Fixed protocol order used by every table and sweep
PROTOCOL_ORDER = (
    ProtocolKind.PROPOSED,
    ProtocolKind.ENSA_BAN,
    ProtocolKind.P_AODV,
    ProtocolKind.RRLS,
)

# Metrics compared across protocols, with the direction that counts
# as an improvement
HIGHER_IS_BETTER = {
    "throughput_kbps": True,
    "mean_delay_ms": False,
    "energy_consumed_j": False,
    "nrl": False,
}

# Number of missed hello intervals after which a neighbor is evicted
EVICTION_INTERVALS = 3

# Rounding applied to path costs before lexicographic comparison
COST_DECIMALS = 12

# Default data-rate sweep, in packets per second
DEFAULT_SWEEP_RATES = (1.0, 2.0, 4.0, 8.0, 16.0)

# Default node-count sweep
DEFAULT_SWEEP_NODES = (50, 100, 150, 200)
