import os

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
INSTANCE_PATH = ROOT_DIR + '/shared/instances/'
DOCS_PATH = ROOT_DIR + '/docs/'

# Resource caps, read at call time so the CLI can override them per run
FM_CONSTRAINT_CAP = 10000
COMPLEMENT_CELL_CAP = 4096

DEFAULT_SEED = 20240601
DEFAULT_ITERS = 20
# --iters value at which every property runs its full acceptance count
FULL_ITERS = 100
DEFAULT_YSTAR_BUDGET = 6

# Sampling ranges for generated instances and random duals
SAMPLE_NUMERATOR_RANGE = 4
SAMPLE_DENOMINATOR_RANGE = 3

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
REPORT_INDENT = 2

TASK_NAMES = ("scalarize", "conjugate", "biconjugate", "chain", "fenchel-rockafellar", "properties")

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_RESOURCE_LIMIT = 3
EXIT_CONTRACT_ERROR = 4
