"""Constants for the operad kernel."""

from enum import Enum, IntEnum


class Variant(str, Enum):
    """Supported base categories."""
    FINSET = "finset"
    VECTQ = "vectq"
    CHAINQ = "chainq"


class SuiteName(str, Enum):
    """Named verification suites."""
    COMPOSE_ASSOC = "compose-assoc"
    COMPOSE_ORACLE = "compose-oracle"
    LQN_PUSHOUT = "lq_n-pushout"
    COMPUTE1 = "compute1"
    COMPUTE2 = "compute2"
    FILTRATION_ORACLE = "filtration-oracle"
    ENVELOPE_UNIVERSAL = "envelope-universal"
    KERNEL_COUNIT = "kernel-counit"
    COFIBER_STABLE = "cofiber-stable"
    SIGMA_INFTY = "sigma-infty"


class Outcome(str, Enum):
    """Verification outcomes."""
    PASS = "pass"
    FAIL = "fail"


class ExitCode(IntEnum):
    """Process exit codes of the command line."""
    OK = 0
    VERIFICATION_FAILURE = 1
    PARSE_ERROR = 2
    MATH_DOMAIN_ERROR = 3


# Labels
UNIT_LABEL = ()

# Stable homology
DEFAULT_STABILITY_WINDOW = 2
UNDETERMINED = "undetermined"

# Reports
REPORT_SCHEMA_KEY = "schema"
REPORT_SCHEMA_VERSION = 1

# Per-suite instance counts used by the acceptance run
ACCEPTANCE_INSTANCES = {
    SuiteName.COMPOSE_ORACLE.value: 200,
    SuiteName.COMPOSE_ASSOC.value: 100,
    SuiteName.LQN_PUSHOUT.value: 20,
    SuiteName.COMPUTE1.value: 20,
    SuiteName.COMPUTE2.value: 20,
    SuiteName.FILTRATION_ORACLE.value: 20,
    SuiteName.ENVELOPE_UNIVERSAL.value: 5,
    SuiteName.KERNEL_COUNIT.value: 100,
    SuiteName.COFIBER_STABLE.value: 50,
    SuiteName.SIGMA_INFTY.value: 50,
}
