"""Instance generators and the named verification suites."""

from operadkit.verify.instances import (
    Instance,
    InstanceSpec,
    generate,
    random_complex,
    random_over_under,
    random_sequence,
)
from operadkit.verify.report import CHAIN_SUITES, VerificationReport, run_checks, run_suite, suite_name
from operadkit.verify.suites import SUITES

__all__ = [
    "CHAIN_SUITES",
    "Instance",
    "InstanceSpec",
    "SUITES",
    "VerificationReport",
    "generate",
    "random_complex",
    "random_over_under",
    "random_sequence",
    "run_checks",
    "run_suite",
    "suite_name",
]
