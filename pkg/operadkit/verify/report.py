"""Verification reports and the suite runner."""

import logging
import time
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from operadkit.config.constants import (
    DEFAULT_STABILITY_WINDOW,
    REPORT_SCHEMA_KEY,
    REPORT_SCHEMA_VERSION,
    Outcome,
    SuiteName,
    Variant,
)
from operadkit.errors import UnknownSuite, WrongVariant
from operadkit.operads import CheckReport
from operadkit.verify.instances import InstanceSpec
from operadkit.verify.suites import SUITES

logger = logging.getLogger(__name__)

CHAIN_SUITES = frozenset({SuiteName.KERNEL_COUNIT, SuiteName.COFIBER_STABLE, SuiteName.SIGMA_INFTY})


class VerificationReport(BaseModel):
    """Outcome of one suite over one or more seeded instances."""

    model_config = ConfigDict(populate_by_name=True)

    schema_: int = Field(default=REPORT_SCHEMA_VERSION, alias=REPORT_SCHEMA_KEY)
    suite: SuiteName
    spec: InstanceSpec
    outcome: Outcome
    witness: Optional[str] = None
    elapsed_seconds: float = 0.0
    mutated: bool = False
    instances: int = 1
    details: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _witness_on_failure(self):
        if self.outcome == Outcome.FAIL and not self.witness:
            raise ValueError("A failed verification must carry a witness")
        return self

    @property
    def passed(self) -> bool:
        return self.outcome == Outcome.PASS

    def to_json(self) -> Dict[str, Any]:
        return self.model_dump(by_alias=True, mode="json")


def suite_name(name: str) -> SuiteName:
    """
    Resolve a suite name.

    Raises:
        UnknownSuite: If no suite has this name
    """
    try:
        return SuiteName(name)
    except ValueError:
        known = ", ".join(s.value for s in SuiteName)
        raise UnknownSuite(f"Unknown suite {name!r}; known suites: {known}") from None


def run_checks(
    name: SuiteName, spec: InstanceSpec, mutate: bool = False, window: int = DEFAULT_STABILITY_WINDOW
) -> CheckReport:
    """
    Run one suite on the instance of ``spec``.

    Raises:
        WrongVariant: If an operadic suite is asked for chain complexes
    """
    if name not in CHAIN_SUITES and spec.variant == Variant.CHAINQ:
        raise WrongVariant(f"Suite {name.value} runs over finset or vectq, not chainq")
    return SUITES[name](spec, mutate, window)


def run_suite(
    name: str,
    spec: InstanceSpec,
    mutate: bool = False,
    instances: int = 1,
    window: int = DEFAULT_STABILITY_WINDOW,
) -> VerificationReport:
    """
    Run a suite on seeds ``spec.seed .. spec.seed + instances - 1``, stopping
    at the first failure.

    Raises:
        UnknownSuite: If ``name`` is not a suite
    """
    resolved = suite_name(name)
    started = time.perf_counter()
    checked: Dict[str, int] = {}
    subjects: List[str] = []
    witness = None
    ran = 0
    for seed in range(spec.seed, spec.seed + max(instances, 1)):
        report = run_checks(resolved, spec.with_seed(seed), mutate, window)
        ran += 1
        for law, count in report.checked.items():
            checked[law] = checked.get(law, 0) + count
        subjects.append(report.subject)
        if not report.passed:
            witness = f"seed {seed}: {report.first_witness()}"
            logger.info(f"Suite {resolved.value} failed on seed {seed}")
            break
        logger.debug(f"Suite {resolved.value} passed on seed {seed}: {report.subject}")
    elapsed = time.perf_counter() - started
    outcome = Outcome.PASS if witness is None else Outcome.FAIL
    logger.info(f"Suite {resolved.value}: {outcome.value} after {ran} instance(s) in {elapsed:.2f}s")
    return VerificationReport(
        suite=resolved,
        spec=spec,
        outcome=outcome,
        witness=witness,
        elapsed_seconds=round(elapsed, 3),
        mutated=mutate,
        instances=ran,
        details={"checked": dict(sorted(checked.items())), "subjects": sorted(set(subjects))},
    )
