"""The commands behind the command line, each returning a JSON-ready result."""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from operadkit.algmod import check_algebra, check_module, enveloping_operad, free_algebra_filtration
from operadkit.basecat import homology_table
from operadkit.cli.definitions import DefinitionFile
from operadkit.cli.serialize import complex_section, object_json, operad_section, sequence_json, sequence_section
from operadkit.compose import compose
from operadkit.config.constants import REPORT_SCHEMA_KEY, REPORT_SCHEMA_VERSION, ExitCode, Outcome
from operadkit.errors import StructureMismatch
from operadkit.operads import CheckReport, check_operad, underlying_category
from operadkit.stabletangent import omega_spectrum_check, spectrify
from operadkit.verify import InstanceSpec, run_suite

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    """A JSON payload, the exit code, and the canonical text form when one exists."""

    payload: Dict[str, Any]
    exit_code: ExitCode = ExitCode.OK
    text: Optional[str] = None


def _payload(command: str, **fields) -> Dict[str, Any]:
    return {REPORT_SCHEMA_KEY: REPORT_SCHEMA_VERSION, "command": command, **fields}


def _checked(command: str, report: CheckReport, **fields) -> CommandResult:
    outcome = Outcome.PASS if report.passed else Outcome.FAIL
    payload = _payload(
        command, outcome=outcome.value, witness=report.first_witness(), report=report.to_dict(), **fields
    )
    return CommandResult(payload, ExitCode.OK if report.passed else ExitCode.VERIFICATION_FAILURE)


def cmd_check(defs: DefinitionFile, entity: str, bound: Optional[int] = None) -> CommandResult:
    """Run the law checks of a declared entity."""
    kind = defs.kind(entity)
    value = defs.get(entity)
    details: Dict[str, Any] = {}
    text = None
    if kind == "operad":
        report = check_operad(value, bound)
    elif kind == "algebra":
        report = check_algebra(value, bound)
    elif kind == "oalgebra":
        report = check_algebra(value.as_algebra(), bound)
    elif kind == "module":
        report = check_module(value, bound)
    elif kind == "prespectrum":
        report = omega_spectrum_check(value)
    else:
        # sequences and complexes are validated while they are built
        report = CheckReport(entity, bound or 0)
        report.tick("construction")
        if kind == "sequence":
            details = sequence_json(value)
            text = sequence_section(entity, value)
        else:
            details = {"homology": {str(deg): dim for deg, dim in homology_table(value).items()}}
            text = complex_section(entity, value)
    logger.info(f"Checked {kind} {entity}: {'pass' if report.passed else 'fail'}")
    result = _checked("check", report, entity=entity, kind=kind, details=details)
    result.text = text
    return result


def cmd_compose(defs: DefinitionFile, left: str, right: str, bound: Optional[int] = None) -> CommandResult:
    """``left o right`` up to arity ``bound``."""
    x, y = defs.get(left, "sequence"), defs.get(right, "sequence")
    witness = compose(x, y, bound)
    result = witness.result
    name = f"{left}_o_{right}"
    payload = _payload("compose", left=left, right=right, bound=result.support_bound, result=sequence_json(result))
    return CommandResult(payload, text=sequence_section(name, result))


def cmd_free_stage(defs: DefinitionFile, operad: str, oalgebra: str, n: int) -> CommandResult:
    """Stages ``0..n`` of the filtration of the free algebra on an O-algebra."""
    p, x = defs.get(operad, "operad"), defs.get(oalgebra, "oalgebra")
    if x.operad is not p:
        raise StructureMismatch(f"{oalgebra} is declared over {x.operad.name}, not {operad}")
    stages = free_algebra_filtration(p, x, n)
    table = {color: [stage.object(color).size for stage in stages] for color in p.colors}
    serialized = [
        {"n": stage.n, "objects": {color: object_json(stage.object(color)) for color in p.colors}}
        for stage in stages[1:]
    ]
    logger.info(f"Free stages of {oalgebra} over {operad}: {table}")
    return CommandResult(_payload("free-stage", operad=operad, oalgebra=oalgebra, n=n, table=table, stages=serialized))


def cmd_envelope(defs: DefinitionFile, operad: str, algebra: str, bound: Optional[int] = None) -> CommandResult:
    """The enveloping operad of an algebra with the hom table of its arity-one part."""
    p, alg = defs.get(operad, "operad"), defs.get(algebra, "algebra")
    envelope = enveloping_operad(p, alg, bound)
    category = underlying_category(envelope.result)
    payload = _payload(
        "envelope",
        operad=operad,
        algebra=algebra,
        bound=envelope.bound,
        result=sequence_json(envelope.result.sequence),
        homs=category.hom_sizes(),
    )
    return CommandResult(payload, text=operad_section(f"{operad}_{algebra}", envelope.result))


def cmd_verify(
    suite: str, spec: InstanceSpec, mutate: bool = False, instances: int = 1, window: int = 2
) -> CommandResult:
    """Run a verification suite and report it."""
    report = run_suite(suite, spec, mutate=mutate, instances=instances, window=window)
    return CommandResult(report.to_json(), ExitCode.OK if report.passed else ExitCode.VERIFICATION_FAILURE)


def cmd_stable(defs: DefinitionFile, prespectrum: str, window: int = 2) -> CommandResult:
    """Stable homology of a prespectrum, with its Omega-spectrum check."""
    spectrum = defs.get(prespectrum, "prespectrum")
    stable = spectrify(spectrum, window)
    omega = omega_spectrum_check(spectrum) if spectrum.truncation >= 1 else None
    payload = _payload(
        "stable",
        prespectrum=prespectrum,
        stable=stable.to_dict(),
        omega=omega.to_dict() if omega is not None else None,
    )
    return CommandResult(payload)
