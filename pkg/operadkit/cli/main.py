"""
Command line entry point.

Exit codes: 0 success, 1 a verification or law check failed, 2 the input
could not be parsed or named something unknown, 3 the request is outside
the mathematical domain of the operation.
"""

import argparse
import json
import logging
import sys
import traceback
from typing import Callable, Dict, List, Optional

from pydantic import ValidationError

from operadkit.cli.commands import (
    CommandResult,
    cmd_check,
    cmd_compose,
    cmd_envelope,
    cmd_free_stage,
    cmd_stable,
    cmd_verify,
)
from operadkit.cli.definitions import DefinitionFile
from operadkit.config.constants import REPORT_SCHEMA_KEY, REPORT_SCHEMA_VERSION, ExitCode, SuiteName, Variant
from operadkit.config.settings import KernelSettings
from operadkit.errors import DefinitionParseError, MathDomainError, UsageError
from operadkit.utils import setup_logging
from operadkit.verify import InstanceSpec

logger = logging.getLogger(__name__)


def build_parser(settings: KernelSettings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="operadkit", description="Exact kernel for colored symmetric operads")
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level (default: %(default)s)")
    parser.add_argument("--format", choices=("json", "text"), default="json", help="Output format")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Check the laws of a declared entity")
    check.add_argument("file")
    check.add_argument("entity")
    check.add_argument("--bound", type=int, default=None)

    compose = sub.add_parser("compose", help="Composition product X o Y")
    compose.add_argument("file")
    compose.add_argument("left")
    compose.add_argument("right")
    compose.add_argument("--bound", type=int, default=None)

    stage = sub.add_parser("free-stage", help="Filtration stages of a free algebra")
    stage.add_argument("file")
    stage.add_argument("operad")
    stage.add_argument("oalgebra")
    stage.add_argument("n", type=int)

    envelope = sub.add_parser("envelope", help="Enveloping operad of an algebra")
    envelope.add_argument("file")
    envelope.add_argument("operad")
    envelope.add_argument("algebra")
    envelope.add_argument("--bound", type=int, default=None)

    verify = sub.add_parser("verify", help="Run a verification suite on generated instances")
    verify.add_argument("suite", help=", ".join(s.value for s in SuiteName))
    verify.add_argument("--seed", type=int, default=settings.default_seed)
    verify.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.FINSET.value)
    verify.add_argument("--colors", type=int, default=1, help="Number of colors")
    verify.add_argument("--arity-bound", type=int, default=settings.default_arity_bound)
    verify.add_argument("--entry-bound", type=int, default=3)
    verify.add_argument("--truncation", type=int, default=settings.default_truncation)
    verify.add_argument("--instances", type=int, default=1, help="Consecutive seeds to run")
    verify.add_argument("--acceptance", action="store_true", help="Run the configured acceptance instance count")
    verify.add_argument("--window", type=int, default=settings.stability_window)
    verify.add_argument("--mutate", action="store_true", help="Run against the suite's corrupted construction")

    stable = sub.add_parser("stable", help="Stable homology of a prespectrum")
    stable.add_argument("file")
    stable.add_argument("prespectrum")
    stable.add_argument("--window", type=int, default=settings.stability_window)
    stable.add_argument("--truncation", type=int, default=settings.default_truncation)
    return parser


def _load(args: argparse.Namespace, settings: KernelSettings) -> DefinitionFile:
    truncation = getattr(args, "truncation", settings.default_truncation)
    return DefinitionFile.load(args.file, truncation=truncation)


def _verify(args: argparse.Namespace, settings: KernelSettings) -> CommandResult:
    try:
        spec = InstanceSpec(
            variant=args.variant,
            colors=args.colors,
            arity_bound=args.arity_bound,
            entry_bound=args.entry_bound,
            seed=args.seed,
            truncation=args.truncation,
        )
    except ValidationError as e:
        raise UsageError(f"Invalid instance parameters: {e.errors()[0]['msg']}") from None
    instances = settings.instances_for(args.suite) if args.acceptance else args.instances
    return cmd_verify(args.suite, spec, mutate=args.mutate, instances=instances, window=args.window)


COMMANDS: Dict[str, Callable[[argparse.Namespace, KernelSettings], CommandResult]] = {
    "check": lambda a, s: cmd_check(_load(a, s), a.entity, a.bound),
    "compose": lambda a, s: cmd_compose(_load(a, s), a.left, a.right, a.bound),
    "free-stage": lambda a, s: cmd_free_stage(_load(a, s), a.operad, a.oalgebra, a.n),
    "envelope": lambda a, s: cmd_envelope(_load(a, s), a.operad, a.algebra, a.bound),
    "verify": _verify,
    "stable": lambda a, s: cmd_stable(_load(a, s), a.prespectrum, a.window),
}


def _error(kind: str, message: str, code: ExitCode, **fields) -> CommandResult:
    payload = {REPORT_SCHEMA_KEY: REPORT_SCHEMA_VERSION, "error": kind, "message": message, **fields}
    return CommandResult(payload, code)


def execute(args: argparse.Namespace, settings: KernelSettings) -> CommandResult:
    """Run one parsed command, turning kernel errors into exit codes."""
    try:
        return COMMANDS[args.command](args, settings)
    except DefinitionParseError as e:
        logger.error(f"Parse error: {str(e)}")
        return _error(
            "parse", e.message, ExitCode.PARSE_ERROR, line=e.line, column=e.column, source=getattr(e, "source", None)
        )
    except (UsageError, OSError) as e:
        logger.error(f"Usage error: {str(e)}")
        return _error("usage", str(e), ExitCode.PARSE_ERROR)
    except MathDomainError as e:
        logger.error(f"Math domain error: {type(e).__name__}: {str(e)}")
        return _error("domain", str(e), ExitCode.MATH_DOMAIN_ERROR, type=type(e).__name__)
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}\n{traceback.format_exc()}")
        raise


def render(result: CommandResult, fmt: str) -> str:
    if fmt == "text" and result.text is not None:
        return result.text.rstrip("\n")
    return json.dumps(result.payload, indent=2, sort_keys=True)


def run(argv: Optional[List[str]] = None, settings: Optional[KernelSettings] = None) -> int:
    """
    Parse ``argv``, run the command and print its result.

    Returns:
        The process exit code
    """
    settings = settings or KernelSettings()
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(ExitCode.OK if e.code == 0 else ExitCode.PARSE_ERROR)
    setup_logging(args.log_level)
    result = execute(args, settings)
    print(render(result, args.format))
    return int(result.exit_code)


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
