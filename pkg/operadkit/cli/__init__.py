"""Command line interface: definition files in, JSON reports out."""

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
from operadkit.cli.grammar import Item, Section, parse_definitions
from operadkit.cli.main import build_parser, main, run
