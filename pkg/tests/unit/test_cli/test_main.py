"""Unit tests for the command line entry point."""

import json
from pathlib import Path

import pytest

from operadkit.cli.commands import CommandResult
from operadkit.cli.main import build_parser, render, run
from operadkit.config.constants import ExitCode
from operadkit.config.settings import KernelSettings
from operadkit.errors import NonFinitary

FIXTURES = Path(__file__).parents[2] / "fixtures"


@pytest.fixture
def settings():
    return KernelSettings(_env_file=None)


class TestParser:
    """Argument parsing."""

    def test_verify_defaults_from_settings(self, settings):
        args = build_parser(settings).parse_args(["verify", "compute1"])
        assert args.seed == settings.default_seed
        assert args.truncation == settings.default_truncation
        assert args.window == settings.stability_window
        assert args.instances == 1

    def test_missing_arguments_are_usage_errors(self, settings, capsys):
        assert run(["check"], settings) == ExitCode.PARSE_ERROR

    def test_help_exits_cleanly(self, settings, capsys):
        assert run(["--help"], settings) == ExitCode.OK


class TestRender:
    """JSON and text output."""

    def test_json_is_sorted(self):
        text = render(CommandResult({"schema": 1, "b": 2, "a": 1}), "json")
        assert text.index('"a"') < text.index('"b"')

    def test_text_falls_back_to_json(self):
        assert json.loads(render(CommandResult({"schema": 1}), "text")) == {"schema": 1}


class TestRun:
    """Exit codes of whole commands."""

    def test_check_complex_as_text(self, settings, capsys):
        code = run(["--format", "text", "check", str(FIXTURES / "spectra.def"), "A"], settings)
        assert code == ExitCode.OK
        out = capsys.readouterr().out
        assert out.startswith("[complex A]")
        assert "d 1 = [1; -1]" in out

    def test_missing_file(self, settings, capsys):
        assert run(["check", str(FIXTURES / "absent.def"), "P"], settings) == ExitCode.PARSE_ERROR
        assert json.loads(capsys.readouterr().out)["error"] == "usage"


class TestExecute:
    """Error mapping around a single command."""

    def test_domain_error_from_command(self, settings, mocker, capsys):
        mocker.patch("operadkit.cli.main.cmd_check", side_effect=NonFinitary("unbounded"))
        assert run(["check", str(FIXTURES / "com.def"), "P"], settings) == ExitCode.MATH_DOMAIN_ERROR
        payload = json.loads(capsys.readouterr().out)
        assert payload["type"] == "NonFinitary"
        assert payload["message"] == "unbounded"

    def test_unexpected_error_is_logged_and_raised(self, settings, mocker):
        mocker.patch("operadkit.cli.main.cmd_check", side_effect=RuntimeError("boom"))
        log_error = mocker.patch("operadkit.cli.main.logger.error")
        with pytest.raises(RuntimeError):
            run(["check", str(FIXTURES / "com.def"), "P"], settings)
        message = log_error.call_args[0][0]
        assert message.startswith("Unexpected error: boom")
        assert "Traceback" in message

    def test_verify_uses_configured_counts(self, settings, mocker):
        cmd_verify = mocker.patch("operadkit.cli.main.cmd_verify", return_value=CommandResult({"schema": 1}))
        assert run(["verify", "compute1", "--acceptance"], settings) == ExitCode.OK
        assert cmd_verify.call_args.kwargs["instances"] == settings.instances_for("compute1")
