"""Integration tests for the command line against definition files."""

import json
from pathlib import Path

import pytest

from operadkit.cli.main import run
from operadkit.config.constants import ExitCode
from operadkit.config.settings import KernelSettings

FIXTURES = Path(__file__).parents[1] / "fixtures"
COM = str(FIXTURES / "com.def")
SPECTRA = str(FIXTURES / "spectra.def")


@pytest.fixture
def invoke(capsys):
    """Run the command line and return the exit code with the parsed JSON output."""
    settings = KernelSettings(_env_file=None)

    def _invoke(*argv):
        code = run(list(argv), settings)
        return code, json.loads(capsys.readouterr().out)

    return _invoke


@pytest.mark.integration
class TestCliIntegration:
    """Commands end to end, from definition text to JSON reports."""

    def test_free_stage_table(self, invoke):
        code, payload = invoke("free-stage", COM, "P", "X", "3")
        assert code == ExitCode.OK
        assert payload["schema"] == 1
        assert payload["table"] == {"c": [1, 2, 3, 4]}
        assert [stage["n"] for stage in payload["stages"]] == [1, 2, 3]

    def test_check_operad(self, invoke):
        code, payload = invoke("check", COM, "P")
        assert code == ExitCode.OK
        assert payload["outcome"] == "pass"
        assert payload["witness"] is None

    def test_check_algebra(self, invoke):
        code, payload = invoke("check", COM, "A")
        assert code == ExitCode.OK
        assert payload["kind"] == "algebra"

    def test_envelope(self, invoke):
        code, payload = invoke("envelope", COM, "P", "A")
        assert code == ExitCode.OK
        assert payload["homs"] == {"c->c": 2}

    def test_malformed_definitions(self, invoke):
        code, payload = invoke("check", str(FIXTURES / "malformed.def"), "P")
        assert code == ExitCode.PARSE_ERROR
        assert payload["error"] == "parse"
        assert payload["line"] == 3

    def test_unknown_entity(self, invoke):
        code, payload = invoke("check", COM, "Nope")
        assert code == ExitCode.PARSE_ERROR
        assert payload["error"] == "usage"

    def test_compose_needs_finitary_input(self, invoke):
        code, payload = invoke("compose", COM, "P", "P")
        assert code == ExitCode.MATH_DOMAIN_ERROR
        assert payload["type"] == "NonFinitary"

    def test_verify_suite(self, invoke):
        code, payload = invoke("verify", "compute1", "--seed", "0")
        assert code == ExitCode.OK
        assert payload["schema"] == 1
        assert payload["outcome"] == "pass"

    def test_verify_mutation(self, invoke):
        code, payload = invoke("verify", "compute2", "--mutate")
        assert code == ExitCode.VERIFICATION_FAILURE
        assert payload["witness"].startswith("seed 0:")

    def test_verify_unknown_suite(self, invoke):
        code, payload = invoke("verify", "no-such-suite")
        assert code == ExitCode.PARSE_ERROR

    def test_verify_chain_complexes_rejected(self, invoke):
        code, payload = invoke("verify", "compute1", "--variant", "chainq")
        assert code == ExitCode.MATH_DOMAIN_ERROR
        assert payload["type"] == "WrongVariant"

    def test_verify_bounds(self, invoke):
        code, payload = invoke("verify", "compute1", "--colors", "9")
        assert code == ExitCode.MATH_DOMAIN_ERROR
        assert payload["type"] == "BoundsTooTight"

    def test_stable_homology(self, invoke):
        code, payload = invoke("stable", SPECTRA, "S")
        assert code == ExitCode.OK
        assert payload["stable"]["stable_homology"] == {"0": 1}
        assert payload["omega"]["passed"] is True

    def test_corrupted_prespectrum_fails_check(self, invoke):
        code, payload = invoke("check", SPECTRA, "B")
        assert code == ExitCode.VERIFICATION_FAILURE
        assert payload["outcome"] == "fail"

    def test_compose_nonunital(self, invoke):
        code, payload = invoke("compose", COM, "N", "N", "--bound", "3")
        assert code == ExitCode.OK
        assert payload["result"]["entries"] == {"(c <- c)": 1, "(c <- c c)": 2, "(c <- c c c)": 5}
