"""Unit tests for kernel settings."""

import pytest
from pydantic import ValidationError

from operadkit.config.constants import ACCEPTANCE_INSTANCES, DEFAULT_STABILITY_WINDOW
from operadkit.config.settings import KernelSettings


@pytest.fixture
def settings():
    return KernelSettings(_env_file=None)


class TestKernelSettings:
    """Defaults, validation and environment overrides."""

    def test_defaults(self, settings):
        assert settings.default_arity_bound == 3
        assert settings.default_truncation == 6
        assert settings.stability_window == DEFAULT_STABILITY_WINDOW
        assert settings.default_seed == 0
        assert settings.report_schema == 1

    def test_acceptance_counts(self, settings):
        assert settings.instances_for("compose-oracle") == ACCEPTANCE_INSTANCES["compose-oracle"]
        assert settings.instances_for("unknown") == 1

    def test_suite_override(self):
        settings = KernelSettings(_env_file=None, suite_instances={"sigma-infty": 3})
        assert settings.instances_for("sigma-infty") == 3
        assert settings.instances_for("compute1") == ACCEPTANCE_INSTANCES["compute1"]

    @pytest.mark.parametrize("field", ["stability_window", "default_truncation"])
    def test_rejects_nonpositive(self, field):
        with pytest.raises(ValidationError):
            KernelSettings(_env_file=None, **{field: 0})

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("DEFAULT_TRUNCATION", "9")
        monkeypatch.setenv("LOG_LEVEL", "DEBUG")
        settings = KernelSettings(_env_file=None)
        assert settings.default_truncation == 9
        assert settings.log_level == "DEBUG"
