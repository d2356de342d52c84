"""Configuration settings for the operad kernel."""

from typing import Dict, Optional

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from operadkit.config.constants import ACCEPTANCE_INSTANCES, DEFAULT_STABILITY_WINDOW, REPORT_SCHEMA_VERSION


class KernelSettings(BaseSettings):
    """Kernel configuration settings."""

    # Environment
    environment: str = Field(default="dev", description="Development Environment")
    log_level: str = Field(default="INFO", description="Root logging level")

    # Group actions
    max_exact_group_order: int = Field(
        default=5040,
        description="Largest group whose action laws are verified on every element"
    )
    action_word_length: int = Field(
        default=4,
        description="Generator word length checked for larger groups"
    )

    # Truncation
    default_arity_bound: int = Field(default=3, description="Arity bound used when none is given")
    default_truncation: int = Field(default=6, description="Prespectrum truncation bound T")
    stability_window: int = Field(
        default=DEFAULT_STABILITY_WINDOW,
        description="Consecutive levels a homology value must hold to count as stable"
    )

    # Verification
    default_seed: int = Field(default=0, description="Seed used when none is given")
    suite_instances: Optional[Dict[str, int]] = Field(default=None)

    # Reports
    report_schema: int = Field(default=REPORT_SCHEMA_VERSION, description="JSON report schema version")

    # Pydantic Settings (v2)
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    @model_validator(mode="after")
    def _fill_derived_defaults(self):
        if self.stability_window < 1:
            raise ValueError("stability_window must be at least 1")
        if self.default_truncation < 1:
            raise ValueError("default_truncation must be at least 1")
        instances = dict(ACCEPTANCE_INSTANCES)
        instances.update(self.suite_instances or {})
        self.suite_instances = instances
        return self

    def instances_for(self, suite: str) -> int:
        """Instance count configured for a suite."""
        return self.suite_instances.get(suite, 1)
