"""Unit tests for instance generation and the verification suites."""

import pytest
from pydantic import ValidationError

from operadkit.algmod import check_algebra
from operadkit.config.constants import REPORT_SCHEMA_KEY, Outcome, SuiteName, Variant
from operadkit.errors import BoundsTooTight, UnknownSuite, WrongVariant
from operadkit.symseq import entry_sizes
from operadkit.verify import CHAIN_SUITES, InstanceSpec, VerificationReport, generate, run_checks, run_suite, suite_name


@pytest.fixture
def spec():
    return InstanceSpec(truncation=3)


class TestInstanceSpec:
    """Bounds of generated instances."""

    @pytest.mark.parametrize(
        "bounds",
        [{"colors": 0}, {"colors": 4}, {"arity_bound": 5}, {"entry_bound": 0}, {"truncation": 0}],
    )
    def test_out_of_range(self, bounds):
        with pytest.raises(BoundsTooTight):
            InstanceSpec(**bounds)

    def test_with_seed(self, spec):
        moved = spec.with_seed(4)
        assert moved.seed == 4
        assert moved.truncation == spec.truncation


class TestGenerate:
    """Seeded random instances."""

    def test_deterministic(self, spec):
        first, second = generate(spec), generate(spec)
        assert entry_sizes(first.operad.sequence) == entry_sizes(second.operad.sequence)
        assert first.algebra.sizes() == second.algebra.sizes()

    def test_chain_complexes_rejected(self):
        with pytest.raises(WrongVariant):
            generate(InstanceSpec(variant=Variant.CHAINQ))

    def test_two_colored_operads_vary_with_the_seed(self):
        shapes = set()
        for seed in range(100):
            p = generate(InstanceSpec(colors=2, seed=seed)).operad
            shapes.add((p.name, frozenset(entry_sizes(p.sequence).items())))
        assert len(shapes) >= 30

    @pytest.mark.parametrize("seed", range(5))
    def test_two_colored_algebras_are_monoids(self, seed):
        instance = generate(InstanceSpec(colors=2, seed=seed))
        sizes = instance.algebra.sizes()
        assert len(set(sizes.values())) == 1
        assert instance.algebra.name.startswith("Z")
        assert check_algebra(instance.algebra).passed


class TestRunner:
    """Suite resolution, reports and failure propagation."""

    def test_unknown_suite(self, spec):
        with pytest.raises(UnknownSuite):
            suite_name("no-such-suite")
        with pytest.raises(UnknownSuite):
            run_suite("no-such-suite", spec)

    def test_operadic_suites_reject_chainq(self):
        with pytest.raises(WrongVariant):
            run_checks(SuiteName.COMPUTE1, InstanceSpec(variant=Variant.CHAINQ))

    def test_chain_suites_ignore_variant(self):
        assert SuiteName.SIGMA_INFTY in CHAIN_SUITES
        assert run_checks(SuiteName.KERNEL_COUNIT, InstanceSpec(variant=Variant.CHAINQ, truncation=2)).passed

    def test_report_json(self, spec):
        report = run_suite("compute1", spec)
        assert report.passed
        data = report.to_json()
        assert data[REPORT_SCHEMA_KEY] == 1
        assert data["suite"] == "compute1"
        assert data["outcome"] == "pass"
        assert data["witness"] is None
        assert data["details"]["checked"]

    def test_failure_needs_witness(self, spec):
        with pytest.raises(ValidationError):
            VerificationReport(suite=SuiteName.COMPUTE1, spec=spec, outcome=Outcome.FAIL)

    def test_mutated_run_stops_at_first_failure(self, spec):
        report = run_suite("compute1", spec, mutate=True, instances=3)
        assert report.outcome == Outcome.FAIL
        assert report.instances == 1
        assert report.witness.startswith("seed 0:")


@pytest.mark.slow
class TestSuites:
    """Every suite passes on a few seeds, in one and two colors, and catches its corrupted instances."""

    @pytest.mark.parametrize("colors", [1, 2])
    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize("name", list(SuiteName))
    def test_passes(self, name, seed, colors, spec):
        report = run_checks(name, spec.model_copy(update={"seed": seed, "colors": colors}))
        assert report.passed, report.first_witness()

    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize("name", list(SuiteName))
    def test_mutation_detected(self, name, seed, spec):
        assert not run_checks(name, spec.with_seed(seed), mutate=True).passed
