#!/usr/bin/env python3
"""Acceptance run: every suite at its configured instance count, plus the Q-object comparison."""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from operadkit.algmod import compare_with_pushout_product, q_object  # noqa: E402
from operadkit.config.constants import SuiteName, Variant  # noqa: E402
from operadkit.config.settings import KernelSettings  # noqa: E402
from operadkit.utils import setup_logging  # noqa: E402
from operadkit.verify import InstanceSpec, generate, run_suite  # noqa: E402

Q_OBJECT_INSTANCES = 100
Q_OBJECT_ARITY = 3
MULTICOLOR_SUITES = (
    SuiteName.COMPOSE_ORACLE,
    SuiteName.COMPOSE_ASSOC,
    SuiteName.COMPUTE1,
    SuiteName.COMPUTE2,
    SuiteName.FILTRATION_ORACLE,
    SuiteName.ENVELOPE_UNIVERSAL,
)
MULTICOLOR_INSTANCES = 20


def run_suites(settings: KernelSettings) -> bool:
    ok = True
    for index, suite in enumerate(SuiteName, start=1):
        count = settings.instances_for(suite.value)
        specs = [InstanceSpec(seed=settings.default_seed)]
        if suite in MULTICOLOR_SUITES:
            specs.append(InstanceSpec(colors=2, seed=settings.default_seed))
        for spec in specs:
            instances = max(count, MULTICOLOR_INSTANCES) if spec.colors > 1 else count
            report = run_suite(suite.value, spec, instances=instances, window=settings.stability_window)
            mark = "✅" if report.passed else "❌"
            print(f"{index:>2}. {mark} {suite.value:<20} colors={spec.colors} "
                  f"instances={report.instances} {report.elapsed_seconds:.2f}s")
            if not report.passed:
                print(f"    Witness: {report.witness}")
                ok = False
    return ok


def run_q_objects(settings: KernelSettings) -> bool:
    """``Q(X, w)`` against the iterated pushout-product of the basepoints."""
    print("\nQ-object comparison...")
    started = time.perf_counter()
    compared = 0
    for seed in range(settings.default_seed, settings.default_seed + Q_OBJECT_INSTANCES):
        variant = Variant.FINSET if seed % 2 == 0 else Variant.VECTQ
        instance = generate(InstanceSpec(variant=variant, arity_bound=Q_OBJECT_ARITY, seed=seed))
        x = instance.oalgebra
        for key in instance.operad.orbits():
            if not 1 <= key.arity <= Q_OBJECT_ARITY:
                continue
            _, failure = compare_with_pushout_product(q_object(x.basepoints, key), x.basepoints)
            compared += 1
            if failure is not None:
                print(f"❌ seed {seed}, {key}: {failure}")
                return False
    print(f"✅ {compared} comparisons in {time.perf_counter() - started:.2f}s")
    return True


def main() -> bool:
    settings = KernelSettings()
    setup_logging("WARNING")
    print("🧪 ACCEPTANCE RUN")
    print("=" * 50)
    ok = run_suites(settings)
    ok = run_q_objects(settings) and ok
    print("\n" + "=" * 50)
    print("🎉 ALL PASSED" if ok else "FAILURES ABOVE")
    return ok


if __name__ == "__main__":
    sys.exit(0 if main() else 1)
