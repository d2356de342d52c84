"""Law checks for operads: failures are reported with concrete witnesses."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from operadkit.basecat import Label, Vector
from operadkit.basecat.perms import Perm, act_on_tuple, block_sum, identity_perm
from operadkit.operads.operad import Operad, concatenated_inputs, offsets
from operadkit.symseq import Color, OrbitSignature

logger = logging.getLogger(__name__)

MAX_FAILURES_PER_LAW = 3


@dataclass(frozen=True)
class LawFailure:
    law: str
    witness: str


@dataclass
class CheckReport:
    """Outcome of checking the laws of a structure up to an arity bound."""

    subject: str
    bound: int
    checked: Dict[str, int] = field(default_factory=dict)
    failures: List[LawFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def tick(self, law: str) -> None:
        self.checked[law] = self.checked.get(law, 0) + 1

    def fail(self, law: str, witness: str) -> None:
        if sum(1 for f in self.failures if f.law == law) < MAX_FAILURES_PER_LAW:
            self.failures.append(LawFailure(law, witness))

    def expect(self, law: str, left, right, witness: str) -> bool:
        self.tick(law)
        if left != right:
            self.fail(law, f"{witness}: {left!r} != {right!r}")
            return False
        return True

    def merge(self, other: "CheckReport") -> "CheckReport":
        for law, count in other.checked.items():
            self.checked[law] = self.checked.get(law, 0) + count
        self.failures.extend(other.failures)
        return self

    def first_witness(self) -> Optional[str]:
        if not self.failures:
            return None
        failure = self.failures[0]
        return f"{failure.law}: {failure.witness}"

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "bound": self.bound,
            "passed": self.passed,
            "checked": dict(sorted(self.checked.items())),
            "failures": [{"law": f.law, "witness": f.witness} for f in self.failures],
        }


# Element enumeration


def elements_with_output(p: Operad, color: Color, max_arity: int) -> Iterator[Tuple[OrbitSignature, Label]]:
    """Basis elements with the given output color and arity at most ``max_arity``."""
    for key in p.orbits():
        if key.out_color == color and key.arity <= max_arity:
            for label in p.labels(key):
                yield key, label


def inner_choices(
    p: Operad, colors: Sequence[Color], max_arity: int
) -> Iterator[Tuple[Tuple[OrbitSignature, Label], ...]]:
    """Tuples of basis elements with the given outputs and total arity at most ``max_arity``."""
    if not colors:
        yield ()
        return
    for head in elements_with_output(p, colors[0], max_arity):
        for tail in inner_choices(p, colors[1:], max_arity - head[0].arity):
            yield (head,) + tail


def outer_elements(p: Operad, bound: int) -> Iterator[Tuple[OrbitSignature, Label]]:
    for key in p.orbits():
        if key.arity <= bound:
            for label in p.labels(key):
                yield key, label


def block_perm(sizes: Sequence[int], sigma: Perm) -> Perm:
    """The permutation moving block ``i`` (of the given sizes) to slot ``sigma[i]``."""
    moved = [0] * len(sizes)
    for i, size in enumerate(sizes):
        moved[sigma[i]] = size
    target = offsets(moved)
    image = []
    for i, size in enumerate(sizes):
        image.extend(target[sigma[i]] + t for t in range(size))
    return tuple(image)


def inner_block_perm(sizes: Sequence[int], index: int, tau: Perm) -> Perm:
    """``tau`` acting on block ``index`` and the identity elsewhere."""
    result: Perm = ()
    for i, size in enumerate(sizes):
        result = block_sum(result, tau if i == index else identity_perm(size))
    return result


def basis(label: Label) -> Vector:
    return {label: 1}


# Operad laws


def _check_units(p: Operad, bound: int, report: CheckReport) -> None:
    for key, label in outer_elements(p, bound):
        unit_key = p.unit_key(key.out_color)
        left = p.gamma_vector(unit_key, p.units[key.out_color], [(key, basis(label))])
        report.expect("left-unit", left, basis(label), f"1_{key.out_color} o {label!r} at {key}")
        inner = [(p.unit_key(c), p.units[c]) for c in key.inputs]
        right = p.gamma_vector(key, basis(label), inner)
        report.expect("right-unit", right, basis(label), f"{label!r} at {key} o units")


def _check_equivariance(p: Operad, bound: int, report: CheckReport) -> None:
    for outer, label in outer_elements(p, bound):
        for inner in inner_choices(p, outer.inputs, bound):
            base = p.gamma(outer, label, inner)
            concat = concatenated_inputs(inner)
            sizes = [orbit.arity for orbit, _ in inner]
            for sigma in outer.aut_generators:
                moved_inner = act_on_tuple(sigma, [(orbit, basis(q)) for orbit, q in inner])
                left = p.gamma_vector(outer, p.act(outer, sigma, basis(label)), moved_inner)
                right = p.transport(outer.out_color, concat, block_perm(sizes, sigma), base)
                report.expect("equivariance-outer", left, right, f"{sigma} on {label!r} at {outer} with {inner}")
            for i, (orbit, q) in enumerate(inner):
                for tau in orbit.aut_generators:
                    moved_inner = [(o, basis(x)) for o, x in inner]
                    moved_inner[i] = (orbit, p.act(orbit, tau, basis(q)))
                    left = p.gamma_vector(outer, basis(label), moved_inner)
                    right = p.transport(outer.out_color, concat, inner_block_perm(sizes, i, tau), base)
                    witness = f"{tau} on slot {i} of {label!r} at {outer} with {inner}"
                    report.expect("equivariance-inner", left, right, witness)


def _check_associativity(p: Operad, bound: int, report: CheckReport) -> None:
    for outer, label in outer_elements(p, bound):
        for inner in inner_choices(p, outer.inputs, bound):
            middle = p.gamma(outer, label, inner)
            concat = concatenated_inputs(inner)
            for leaves in inner_choices(p, concat, bound):
                leaf_terms = [(orbit.inputs, basis(r)) for orbit, r in leaves]
                left = p.compose_labeled(outer.out_color, concat, middle, leaf_terms)
                sizes = [orbit.arity for orbit, _ in inner]
                starts = offsets(sizes)
                grouped = []
                for i, (orbit, q) in enumerate(inner):
                    block = leaf_terms[starts[i]:starts[i] + sizes[i]]
                    inputs = tuple(c for leaf_inputs, _ in block for c in leaf_inputs)
                    grouped.append((inputs, p.compose_labeled(orbit.out_color, orbit.inputs, basis(q), block)))
                right = p.compose_labeled(outer.out_color, outer.inputs, basis(label), grouped)
                report.expect("associativity", left, right, f"{label!r} at {outer} with {inner} and {leaves}")


def check_operad(p: Operad, bound: Optional[int] = None) -> CheckReport:
    """
    Check the action, unit, equivariance and associativity laws on basis
    elements of arity at most ``bound``.
    """
    if bound is None or bound > p.declared_bound:
        if bound is not None:
            logger.warning(f"Bound {bound} exceeds the declared bound of {p.name}; checking up to {p.declared_bound}")
        bound = p.declared_bound
    report = CheckReport(p.name, bound)
    for key in p.orbits():
        report.tick("action")
        failure = p.entry(key).verify()
        if failure is not None:
            report.fail("action", f"{key}: {failure}")
    if not report.passed:
        return report
    _check_units(p, bound, report)
    _check_equivariance(p, bound, report)
    _check_associativity(p, bound, report)
    checked = sum(report.checked.values())
    logger.info(f"Checked {p.name} up to arity {bound}: {checked} instances, passed={report.passed}")
    return report
