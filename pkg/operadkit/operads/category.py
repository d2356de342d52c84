"""Enriched categories and operads concentrated in arity one."""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from operadkit.basecat import (
    ONE,
    BaseMorphism,
    BaseObject,
    Label,
    Vector,
    add_into,
    from_images,
    initial_object,
    tensor_many,
    trivial_action,
)
from operadkit.config.constants import Variant
from operadkit.operads.checks import CheckReport, basis
from operadkit.operads.operad import Inner, Operad
from operadkit.symseq import Color, ColorSet, OrbitSignature, SymmetricSequence

logger = logging.getLogger(__name__)

ComposeFn = Callable[[Color, Color, Color, Label, Label], Vector]


@dataclass(frozen=True, eq=False)
class EnrichedCategory:
    """
    A category enriched in the base with objects the colors.

    ``compose_fn(a, b, c, g, f)`` composes ``g in hom(b, c)`` after
    ``f in hom(a, b)`` and returns a vector of ``hom(a, c)``.
    """

    objects: ColorSet
    variant: Variant
    homs: Dict[Tuple[Color, Color], BaseObject]
    compose_fn: ComposeFn
    identities: Dict[Color, Vector]
    name: str = "C"

    def hom(self, source: Color, target: Color) -> BaseObject:
        return self.homs.get((source, target)) or initial_object(self.variant)

    def compose(self, a: Color, b: Color, c: Color, g: Vector, f: Vector) -> Vector:
        result: Vector = {}
        for g_label, g_coeff in g.items():
            for f_label, f_coeff in f.items():
                add_into(result, self.compose_fn(a, b, c, g_label, f_label), g_coeff * f_coeff)
        return result

    def composition_map(self, a: Color, b: Color, c: Color) -> BaseMorphism:
        """``hom(b, c) (x) hom(a, b) -> hom(a, c)``."""
        source = tensor_many([self.hom(b, c), self.hom(a, b)], self.variant)
        return from_images(source, self.hom(a, c), lambda pair: self.compose_fn(a, b, c, pair[0], pair[1]))

    def hom_sizes(self) -> Dict[str, int]:
        return {f"{a}->{b}": obj.size for (a, b), obj in sorted(self.homs.items())}


def check_category(category: EnrichedCategory) -> CheckReport:
    """Unit and associativity laws on basis elements."""
    report = CheckReport(category.name, 1)
    colors = list(category.objects)
    for a in colors:
        for b in colors:
            for f in category.hom(a, b).labels:
                left = category.compose(a, b, b, category.identities[b], basis(f))
                right = category.compose(a, a, b, basis(f), category.identities[a])
                report.expect("left-unit", left, basis(f), f"id_{b} o {f!r}")
                report.expect("right-unit", right, basis(f), f"{f!r} o id_{a}")
    for a in colors:
        for b in colors:
            for c in colors:
                for d in colors:
                    for f in category.hom(a, b).labels:
                        for g in category.hom(b, c).labels:
                            gf = category.compose_fn(a, b, c, g, f)
                            for h in category.hom(c, d).labels:
                                left = category.compose(a, c, d, basis(h), gf)
                                right = category.compose(a, b, d, category.compose_fn(b, c, d, h, g), basis(f))
                                report.expect("associativity", left, right, f"{h!r} o {g!r} o {f!r}")
    return report


def underlying_category(p: Operad) -> EnrichedCategory:
    """The arity-one part of ``p`` with its composition."""
    homs = {}
    for key in p.orbits():
        if key.arity == 1:
            homs[(key.inputs[0], key.out_color)] = p.object(key)

    def compose_fn(a, b, c, g, f):
        return p.gamma(OrbitSignature(c, (b,)), g, [(OrbitSignature(b, (a,)), f)])

    return EnrichedCategory(p.colors, p.variant, homs, compose_fn, dict(p.units), name=f"{p.name}_1")


def category_operad(category: EnrichedCategory) -> Operad:
    """The operad concentrated in arity one whose algebras are enriched functors."""
    entries = {}
    for (a, b), obj in category.homs.items():
        key = OrbitSignature(b, (a,))
        entries[key] = trivial_action(obj, key.aut, key.aut_generators)
    sequence = SymmetricSequence(category.objects, category.variant, 1, entries)

    def gamma_fn(outer: OrbitSignature, p: Label, inner: Inner) -> Vector:
        (orbit, q), = inner
        return category.compose_fn(orbit.inputs[0], outer.inputs[0], outer.out_color, p, q)

    return Operad(sequence, gamma_fn, dict(category.identities), name=category.name)


def identity_hom_vector(category: EnrichedCategory, color: Color) -> Vector:
    return category.identities.get(color, {}) or {}


def is_trivial_category(category: EnrichedCategory) -> bool:
    """Every hom is the unit with identity compositions."""
    for a in category.objects:
        for b in category.objects:
            size = category.hom(a, b).size
            if size != (1 if a == b else 0):
                return False
    return all(len(v) == 1 and next(iter(v.values())) == ONE for v in category.identities.values())
