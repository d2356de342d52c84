"""Maps of operads and the canonical maps ``O -> P_{<=1} -> P``."""

import logging
from dataclasses import dataclass
from typing import Dict, Optional

from operadkit.basecat import (
    BaseMorphism,
    Vector,
    compose,
    from_images,
    identity,
    morphisms_equal,
    same_object,
)
from operadkit.errors import StructureMismatch
from operadkit.operads.checks import CheckReport, basis, inner_choices, outer_elements
from operadkit.operads.operad import NullaryOperad, Operad, nullary_operad, one_skeleton
from operadkit.symseq import OrbitSignature

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OperadMap:
    """A map of operads given by one morphism per orbit of the source."""

    source: Operad
    target: Operad
    components: Dict[OrbitSignature, BaseMorphism]
    name: str = "f"

    def __post_init__(self):
        for key, m in self.components.items():
            if not same_object(m.source, self.source.object(key)) or not same_object(m.target, self.target.object(key)):
                raise StructureMismatch(f"Component of {self.name} at {key} has the wrong source or target")

    def component(self, key: OrbitSignature) -> BaseMorphism:
        if key in self.components:
            return self.components[key]
        return from_images(self.source.object(key), self.target.object(key), lambda label: {})

    def apply(self, key: OrbitSignature, vector: Vector) -> Vector:
        if not vector:
            return {}
        return self.component(key).apply(vector)


def identity_map(p: Operad) -> OperadMap:
    return OperadMap(p, p, {key: identity(p.object(key)) for key in p.orbits()}, name=f"id_{p.name}")


def compose_operad_maps(g: OperadMap, f: OperadMap) -> OperadMap:
    """The composite ``g . f``."""
    if g.source is not f.target:
        raise StructureMismatch(f"Cannot compose {g.name} after {f.name}")
    components = {key: compose(g.component(key), f.component(key)) for key in f.source.orbits()}
    return OperadMap(f.source, g.target, components, name=f"{g.name}.{f.name}")


def operad_maps_equal(f: OperadMap, g: OperadMap) -> Optional[str]:
    """None when the maps agree on every orbit, else a witness."""
    for key in f.source.orbits():
        witness = morphisms_equal(f.component(key), g.component(key))
        if witness is not None:
            return f"{key} at {witness[0]!r}: {witness[1]!r} != {witness[2]!r}"
    return None


def check_operad_map(f: OperadMap, bound: Optional[int] = None) -> CheckReport:
    """Check that ``f`` is equivariant and preserves units and composition."""
    source, target = f.source, f.target
    if bound is None:
        bound = min(source.declared_bound, target.declared_bound)
    report = CheckReport(f.name, bound)
    for key in source.orbits():
        if key.arity > bound:
            continue
        for sigma in key.aut_generators:
            left = compose(f.component(key), source.entry(key)(sigma))
            right = compose(target.entry(key)(sigma), f.component(key))
            witness = morphisms_equal(left, right)
            report.tick("equivariance")
            if witness is not None:
                report.fail("equivariance", f"{sigma} at {key} on {witness[0]!r}")
    for color in source.colors:
        key = source.unit_key(color)
        report.expect("unit", f.apply(key, source.units[color]), target.units[color], f"unit of {color}")
    for outer, label in outer_elements(source, bound):
        image = f.apply(outer, basis(label))
        for inner in inner_choices(source, outer.inputs, bound):
            concat = tuple(c for orbit, _ in inner for c in orbit.inputs)
            result_key = OrbitSignature(outer.out_color, tuple(sorted(concat, key=source.colors.index)))
            left = f.apply(result_key, source.gamma(outer, label, inner))
            mapped = [(orbit, f.apply(orbit, basis(q))) for orbit, q in inner]
            right = target.gamma_vector(outer, image, mapped)
            report.expect("composition", left, right, f"{label!r} at {outer} with {inner}")
    return report


def psi(p: Operad, o: Optional[NullaryOperad] = None, skeleton_operad: Optional[Operad] = None) -> OperadMap:
    """``O -> P_{<=1}``: identity on nullary operations, units to units."""
    o = o or nullary_operad(p)
    skeleton_operad = skeleton_operad or one_skeleton(p)
    return OperadMap(o, skeleton_operad, _nullary_components(o, skeleton_operad), name="psi")


def phi(p: Operad, skeleton_operad: Optional[Operad] = None) -> OperadMap:
    """The inclusion ``P_{<=1} -> P``."""
    skeleton_operad = skeleton_operad or one_skeleton(p)
    components = {key: identity(p.object(key)) for key in skeleton_operad.orbits()}
    return OperadMap(skeleton_operad, p, components, name="phi")


def rho(p: Operad, o: Optional[NullaryOperad] = None) -> OperadMap:
    """``O -> P`` built directly: the nullary operations and the units."""
    o = o or nullary_operad(p)
    return OperadMap(o, p, _nullary_components(o, p), name="rho")


def _nullary_components(o: NullaryOperad, target: Operad) -> Dict[OrbitSignature, BaseMorphism]:
    components = {}
    for key in o.orbits():
        if key.arity == 0:
            components[key] = from_images(o.object(key), target.object(key), basis)
        else:
            color = key.out_color
            components[key] = from_images(o.object(key), target.object(key), lambda _, c=color: target.units[c])
    return components
