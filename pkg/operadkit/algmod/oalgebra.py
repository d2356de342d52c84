"""Algebras under the nullary part and the relative composite ``P_{<=n} o_O X``."""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    Label,
    Vector,
    compose,
    from_function,
    identity,
    morphisms_equal,
    same_object,
)
from operadkit.compose import NullaryRightModule, RelativeComposite, relative_compose
from operadkit.errors import StructureMismatch
from operadkit.operads import NullaryOperad, Operad, nullary_operad
from operadkit.symseq import Color, OrbitSignature, skeleton
from operadkit.algmod.algebra import Algebra

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OAlgebra:
    """
    An algebra over the operad generated by the nullary part of ``operad``:
    carriers ``X(c)`` with basepoint maps ``P_0(c) -> X(c)``.

    An optional ``augmentation`` ``X(c) -> P_0(c)`` must retract the basepoint.
    """

    operad: Operad
    carriers: Dict[Color, BaseObject]
    basepoints: Dict[Color, BaseMorphism]
    augmentation: Optional[Dict[Color, BaseMorphism]] = None
    name: str = "X"
    _nullary: Optional[NullaryOperad] = field(default=None, repr=False)

    def __post_init__(self):
        for color in self.operad.colors:
            point = self.basepoints.get(color)
            if point is None:
                raise StructureMismatch(f"{self.name} has no basepoint at {color}")
            if not same_object(point.source, self.operad.nullary(color)):
                raise StructureMismatch(f"Basepoint of {color} does not start at the nullary operations")
            if not same_object(point.target, self.carriers[color]):
                raise StructureMismatch(f"Basepoint of {color} does not land in the carrier")
        if self.augmentation is not None:
            for color in self.operad.colors:
                retraction = compose(self.augmentation[color], self.basepoints[color])
                if morphisms_equal(retraction, identity(self.operad.nullary(color))) is not None:
                    raise StructureMismatch(f"Augmentation of {self.name} does not retract the basepoint at {color}")
        if self._nullary is None:
            object.__setattr__(self, "_nullary", nullary_operad(self.operad))

    @property
    def nullary_operad(self) -> NullaryOperad:
        return self._nullary

    @property
    def augmented(self) -> bool:
        return self.augmentation is not None

    def carrier(self, color: Color) -> BaseObject:
        return self.carriers[color]

    def basepoint(self, color: Color) -> BaseMorphism:
        return self.basepoints[color]

    def nullary(self, color: Color) -> BaseObject:
        return self.operad.nullary(color)

    def as_algebra(self) -> Algebra:
        """The same data as an algebra over the operad of nullary operations."""
        o = self.nullary_operad

        def action_fn(key: OrbitSignature, label: Label, xs: Tuple[Label, ...]) -> Vector:
            if key.arity == 0:
                return self.basepoint(key.out_color).image_vector(label)
            return {xs[0]: 1}

        return Algebra(o, dict(self.carriers), action_fn, name=self.name)


def trivial_oalgebra(p: Operad) -> OAlgebra:
    """``X = P_0`` with identity basepoints and augmentation."""
    carriers = {color: p.nullary(color) for color in p.colors}
    points = {color: identity(carriers[color]) for color in p.colors}
    return OAlgebra(p, carriers, points, augmentation=dict(points), name=f"{p.name}_0")


def pointed_oalgebra(
    p: Operad,
    extra: Dict[Color, Tuple[Label, ...]],
    augmented: bool = True,
    name: str = "X",
) -> OAlgebra:
    """
    ``X(c) = P_0(c) + extra(c)`` with the inclusion as basepoint; the
    augmentation sends every extra element to the first nullary operation
    and is omitted when some color has none.

    Extra labels must not clash with nullary labels.
    """
    carriers, points, augmentation = {}, {}, {}
    for color in p.colors:
        nullary = p.nullary(color)
        new = tuple(extra.get(color, ()))
        clash = [label for label in new if nullary.has(label)]
        if clash:
            raise StructureMismatch(f"Extra elements {clash} clash with nullary operations at {color}")
        labels = nullary.labels + new
        carrier = BaseObject(nullary.variant, {0: labels} if labels else {})
        carriers[color] = carrier
        points[color] = from_function(nullary, carrier, lambda label: label)
        if augmented and nullary.size:
            target = nullary.labels[0]
            augmentation[color] = from_function(
                carrier, nullary, lambda label, n=nullary, t=target: label if n.has(label) else t
            )
        else:
            augmented = False
    return OAlgebra(p, carriers, points, augmentation if augmented else None, name=name)


# Relative composite with the skeleta


def skeleton_right_module(p: Operad, n: int) -> NullaryRightModule:
    """
    ``P_{<=n}`` as a right module over the nullary operad: nullary
    operations are plugged into the chosen slots with units elsewhere.
    """
    sequence = skeleton(p.sequence, n)

    def substitute(key: OrbitSignature, slots, label, nullaries) -> Vector:
        chosen = dict(zip(slots, nullaries))
        inner = []
        for j, color in enumerate(key.inputs):
            if j in chosen:
                inner.append((OrbitSignature(color, ()), {chosen[j]: 1}))
            else:
                inner.append((p.unit_key(color), p.units[color]))
        return p.gamma_vector(key, {label: 1}, inner)

    return NullaryRightModule(sequence, substitute)


def free_algebra_stage_oracle(p: Operad, x: OAlgebra, n: int) -> RelativeComposite:
    """
    ``P_{<=n} o_O X`` as one coequalizer per color.

    Raises:
        NonFinitary: If ``P`` is unknown in some arity up to ``n``
    """
    module = skeleton_right_module(p, n)
    result = relative_compose(module, x.nullary_operad, x, out_arity_bound=n)
    logger.debug(f"Oracle stage {n} of {p.name} on {x.name}: {result.sizes()}")
    return result
