"""Colored operads as symmetric sequences with units and composition.

Composition is given on basis elements of canonical orbits. A labeled element
at an input tuple ``u`` is stored as its canonical vector (see ``symseq``), so
the composite of labeled elements is computed by normalizing the outer slots
and every inner orbit, composing canonically, and transporting the result
back to the labeled concatenation.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from operadkit.basecat import (
    ONE,
    BaseMorphism,
    BaseObject,
    Label,
    Vector,
    add_into,
    from_images,
    tensor_many,
    trivial_action,
    unit_object,
)
from operadkit.basecat.perms import Perm, act_on_tuple, invert_perm
from operadkit.config.constants import UNIT_LABEL, Variant
from operadkit.errors import NonFinitary, StructureMismatch, WrongVariant
from operadkit.symseq import (
    Color,
    ColorSet,
    DecSignature,
    OrbitSignature,
    SymmetricSequence,
    canonical_form,
    skeleton,
    sorting_perm,
)

logger = logging.getLogger(__name__)

Inner = Tuple[Tuple[OrbitSignature, Label], ...]
GammaFn = Callable[[OrbitSignature, Label, Inner], Vector]


def concatenated_inputs(inner: Sequence[Tuple[OrbitSignature, object]]) -> Tuple[Color, ...]:
    return tuple(color for orbit, _ in inner for color in orbit.inputs)


def offsets(sizes: Sequence[int]) -> List[int]:
    result, total = [], 0
    for size in sizes:
        result.append(total)
        total += size
    return result


@dataclass(frozen=True, eq=False)
class Operad:
    """
    A colored operad recorded up to ``declared_bound``.

    ``gamma_fn(outer, p, inner)`` composes basis elements: ``inner[i]`` is an
    orbit with output ``outer.inputs[i]`` together with a basis label of its
    entry. It returns the canonical vector of the composite at the
    concatenation of the inner inputs.
    """

    sequence: SymmetricSequence
    gamma_fn: GammaFn
    units: Dict[Color, Vector]
    name: str = "P"
    _cache: Dict[tuple, Vector] = field(default_factory=dict, repr=False)
    extend: Optional[Callable[[int], "Operad"]] = field(default=None, repr=False)
    _wider: Dict[int, "Operad"] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.sequence.variant == Variant.CHAINQ:
            raise WrongVariant("Operads are supported over finset and vectq")
        for color in self.colors:
            if color not in self.units:
                raise StructureMismatch(f"Operad {self.name} has no unit at {color}")
            key = OrbitSignature(color, (color,))
            for label in self.units[color]:
                if not self.sequence.object(key).has(label):
                    raise StructureMismatch(f"Unit of {color} is not an element of {key}")

    @property
    def colors(self) -> ColorSet:
        return self.sequence.colors

    @property
    def variant(self) -> Variant:
        return self.sequence.variant

    @property
    def declared_bound(self) -> int:
        return self.sequence.support_bound

    @property
    def truncated(self) -> bool:
        return self.sequence.truncated

    def widened(self, bound: int) -> "Operad":
        """
        The same operad recorded up to ``bound``, with the same labels and
        composition in every arity already known.

        Raises:
            NonFinitary: If the operad is truncated below ``bound`` and does
                not know how to extend itself
        """
        if bound <= self.declared_bound or not self.truncated:
            return self
        if self.extend is None:
            raise NonFinitary(f"{self.name} is only known up to arity {self.declared_bound}, {bound} is needed")
        if bound not in self._wider:
            self._wider[bound] = self.extend(bound)
            logger.debug(f"Widened {self.name} from arity {self.declared_bound} to {bound}")
        return self._wider[bound]

    def entry(self, key: OrbitSignature):
        return self.sequence.entry(key)

    def object(self, key: OrbitSignature) -> BaseObject:
        return self.sequence.object(key)

    def orbits(self) -> List[OrbitSignature]:
        return self.sequence.orbits()

    def labels(self, key: OrbitSignature) -> Tuple[Label, ...]:
        if key not in self.sequence.entries:
            return ()
        return self.object(key).labels

    def nullary(self, color: Color) -> BaseObject:
        return self.object(OrbitSignature(color, ()))

    def unit_key(self, color: Color) -> OrbitSignature:
        return OrbitSignature(color, (color,))

    def act(self, key: OrbitSignature, sigma: Perm, vector: Vector) -> Vector:
        return self.entry(key)(sigma).apply(vector)

    def transport(self, out_color: Color, inputs: Sequence[Color], sigma: Perm, vector: Vector) -> Vector:
        """Move a labeled element at ``inputs`` to ``sigma . inputs``."""
        if not vector:
            return {}
        return self.sequence.transport(out_color, inputs, sigma).apply(vector)

    def gamma(self, outer: OrbitSignature, p: Label, inner: Sequence[Tuple[OrbitSignature, Label]]) -> Vector:
        """
        Composite of basis elements on canonical orbits.

        Raises:
            NonFinitary: If the composite lies above the known support bound
            StructureMismatch: If the inner outputs do not match the outer inputs
        """
        inner = tuple(inner)
        cache_key = (outer, p, inner)
        cached = self._cache.get(cache_key)
        if cached is not None:
            return dict(cached)
        if tuple(orbit.out_color for orbit, _ in inner) != outer.inputs:
            raise StructureMismatch(f"Inner outputs do not match the inputs of {outer}")
        arity = sum(orbit.arity for orbit, _ in inner)
        if arity > self.declared_bound:
            if self.truncated:
                raise NonFinitary(f"Composite of arity {arity} lies above the known bound {self.declared_bound}")
            result: Vector = {}
        else:
            result = {label: coeff for label, coeff in self.gamma_fn(outer, p, inner).items() if coeff != 0}
        self._cache[cache_key] = result
        return dict(result)

    def gamma_vector(
        self,
        outer: OrbitSignature,
        p: Vector,
        inner: Sequence[Tuple[OrbitSignature, Vector]],
    ) -> Vector:
        """Multilinear extension of ``gamma`` to vectors."""
        result: Vector = {}
        choices = [list(vector.items()) for _, vector in inner]
        for p_label, p_coeff in p.items():
            for combo in product(*choices):
                coeff = p_coeff
                for _, c in combo:
                    coeff *= c
                basis = [(orbit, label) for (orbit, _), (label, _) in zip(inner, combo)]
                add_into(result, self.gamma(outer, p_label, basis), coeff)
        return result

    def compose_labeled(
        self,
        out_color: Color,
        slots: Sequence[Color],
        p: Vector,
        inner: Sequence[Tuple[Sequence[Color], Vector]],
    ) -> Vector:
        """
        Composite of labeled elements.

        Args:
            out_color: Output color of the outer element
            slots: Labeled input colors of the outer element ``p``
            p: Canonical vector of the outer element at ``slots``
            inner: Per slot, the labeled inputs of an inner element and its
                canonical vector

        Returns:
            The canonical vector of the composite at the concatenation of the
            labeled inner inputs
        """
        slots = tuple(slots)
        s_v = sorting_perm(self.colors, slots)
        outer = OrbitSignature(out_color, act_on_tuple(s_v, slots))
        order = invert_perm(s_v)
        canonical_inner = []
        sorting = []
        for i, (inputs, _) in enumerate(inner):
            canonical, s_u = canonical_form(self.colors, inputs)
            canonical_inner.append((OrbitSignature(slots[i], canonical), inner[i][1]))
            sorting.append(s_u)
        reordered = [canonical_inner[order[j]] for j in range(len(slots))]
        result = self.gamma_vector(outer, p, reordered)
        if not result:
            return {}
        sizes = [len(inputs) for inputs, _ in inner]
        labeled_offsets = offsets(sizes)
        canonical_offsets = offsets([sizes[order[j]] for j in range(len(slots))])
        theta = [0] * sum(sizes)
        for i, size in enumerate(sizes):
            for t in range(size):
                theta[labeled_offsets[i] + t] = canonical_offsets[s_v[i]] + sorting[i][t]
        concat = concatenated_inputs(reordered)
        return self.transport(out_color, concat, invert_perm(tuple(theta)), result)

    def compose_term(self, dec: DecSignature, z: tuple) -> Vector:
        """
        The structure map ``Z_d -> P(w)`` on a basis label ``(p, q_0, ...)``
        of the term of a class ``d``.
        """
        inner = [{label: ONE} for label in z[1:]]
        return self.compose_vectors(dec, {z[0]: ONE}, inner)

    def compose_vectors(self, dec: DecSignature, p: Vector, inner: Sequence[Vector]) -> Vector:
        """``compose_term`` on vectors of the outer and inner orbits of ``dec``."""
        inner = list(zip(dec.inner_orbits(), inner))
        result = self.gamma_vector(dec.outer_orbit(), p, inner)
        if not result:
            return {}
        fibers = dec.fibers
        starts = offsets([len(fiber) for fiber in fibers])
        pi = [0] * dec.k
        for i, fiber in enumerate(fibers):
            for t, position in enumerate(fiber):
                pi[starts[i] + t] = position
        return self.transport(dec.orbit.out_color, concatenated_inputs(inner), tuple(pi), result)

    def structure_map(self, dec: DecSignature) -> BaseMorphism:
        """``P(v) (x) P(fiber_0) (x) ... -> P(w)`` for the class ``dec``."""
        factors = [self.object(dec.outer_orbit())] + [self.object(o) for o in dec.inner_orbits()]
        source = tensor_many(factors, self.variant)
        return from_images(source, self.object(dec.orbit), lambda z: self.compose_term(dec, z))

    def unit_map(self, color: Color) -> BaseMorphism:
        """``1 -> P(c; c)``."""
        return from_images(unit_object(self.variant), self.object(self.unit_key(color)), lambda _: self.units[color])


@dataclass(frozen=True, eq=False)
class NullaryOperad(Operad):
    """An operad freely generated by nullary operations: only identities in arity 1."""

    def __post_init__(self):
        super().__post_init__()
        for key in self.orbits():
            if key.arity > 1:
                raise StructureMismatch(f"{key} is not allowed in an operad generated by nullary operations")
            if key.arity == 1 and (key.inputs[0] != key.out_color or self.object(key).size != 1):
                raise StructureMismatch(f"{key} must hold exactly the identity")


def _nullary_gamma(outer: OrbitSignature, p: Label, inner: Inner) -> Vector:
    if outer.arity == 0:
        return {p: ONE}
    return {inner[0][1]: ONE}


def free_on_nullary(
    colors: ColorSet,
    variant: Variant,
    nullaries: Dict[Color, BaseObject],
    name: str = "O",
) -> NullaryOperad:
    """
    The operad generated by the nullary objects ``P0(c)``: arity 0 is ``P0``,
    arity 1 holds only identities.
    """
    entries = {}
    for color in colors:
        key = OrbitSignature(color, ())
        if color in nullaries:
            entries[key] = trivial_action(nullaries[color], key.aut, key.aut_generators)
        unit_key = OrbitSignature(color, (color,))
        entries[unit_key] = trivial_action(unit_object(variant), unit_key.aut, unit_key.aut_generators)
    sequence = SymmetricSequence(colors, variant, 1, entries)
    units = {color: {UNIT_LABEL: ONE} for color in colors}
    return NullaryOperad(sequence, _nullary_gamma, units, name)


def nullary_operad(p: Operad) -> NullaryOperad:
    """The operad ``O`` generated by the nullary part of ``p``."""
    nullaries = {color: p.nullary(color) for color in p.colors}
    return free_on_nullary(p.colors, p.variant, nullaries, name=f"{p.name}+0")


def one_skeleton(p: Operad) -> Operad:
    """``P_{<=1}`` with the inherited unit and composition."""
    return Operad(skeleton(p.sequence, 1), p.gamma_fn, p.units, name=f"{p.name}<=1")


def is_one_skeletal(p: Operad) -> bool:
    return not p.truncated and p.sequence.max_arity() <= 1
