"""Colored orbit groupoids and W-symmetric sequences.

An orbit of color tuples is stored by its canonical representative, the
inputs sorted by color order. A symmetric sequence assigns to each orbit a
base object with an action of the orbit's automorphism group, the Young
subgroup permuting equal colors.

A labeled input tuple ``u`` with the same output color is identified with its
canonical orbit through the stable sorting permutation ``s_u`` (``s_u . u`` is
sorted); ``X(u)`` is stored as ``X(canonical(u))`` and the structure map
``X(sigma): X(u) -> X(sigma . u)`` is the automorphism
``s_{sigma u} sigma s_u^-1``.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, groupby, product
from typing import Dict, List, Optional, Sequence, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    GroupAction,
    action_signature,
    coproduct,
    coproduct_of_morphisms,
    empty_action,
    trivial_action,
    unit_object,
)
from operadkit.basecat.perms import (
    Perm,
    act_on_tuple,
    block_sum,
    all_perms,
    compose_perms,
    invert_perm,
    young_subgroup,
)
from operadkit.config.constants import Variant
from operadkit.errors import ColorMismatch, MixedVariant, NonFinitary, StructureMismatch, UnknownColor

logger = logging.getLogger(__name__)

Color = str


@dataclass(frozen=True)
class ColorSet:
    """A finite ordered set of colors."""

    labels: Tuple[Color, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise StructureMismatch("A color set must be nonempty")
        if len(set(labels)) != len(labels):
            raise StructureMismatch(f"Colors must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def __contains__(self, color) -> bool:
        return color in self.labels

    def index(self, color: Color) -> int:
        try:
            return self.labels.index(color)
        except ValueError as e:
            raise UnknownColor(f"Color {color!r} is not in {list(self.labels)}") from e

    def check(self, *colors: Color) -> None:
        for color in colors:
            self.index(color)


def sorting_perm(colors: ColorSet, inputs: Sequence[Color]) -> Perm:
    """The permutation ``s`` with ``s . inputs`` stably sorted by color order."""
    order = sorted(range(len(inputs)), key=lambda i: (colors.index(inputs[i]), i))
    perm = [0] * len(inputs)
    for position, i in enumerate(order):
        perm[i] = position
    return tuple(perm)


def canonical_form(colors: ColorSet, inputs: Sequence[Color]) -> Tuple[Tuple[Color, ...], Perm]:
    """Sorted inputs and the sorting permutation."""
    perm = sorting_perm(colors, inputs)
    return act_on_tuple(perm, inputs), perm


def transport_perm(colors: ColorSet, inputs: Sequence[Color], sigma: Perm) -> Perm:
    """
    The automorphism of the canonical orbit representing ``sigma`` on a
    labeled tuple: ``s_{sigma u} . sigma . s_u^-1``.
    """
    source_perm = sorting_perm(colors, inputs)
    target_perm = sorting_perm(colors, act_on_tuple(sigma, inputs))
    return compose_perms(compose_perms(target_perm, sigma), invert_perm(source_perm))


def block_sizes(inputs: Sequence[Color]) -> Tuple[int, ...]:
    return tuple(len(list(group)) for _, group in groupby(inputs))


@dataclass(frozen=True, order=True)
class OrbitSignature:
    """An orbit of color tuples: output color and sorted inputs."""

    out_color: Color
    inputs: Tuple[Color, ...]

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @property
    def aut(self) -> Tuple[Perm, ...]:
        """The Young subgroup of permutations preserving the inputs, sorted."""
        return young_subgroup(block_sizes(self.inputs))[0]

    @property
    def aut_generators(self) -> Tuple[Perm, ...]:
        return young_subgroup(block_sizes(self.inputs))[1]

    def sort_key(self, colors: ColorSet) -> tuple:
        return (self.arity, tuple(colors.index(c) for c in self.inputs), colors.index(self.out_color))

    def __str__(self) -> str:
        return f"({','.join(self.inputs)} -> {self.out_color})"


def orbit(colors: ColorSet, out_color: Color, inputs: Sequence[Color]) -> OrbitSignature:
    """The orbit of a labeled tuple."""
    colors.check(out_color, *inputs)
    return OrbitSignature(out_color, canonical_form(colors, inputs)[0])


def orbit_enumerate(colors: ColorSet, n: int, out_color: Color) -> List[OrbitSignature]:
    """
    All orbits of arity ``n`` with the given output color.

    Raises:
        UnknownColor: If ``out_color`` is not a color
    """
    colors.check(out_color)
    if n < 0:
        raise StructureMismatch("Arity must be nonnegative")
    return [OrbitSignature(out_color, tuple(combo)) for combo in combinations_with_replacement(colors.labels, n)]


def orbits_up_to(colors: ColorSet, bound: int, outs: Optional[Sequence[Color]] = None) -> List[OrbitSignature]:
    """Orbits of arity at most ``bound``, by arity then inputs then output color."""
    result = []
    for n in range(bound + 1):
        for out_color in outs or colors.labels:
            result.extend(orbit_enumerate(colors, n, out_color))
    return sorted(result, key=lambda o: o.sort_key(colors))


@dataclass(frozen=True)
class DecSignature:
    """
    An isomorphism class of a map ``phi: k -> n`` with slot colors ``v``.

    The representative assigns slot ``i`` the color ``slots[i][0]`` and the
    fiber ``slots[i][1]`` (sorted input positions of ``orbit``); slots are
    sorted by color order, then by fiber.
    """

    orbit: OrbitSignature
    slots: Tuple[Tuple[Color, Tuple[int, ...]], ...]

    @property
    def k(self) -> int:
        return self.orbit.arity

    @property
    def n(self) -> int:
        return len(self.slots)

    @property
    def slot_colors(self) -> Tuple[Color, ...]:
        return tuple(color for color, _ in self.slots)

    @property
    def fibers(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(fiber for _, fiber in self.slots)

    @property
    def phi(self) -> Tuple[int, ...]:
        image = [0] * self.k
        for slot, fiber in enumerate(self.fibers):
            for position in fiber:
                image[position] = slot
        return tuple(image)

    @property
    def fiber_sizes(self) -> Tuple[int, ...]:
        return tuple(len(fiber) for fiber in self.fibers)

    def outer_orbit(self) -> OrbitSignature:
        return OrbitSignature(self.orbit.out_color, self.slot_colors)

    def inner_orbits(self) -> Tuple[OrbitSignature, ...]:
        inputs = self.orbit.inputs
        return tuple(
            OrbitSignature(color, tuple(inputs[j] for j in fiber)) for color, fiber in self.slots
        )

    @property
    def aut(self) -> Tuple[Perm, ...]:
        """Pairs ``(sigma, tau)`` fixing the structure, as permutations of ``k + n`` points."""
        return _dec_aut(self)


def slot_key(colors: ColorSet, slot_colors, phi, sigma) -> tuple:
    fibers: Dict[int, List[int]] = {i: [] for i in range(len(slot_colors))}
    for j, slot in enumerate(phi):
        fibers[slot].append(sigma[j])
    return tuple(sorted((colors.index(slot_colors[i]), tuple(sorted(fibers[i]))) for i in fibers))


@lru_cache(maxsize=None)
def _dec_aut(dec: DecSignature) -> Tuple[Perm, ...]:
    phi, colors_of_slots = dec.phi, dec.slot_colors
    result = []
    for sigma in dec.orbit.aut:
        for tau in all_perms(dec.n):
            if any(colors_of_slots[tau[i]] != colors_of_slots[i] for i in range(dec.n)):
                continue
            if all(tau[phi[j]] == phi[sigma[j]] for j in range(dec.k)):
                result.append(block_sum(sigma, tau))
    return tuple(sorted(result))


@lru_cache(maxsize=None)
def dec_classes(colors: ColorSet, target: OrbitSignature, n: int) -> Tuple[DecSignature, ...]:
    """Isomorphism classes of ``(phi: k -> n, v)`` over a fixed input orbit."""
    found = {}
    for phi in product(range(n), repeat=target.arity):
        for slot_colors in product(colors.labels, repeat=n):
            key = min(slot_key(colors, slot_colors, phi, sigma) for sigma in target.aut)
            found.setdefault(key, None)
    classes = []
    for key in sorted(found):
        slots = tuple((colors.labels[color_index], fiber) for color_index, fiber in key)
        classes.append(DecSignature(target, slots))
    return tuple(classes)


def dec_enumerate(colors: ColorSet, k: int, n: int, out_color: Color) -> List[DecSignature]:
    """
    All isomorphism classes of ``(phi: k -> n, v)`` with output color ``out_color``.

    Raises:
        UnknownColor: If ``out_color`` is not a color
    """
    result = []
    for target in orbit_enumerate(colors, k, out_color):
        result.extend(dec_classes(colors, target, n))
    return result


@dataclass(frozen=True)
class SymmetricSequence:
    """
    A finitely supported W-symmetric sequence.

    ``truncated`` records whether entries above ``support_bound`` are unknown
    (True) or initial (False).
    """

    colors: ColorSet
    variant: Variant
    support_bound: int
    entries: Dict[OrbitSignature, GroupAction] = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self):
        entries = {}
        for key in sorted(self.entries, key=lambda o: o.sort_key(self.colors)):
            action = self.entries[key]
            self.colors.check(key.out_color, *key.inputs)
            if action.object.variant != self.variant:
                raise MixedVariant(f"Entry {key} is {action.object.variant.value}, expected {self.variant.value}")
            if key.arity > self.support_bound:
                raise StructureMismatch(f"Entry {key} lies above the support bound {self.support_bound}")
            if action.elements != key.aut:
                raise StructureMismatch(f"Entry {key} is acted on by the wrong group")
            if not action.object.is_initial:
                entries[key] = action
        object.__setattr__(self, "entries", entries)

    def entry(self, key: OrbitSignature) -> GroupAction:
        """The entry at an orbit, initial when absent."""
        if key in self.entries:
            return self.entries[key]
        if key.arity > self.support_bound and self.truncated:
            raise NonFinitary(f"Entry {key} lies above the known support bound {self.support_bound}")
        return empty_action(self.variant, key.aut, key.aut_generators)

    def object(self, key: OrbitSignature) -> BaseObject:
        return self.entry(key).object

    def orbits(self) -> List[OrbitSignature]:
        return list(self.entries)

    def is_empty(self) -> bool:
        return not self.entries

    def has_nullary(self) -> bool:
        return any(key.arity == 0 for key in self.entries)

    def transport(self, out_color: Color, inputs: Sequence[Color], sigma: Perm) -> BaseMorphism:
        """
        The structure map ``X(sigma): X(inputs) -> X(sigma . inputs)`` on
        canonical representatives.
        """
        key = OrbitSignature(out_color, canonical_form(self.colors, inputs)[0])
        return self.entry(key)(transport_perm(self.colors, inputs, sigma))

    def max_arity(self) -> int:
        return max((key.arity for key in self.entries), default=0)


def empty_sequence(colors: ColorSet, variant: Variant, support_bound: int = 0) -> SymmetricSequence:
    return SymmetricSequence(colors, variant, support_bound, {})


def arity_part(x: SymmetricSequence, n: int) -> SymmetricSequence:
    """Entries of arity exactly ``n``."""
    entries = {key: act for key, act in x.entries.items() if key.arity == n}
    truncated = x.truncated and n > x.support_bound
    return SymmetricSequence(x.colors, x.variant, n, entries, truncated)


def skeleton(x: SymmetricSequence, n: int) -> SymmetricSequence:
    """Entries of arity at most ``n``."""
    entries = {key: act for key, act in x.entries.items() if key.arity <= n}
    truncated = x.truncated and n > x.support_bound
    return SymmetricSequence(x.colors, x.variant, min(n, x.support_bound), entries, truncated)


def unit_seq(colors: ColorSet, variant: Variant = Variant.FINSET) -> SymmetricSequence:
    """The monoidal unit: the unit object at every ``(c -> c)``."""
    entries = {}
    for color in colors:
        key = OrbitSignature(color, (color,))
        entries[key] = trivial_action(unit_object(variant), key.aut, key.aut_generators)
    return SymmetricSequence(colors, variant, 1, entries)


def sequence_from_objects(
    colors: ColorSet,
    variant: Variant,
    objects: Dict[OrbitSignature, BaseObject],
    support_bound: Optional[int] = None,
    truncated: bool = False,
) -> SymmetricSequence:
    """Sequence with trivial actions on the given objects."""
    entries = {key: trivial_action(obj, key.aut, key.aut_generators) for key, obj in objects.items()}
    bound = support_bound if support_bound is not None else max((k.arity for k in objects), default=0)
    return SymmetricSequence(colors, variant, bound, entries, truncated)


def check_compatible(x: SymmetricSequence, y: SymmetricSequence) -> None:
    if x.colors != y.colors:
        raise ColorMismatch(f"Color sets differ: {x.colors.labels} vs {y.colors.labels}")
    if x.variant != y.variant:
        raise MixedVariant(f"Sequences over {x.variant.value} and {y.variant.value}")


def coproduct_sequences(x: SymmetricSequence, y: SymmetricSequence) -> SymmetricSequence:
    """Entrywise coproduct."""
    check_compatible(x, y)
    entries = {}
    for key in sorted(set(x.entries) | set(y.entries), key=lambda o: o.sort_key(x.colors)):
        left, right = x.entry(key), y.entry(key)
        total = coproduct([left.object, right.object])
        maps = {
            g: coproduct_of_morphisms([left(g), right(g)], total, total) for g in key.aut
        }
        entries[key] = GroupAction(total.object, key.aut, key.aut_generators, maps)
    return SymmetricSequence(
        x.colors,
        x.variant,
        max(x.support_bound, y.support_bound),
        entries,
        x.truncated or y.truncated,
    )


def sequences_isomorphic(
    x: SymmetricSequence, y: SymmetricSequence, bound: Optional[int] = None
) -> Optional[Tuple[OrbitSignature, tuple, tuple]]:
    """
    Compare two sequences orbitwise by equivariant isomorphism type.

    Returns:
        None when isomorphic up to ``bound``, else the first differing orbit
        with both invariants
    """
    check_compatible(x, y)
    keys = sorted(set(x.entries) | set(y.entries), key=lambda o: o.sort_key(x.colors))
    for key in keys:
        if bound is not None and key.arity > bound:
            continue
        left, right = action_signature(x.entry(key)), action_signature(y.entry(key))
        if left != right:
            return key, left, right
    return None


def entry_sizes(x: SymmetricSequence) -> Dict[str, int]:
    """Size (FinSet) or total dimension of each entry, keyed by orbit text."""
    return {str(key): act.object.size for key, act in x.entries.items()}

