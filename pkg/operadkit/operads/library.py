"""Library operads: commutative, associative, colored profiles and tables."""

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from operadkit.basecat import (
    ONE,
    GroupAction,
    Label,
    Vector,
    action_from_function,
    action_from_generators,
    finset,
    from_function,
    from_images,
    identity,
    linearize,
    linearize_morphism,
    trivial_action,
    vectq,
)
from operadkit.basecat.perms import Perm, compose_perms
from operadkit.config.constants import Variant
from operadkit.errors import MultiColoredInput, StructureMismatch, WrongVariant
from operadkit.operads.checks import inner_choices, outer_elements
from operadkit.operads.operad import Inner, Operad, concatenated_inputs, offsets
from operadkit.symseq import (
    Color,
    ColorSet,
    OrbitSignature,
    SymmetricSequence,
    orbits_up_to,
    sorting_perm,
)

logger = logging.getLogger(__name__)

COM_LABEL = "*"
MODULE_COLORS = ("a", "m")


def _single_key(color: Color, n: int) -> OrbitSignature:
    return OrbitSignature(color, (color,) * n)


# Commutative


def com(bound: int = 3, unital: bool = True, color: Color = "c") -> Operad:
    """
    The commutative operad truncated at ``bound``: one operation in every
    arity, none in arity 0 when not unital.
    """
    colors = ColorSet((color,))
    entries = {}
    for n in range(0 if unital else 1, bound + 1):
        key = _single_key(color, n)
        entries[key] = trivial_action(finset([COM_LABEL]), key.aut, key.aut_generators)
    sequence = SymmetricSequence(colors, Variant.FINSET, bound, entries, truncated=True)
    name = "com" if unital else "com+"
    return Operad(
        sequence,
        lambda outer, p, inner: {COM_LABEL: ONE},
        {color: {COM_LABEL: ONE}},
        name=name,
        extend=lambda wider: com(wider, unital, color),
    )


# Associative


def _word_action(key: OrbitSignature, obj) -> GroupAction:
    return action_from_function(
        obj,
        key.aut,
        lambda sigma: from_function(obj, obj, lambda word: compose_perms(sigma, word)),
        key.aut_generators,
    )


def _ass_gamma(outer: OrbitSignature, p: Label, inner: Inner) -> Vector:
    sizes = [orbit.arity for orbit, _ in inner]
    starts = offsets(sizes)
    word: List[int] = []
    for slot in p:
        word.extend(starts[slot] + t for t in inner[slot][1])
    return {tuple(word): ONE}


def ass(bound: int = 3, unital: bool = True, color: Color = "c") -> Operad:
    """
    The associative operad truncated at ``bound``.

    An operation of arity ``n`` is a word ``w`` listing every input once;
    ``w[pos]`` is the input read at position ``pos``.
    """
    colors = ColorSet((color,))
    entries = {}
    for n in range(0 if unital else 1, bound + 1):
        key = _single_key(color, n)
        obj = finset(sorted(key.aut))
        entries[key] = _word_action(key, obj)
    sequence = SymmetricSequence(colors, Variant.FINSET, bound, entries, truncated=True)
    name = "ass" if unital else "ass+"
    return Operad(
        sequence, _ass_gamma, {color: {(0,): ONE}}, name=name, extend=lambda wider: ass(wider, unital, color)
    )


# Colored profiles


Profiles = FrozenSet[OrbitSignature]


def _composite_orbit(colors: ColorSet, out_color: Color, inputs: Sequence[Color]) -> OrbitSignature:
    return OrbitSignature(out_color, tuple(sorted(inputs, key=colors.index)))


def _profile_composites(colors: ColorSet, profiles: Set[OrbitSignature], bound: int) -> Set[OrbitSignature]:
    """Orbits reached by composing one layer of profiles up to ``bound``."""
    by_output: Dict[Color, List[OrbitSignature]] = {}
    for key in profiles:
        by_output.setdefault(key.out_color, []).append(key)
    reached = set()
    for outer in profiles:
        choices = [by_output.get(c, []) for c in outer.inputs]
        for inner in product(*choices):
            inputs = [c for key in inner for c in key.inputs]
            if len(inputs) <= bound:
                reached.add(_composite_orbit(colors, outer.out_color, inputs))
    return reached


def close_profiles(colors: ColorSet, generators: Iterable[OrbitSignature], bound: int) -> Profiles:
    """Smallest set of orbits of arity at most ``bound`` containing the generators and identities."""
    closed = {key for key in generators if key.arity <= bound}
    closed |= {OrbitSignature(c, (c,)) for c in colors}
    while True:
        reached = _profile_composites(colors, closed, bound) - closed
        if not reached:
            return frozenset(closed)
        closed |= reached


def _restricted_entry(base: Operad, key: OrbitSignature) -> Optional[GroupAction]:
    base_key = _single_key(base.colors.labels[0], key.arity)
    if base_key not in base.sequence.entries:
        return None
    base_entry = base.entry(base_key)
    return GroupAction(base_entry.object, key.aut, key.aut_generators, {g: base_entry(g) for g in key.aut})


def profile_operad(
    colors: ColorSet,
    profiles: Iterable[OrbitSignature],
    base: Operad,
    bound: Optional[int] = None,
    name: Optional[str] = None,
) -> Operad:
    """
    The colored operad with ``P(w) = base(n)`` on every profile ``w`` of
    arity ``n`` and nothing elsewhere.

    Raises:
        MultiColoredInput: If ``base`` has more than one color
        StructureMismatch: If the profiles are not closed under composition
            or miss an identity
    """
    if len(base.colors) != 1:
        raise MultiColoredInput(f"{base.name} is not single-colored")
    bound = base.declared_bound if bound is None else min(bound, base.declared_bound)
    profiles = {key for key in profiles if key.arity <= bound}
    for key in profiles:
        colors.check(key.out_color, *key.inputs)
    entries = {}
    for key in profiles:
        restricted = _restricted_entry(base, key)
        if restricted is not None:
            entries[key] = restricted
    live = set(entries)
    missing = [c for c in colors if OrbitSignature(c, (c,)) not in live]
    if missing:
        raise StructureMismatch(f"Profiles have no identity at {missing}")
    escaped = _profile_composites(colors, live, bound) - live
    if escaped:
        raise StructureMismatch(f"Profiles are not closed under composition: {sorted(map(str, escaped))[:3]}")
    sequence = SymmetricSequence(colors, base.variant, bound, entries, truncated=base.truncated)
    base_color = base.colors.labels[0]

    def gamma_fn(outer: OrbitSignature, p: Label, inner: Inner) -> Vector:
        base_inner = [(_single_key(base_color, orbit.arity), q) for orbit, q in inner]
        result = base.gamma(_single_key(base_color, outer.arity), p, base_inner)
        concat = concatenated_inputs(inner)
        s_concat = sorting_perm(colors, concat)
        return base.act(_single_key(base_color, len(concat)), s_concat, result)

    def extend(wider: int) -> Operad:
        return profile_operad(colors, close_profiles(colors, live, wider), base.widened(wider), wider, name)

    units = {c: dict(base.units[base_color]) for c in colors}
    name = name or f"{base.name}[{','.join(colors)}]"
    return Operad(sequence, gamma_fn, units, name=name, extend=extend)


def module_profiles(bound: int) -> Profiles:
    """Profiles ``a^n -> a`` and ``a^(n-1) m -> m``."""
    a, m = MODULE_COLORS
    result = {_single_key(a, n) for n in range(bound + 1)}
    result |= {OrbitSignature(m, (a,) * (n - 1) + (m,)) for n in range(1, bound + 1)}
    return frozenset(result)


def mcom(bound: int = 3) -> Operad:
    """The two-colored operad whose algebras are a commutative monoid with a module over it."""
    colors = ColorSet(MODULE_COLORS)
    entries = {}
    for key in module_profiles(bound):
        entries[key] = trivial_action(finset([COM_LABEL]), key.aut, key.aut_generators)
    sequence = SymmetricSequence(colors, Variant.FINSET, bound, entries, truncated=True)
    units = {c: {COM_LABEL: ONE} for c in colors}
    return Operad(sequence, lambda outer, p, inner: {COM_LABEL: ONE}, units, name="mcom", extend=mcom)


def mp(p: Operad) -> Operad:
    """
    The fiber product of ``p`` with ``mcom`` over ``com``: a ``p``-algebra
    in color ``a`` acting on a module in color ``m``.

    Raises:
        MultiColoredInput: If ``p`` has more than one color
    """
    if len(p.colors) != 1:
        raise MultiColoredInput(f"{p.name} has {len(p.colors)} colors, expected one")
    return profile_operad(
        ColorSet(MODULE_COLORS), module_profiles(p.declared_bound), p, name=f"m{p.name}"
    )


def random_profile_operad(
    rng: random.Random,
    colors: ColorSet,
    bound: int,
    base: Optional[Operad] = None,
    generator_count: int = 2,
) -> Operad:
    """Close a few random orbits under composition and pull ``base`` back along them."""
    base = base or com(bound)
    candidates = [key for key in orbits_up_to(colors, bound) if key.arity != 1 or key.inputs[0] != key.out_color]
    generators = rng.sample(candidates, min(generator_count, len(candidates)))
    profiles = close_profiles(colors, generators, bound)
    logger.debug(f"Random profiles from {[str(g) for g in generators]}: {len(profiles)} orbits")
    return profile_operad(colors, profiles, base, bound, name=f"rnd-{base.name}")


# Linearization


def linearize_operad(p: Operad) -> Operad:
    """The free VectQ operad on a FinSet operad."""
    if p.variant != Variant.FINSET:
        raise WrongVariant("Only FinSet operads are linearized")
    entries = {}
    for key, action in p.sequence.entries.items():
        obj = linearize(action.object)
        maps = {g: linearize_morphism(m, obj, obj) for g, m in action.maps.items()}
        entries[key] = GroupAction(obj, action.elements, action.generators, maps)
    sequence = SymmetricSequence(p.colors, Variant.VECTQ, p.declared_bound, entries, p.truncated)
    extend = None if p.extend is None else (lambda wider: linearize_operad(p.widened(wider)))
    return Operad(sequence, p.gamma_fn, dict(p.units), name=f"Q{p.name}", extend=extend)


# Tables


Composition = Tuple[OrbitSignature, Label, Tuple[Tuple[OrbitSignature, Label], ...]]
ActionTable = Dict[OrbitSignature, Dict[Perm, Dict[Label, Vector]]]


@dataclass
class OperadTables:
    """
    An operad written out explicitly up to ``bound``.

    ``actions`` lists, per orbit, the images of basis labels under generators
    of the automorphism group; generators acting trivially may be omitted.
    ``compositions`` maps a basis composite on canonical orbits to its
    canonical vector. Missing FinSet composites are errors, missing VectQ
    composites are zero.
    """

    name: str
    colors: Tuple[Color, ...]
    variant: Variant
    bound: int
    truncated: bool = False
    entries: Dict[OrbitSignature, Tuple[Label, ...]] = field(default_factory=dict)
    actions: ActionTable = field(default_factory=dict)
    units: Dict[Color, Vector] = field(default_factory=dict)
    compositions: Dict[Composition, Vector] = field(default_factory=dict)


def _object_for(variant: Variant, labels: Sequence[Label]):
    if variant == Variant.FINSET:
        return finset(labels)
    if variant == Variant.VECTQ:
        return vectq(labels)
    raise WrongVariant("Operad tables are supported over finset and vectq")


def entry_from_table(variant: Variant, key: OrbitSignature, labels: Sequence[Label], images) -> GroupAction:
    """
    The entry on ``labels`` acted on by the listed generator images; unlisted
    generators and labels are fixed.

    Raises:
        StructureMismatch: If a listed permutation does not preserve the inputs
    """
    obj = _object_for(variant, labels)
    generator_maps = {}
    for sigma, table in (images or {}).items():
        if sigma not in key.aut:
            raise StructureMismatch(f"{sigma} does not preserve the inputs of {key}")
        generator_maps[sigma] = from_images(obj, obj, lambda label, im=table: im.get(label, {label: ONE}))
    if not generator_maps:
        return trivial_action(obj, key.aut, key.aut_generators)
    for sigma in key.aut_generators:
        generator_maps.setdefault(sigma, identity(obj))
    return action_from_generators(obj, key.aut, generator_maps)


def sequence_from_tables(
    colors: Sequence[Color],
    variant: Variant,
    bound: int,
    entries: Dict[OrbitSignature, Tuple[Label, ...]],
    actions: Optional[ActionTable] = None,
    truncated: bool = False,
) -> SymmetricSequence:
    actions = actions or {}
    built = {key: entry_from_table(variant, key, labels, actions.get(key)) for key, labels in entries.items()}
    return SymmetricSequence(ColorSet(tuple(colors)), variant, bound, built, truncated)


def sequence_to_tables(x: SymmetricSequence) -> Tuple[Dict[OrbitSignature, Tuple[Label, ...]], ActionTable]:
    """Basis labels per orbit and the images of the non-fixed labels under each generator."""
    entries = {key: x.object(key).labels for key in sorted(x.orbits(), key=lambda k: k.sort_key(x.colors))}
    actions: ActionTable = {}
    for key in entries:
        action = x.entry(key)
        for sigma in key.aut_generators:
            m = action(sigma)
            images = {label: m.image_vector(label) for label in entries[key] if m.image_vector(label) != {label: ONE}}
            if images:
                actions.setdefault(key, {})[sigma] = images
    return entries, actions


def custom_from_tables(tables: OperadTables) -> Operad:
    """
    Build an operad from explicit tables. The result is not checked; run
    ``check_operad`` on it.

    Raises:
        StructureMismatch: If an action table is malformed
        InvalidAction: If the listed generators do not generate a group
    """
    sequence = sequence_from_tables(
        tables.colors, tables.variant, tables.bound, tables.entries, tables.actions, tables.truncated
    )
    compositions = {composite: dict(vector) for composite, vector in tables.compositions.items()}
    finite = tables.variant == Variant.FINSET

    def gamma_fn(outer: OrbitSignature, p: Label, inner: Inner) -> Vector:
        composite = (outer, p, tuple(inner))
        if composite in compositions:
            return dict(compositions[composite])
        if finite:
            raise StructureMismatch(f"No composite recorded for {p!r} at {outer} with {tuple(inner)}")
        return {}

    return Operad(sequence, gamma_fn, {c: dict(v) for c, v in tables.units.items()}, name=tables.name)


def operad_to_tables(p: Operad, bound: Optional[int] = None) -> OperadTables:
    """Write out every composite of basis elements up to ``bound``."""
    bound = p.declared_bound if bound is None else min(bound, p.declared_bound)
    all_entries, all_actions = sequence_to_tables(p.sequence)
    entries = {key: labels for key, labels in all_entries.items() if key.arity <= bound}
    actions = {key: images for key, images in all_actions.items() if key in entries}
    compositions = {}
    for outer, label in outer_elements(p, bound):
        for inner in inner_choices(p, outer.inputs, bound):
            result = p.gamma(outer, label, inner)
            if result or p.variant == Variant.FINSET:
                compositions[(outer, label, tuple(inner))] = result
    return OperadTables(
        name=p.name,
        colors=tuple(p.colors),
        variant=p.variant,
        bound=bound,
        truncated=p.truncated,
        entries=entries,
        actions=actions,
        units={c: dict(v) for c, v in p.units.items()},
        compositions=compositions,
    )
