"""The composition product of symmetric sequences and its relative version.

The closed form computes ``(X o Y)(w)`` orbitwise: for every class ``d`` of
``(phi: k -> n, v)`` over ``w`` the term ``Z_d = X(v) (x) Y(fiber_0) (x) ...``
carries an action of ``Aut(d)``, and the contribution of ``d`` is the induced
object ``Aut(w) x_{Aut(d)} Z_d``, computed as the coinvariants of the
``Aut(d)``-action ``h.(g, z) = (g sigma_h^-1, h z)`` on ``|Aut(w)|`` copies of
``Z_d``. The oracle enumerates labeled terms instead and quotients once by the
slot permutations.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    Coproduct,
    GroupAction,
    Quotient,
    Vector,
    action_from_function,
    add_into,
    compose as compose_maps,
    coproduct,
    coproduct_of_morphisms,
    from_images,
    groupoid_colimit,
    identity,
    inverse,
    is_isomorphism,
    morphisms_equal,
    permute_factors,
    quotient_by_relations,
    same_object,
    tensor_many,
    tensor_morphisms,
)
from operadkit.basecat.perms import (
    Perm,
    act_on_tuple,
    compose_perms,
    identity_perm,
    invert_perm,
    transposition,
)
from operadkit.errors import NonFinitary, StructureMismatch
from operadkit.symseq import (
    Color,
    ColorSet,
    DecSignature,
    OrbitSignature,
    SymmetricSequence,
    check_compatible,
    dec_classes,
    orbit_enumerate,
    slot_key,
)

logger = logging.getLogger(__name__)


def composite_bound(x: SymmetricSequence, y: SymmetricSequence, requested: Optional[int]) -> Tuple[int, bool]:
    """
    Output arity bound of ``x o y`` and whether the result is exact.

    Raises:
        NonFinitary: If the requested arity depends on unknown entries
    """
    limit = None
    if x.truncated:
        if y.has_nullary():
            raise NonFinitary("Nullary entries on the right reach every arity of a truncated left factor")
        limit = x.support_bound
    if y.truncated:
        limit = y.support_bound if limit is None else min(limit, y.support_bound)
    natural = x.support_bound * y.support_bound
    if requested is None:
        bound = natural if limit is None else min(natural, limit)
    else:
        bound = requested
    if limit is not None and bound > limit:
        raise NonFinitary(f"Arity {bound} of the composite needs entries above the known bound {limit}")
    exact = not x.truncated and not y.truncated and bound >= natural
    return bound, exact


def slot_range(x: SymmetricSequence, y: SymmetricSequence, k: int) -> range:
    """Numbers of outer slots that can contribute to output arity ``k``."""
    top = x.support_bound if y.has_nullary() else min(k, x.support_bound)
    return range(0, top + 1)


def fibers_of(phi: Sequence[int], n: int) -> Tuple[Tuple[int, ...], ...]:
    fibers: List[List[int]] = [[] for _ in range(n)]
    for j, slot in enumerate(phi):
        fibers[slot].append(j)
    return tuple(tuple(fiber) for fiber in fibers)


def term_factors(
    x: SymmetricSequence,
    y: SymmetricSequence,
    key: OrbitSignature,
    phi: Sequence[int],
    slot_colors: Sequence[Color],
) -> Optional[List[BaseObject]]:
    """
    Factors ``X(v), Y(fiber_0), ...`` of a labeled term, or None when one
    of them is initial.
    """
    outer = OrbitSignature(key.out_color, tuple(sorted(slot_colors, key=x.colors.index)))
    if outer not in x.entries:
        return None
    factors = [x.object(outer)]
    for color, fiber in zip(slot_colors, fibers_of(phi, len(slot_colors))):
        inner = OrbitSignature(color, tuple(key.inputs[j] for j in fiber))
        if inner not in y.entries:
            return None
        factors.append(y.object(inner))
    return factors


def labeled_transport(
    x: SymmetricSequence,
    y: SymmetricSequence,
    key: OrbitSignature,
    dec: DecSignature,
    sigma: Perm,
    tau: Perm,
) -> BaseMorphism:
    """
    The map ``Z_d -> Z_(phi, v)`` of ``(sigma, tau)`` with
    ``phi = tau . phi_d . sigma^-1`` and ``v = tau . v_d``.
    """
    phi = tuple(tau[dec.phi[j]] for j in invert_perm(sigma))
    target_fibers = fibers_of(phi, dec.n)
    factors = [x.object(dec.outer_orbit())] + [y.object(orbit) for orbit in dec.inner_orbits()]
    local = [x.transport(key.out_color, dec.slot_colors, tau)]
    for i, (orbit, fiber) in enumerate(zip(dec.inner_orbits(), dec.fibers)):
        target = target_fibers[tau[i]]
        rho = tuple(target.index(sigma[j]) for j in fiber)
        local.append(y.entry(orbit)(rho))
    moved = tensor_morphisms(local, x.variant)
    return compose_maps(permute_factors(factors, (0,) + tuple(1 + t for t in tau), x.variant), moved)


@dataclass(frozen=True)
class DecContribution:
    """The contribution of one class ``d`` to an entry of a composite."""

    dec: DecSignature
    factors: Tuple[BaseObject, ...]
    term: BaseObject
    stabilizer: GroupAction
    induced: Quotient
    group: Tuple[Perm, ...]

    def cover_label(self, g: Perm, z) -> tuple:
        return (self.group.index(g), z)


@dataclass(frozen=True)
class ComposeEntry:
    key: OrbitSignature
    contributions: Tuple[DecContribution, ...]
    total: Coproduct
    action: GroupAction

    def index_of(self, dec: DecSignature) -> Optional[int]:
        for i, contribution in enumerate(self.contributions):
            if contribution.dec == dec:
                return i
        return None


@dataclass(frozen=True)
class ComposeWitness:
    """
    A composite ``X o Y`` with the provenance of every entry.

    Entry labels are ``(i, (g, z))``: contribution ``i``, group element index
    ``g`` and a basis label ``z`` of ``Z_d`` representing the class.
    """

    left: SymmetricSequence
    right: SymmetricSequence
    result: SymmetricSequence
    entries: Dict[OrbitSignature, ComposeEntry]
    _inverse_cache: Dict[tuple, tuple] = field(default_factory=dict, repr=False, compare=False)

    @property
    def colors(self) -> ColorSet:
        return self.result.colors

    def provenance(self, key: OrbitSignature) -> List[Tuple[DecSignature, BaseObject]]:
        entry = self.entries.get(key)
        if entry is None:
            return []
        return [(c.dec, c.induced.object) for c in entry.contributions]

    def term_vector(self, key: OrbitSignature, dec: DecSignature, g: Perm, z: Vector) -> Vector:
        """Image in the entry of ``(g, z)`` from the class ``dec``."""
        entry = self.entries.get(key)
        if entry is None or not z:
            return {}
        index = entry.index_of(dec)
        if index is None:
            return {}
        contribution = entry.contributions[index]
        position = contribution.group.index(g)
        projected = contribution.induced.project({(position, label): coeff for label, coeff in z.items()})
        return {(index, label): coeff for label, coeff in projected.items()}

    def locate(
        self, key: OrbitSignature, phi: Sequence[int], slot_colors: Sequence[Color]
    ) -> Tuple[DecSignature, Perm, Perm]:
        """Class ``d`` and ``(sigma, tau)`` with ``(phi, v) = (sigma, tau) . d``."""
        n = len(slot_colors)
        colors = self.colors
        target = min(slot_key(colors, slot_colors, phi, s) for s in key.aut)
        named = tuple((colors.labels[color_index], fiber) for color_index, fiber in target)
        for dec in dec_classes(colors, key, n):
            if dec.slots == named:
                break
        else:
            raise StructureMismatch(f"No class over {key} matches {phi}")
        fibers = fibers_of(phi, n)
        for pullback in key.aut:
            if slot_key(colors, slot_colors, phi, pullback) != target:
                continue
            tau = [None] * n
            used = set()
            for i_labeled in range(n):
                wanted = (slot_colors[i_labeled], tuple(sorted(pullback[j] for j in fibers[i_labeled])))
                for i, slot in enumerate(dec.slots):
                    if i not in used and slot == wanted:
                        tau[i] = i_labeled
                        used.add(i)
                        break
            return dec, invert_perm(pullback), tuple(tau)
        raise StructureMismatch(f"No automorphism carries {phi} to its class")

    def inject(self, key: OrbitSignature, phi: Sequence[int], slot_colors: Sequence[Color], z: Vector) -> Vector:
        """Class of a labeled term ``z`` in ``Z_(phi, v)``."""
        if not z:
            return {}
        cache_key = (key, tuple(phi), tuple(slot_colors))
        if cache_key not in self._inverse_cache:
            dec, sigma, tau = self.locate(key, phi, slot_colors)
            back = inverse(labeled_transport(self.left, self.right, key, dec, sigma, tau))
            self._inverse_cache[cache_key] = (dec, sigma, back)
        dec, sigma, back = self._inverse_cache[cache_key]
        return self.term_vector(key, dec, sigma, back.apply(z))

    def descend(
        self,
        key: OrbitSignature,
        target: BaseObject,
        fn: Callable[[DecContribution, Perm, tuple], Vector],
        check: bool = False,
    ) -> BaseMorphism:
        """
        Map out of an entry given on representatives ``(g, z)``.

        Raises:
            StructureMismatch: If ``check`` is set and ``fn`` is not constant
                on classes
        """
        entry = self.entries.get(key)
        if entry is None:
            return from_images(self.result.object(key), target, lambda label: {})
        maps = []
        for contribution in entry.contributions:
            cover = contribution.induced.cover
            m = from_images(
                cover,
                target,
                lambda label, c=contribution: fn(c, c.group[label[0]], label[1]),
            )
            maps.append(contribution.induced.descend(m, check=check))
        return entry.total.copair_into(target, maps)


def _stabilizer_action(x, y, key, dec, factors, term) -> GroupAction:
    def act(h: Perm) -> BaseMorphism:
        sigma, tau = h[: dec.k], tuple(t - dec.k for t in h[dec.k:])
        return labeled_transport(x, y, key, dec, sigma, tau)

    return action_from_function(term, dec.aut, act)


def _contribution(x, y, key: OrbitSignature, dec: DecSignature) -> Optional[DecContribution]:
    factors = term_factors(x, y, key, dec.phi, dec.slot_colors)
    if factors is None:
        return None
    term = tensor_many(factors, x.variant)
    if term.is_initial:
        return None
    stabilizer = _stabilizer_action(x, y, key, dec, factors, term)
    group = key.aut
    copies = coproduct([term] * len(group), x.variant)
    position = {g: i for i, g in enumerate(group)}

    def on_cover(h: Perm) -> BaseMorphism:
        sigma_inverse = invert_perm(h[: dec.k])
        local = stabilizer(h)

        def image(label):
            gi, z = label
            moved = position[compose_perms(group[gi], sigma_inverse)]
            return {(moved, t): c for t, c in local.image_vector(z).items()}

        return from_images(copies.object, copies.object, image)

    cover_action = action_from_function(copies.object, dec.aut, on_cover, stabilizer.generators)
    induced = groupoid_colimit(cover_action, validate=False)
    return DecContribution(dec, tuple(factors), term, stabilizer, induced, group)


def _left_translation(contribution: DecContribution, g0: Perm) -> BaseMorphism:
    position = {g: i for i, g in enumerate(contribution.group)}
    quotient = contribution.induced
    shift = from_images(
        quotient.cover,
        quotient.cover,
        lambda label: {(position[compose_perms(g0, contribution.group[label[0]])], label[1]): 1},
    )
    return quotient.descend(compose_maps(quotient.projection, shift))


def _compose_entry(x, y, key: OrbitSignature) -> Optional[ComposeEntry]:
    contributions = []
    for n in slot_range(x, y, key.arity):
        for dec in dec_classes(x.colors, key, n):
            contribution = _contribution(x, y, key, dec)
            if contribution is not None and not contribution.induced.object.is_initial:
                contributions.append(contribution)
    if not contributions:
        return None
    total = coproduct([c.induced.object for c in contributions], x.variant)

    def act(g0: Perm) -> BaseMorphism:
        return coproduct_of_morphisms([_left_translation(c, g0) for c in contributions], total, total)

    action = action_from_function(total.object, key.aut, act, key.aut_generators)
    logger.debug(f"Entry {key}: {len(contributions)} contributions, size {total.object.size}")
    return ComposeEntry(key, tuple(contributions), total, action)


def output_orbits(colors: ColorSet, bound: int) -> List[OrbitSignature]:
    return [orbit for k in range(bound + 1) for out in colors for orbit in orbit_enumerate(colors, k, out)]


def compose(x: SymmetricSequence, y: SymmetricSequence, out_arity_bound: Optional[int] = None) -> ComposeWitness:
    """
    The composition product ``x o y`` in closed orbit form.

    Args:
        x: Left factor
        y: Right factor
        out_arity_bound: Largest output arity to compute; defaults to the
            largest arity that can be nonzero

    Raises:
        ColorMismatch: If the color sets differ
        NonFinitary: If a requested arity needs entries above a known bound
    """
    check_compatible(x, y)
    bound, exact = composite_bound(x, y, out_arity_bound)
    entries = {}
    for key in output_orbits(x.colors, bound):
        entry = _compose_entry(x, y, key)
        if entry is not None:
            entries[key] = entry
    natural = x.support_bound * y.support_bound
    result = SymmetricSequence(
        x.colors,
        x.variant,
        natural if exact else bound,
        {key: entry.action for key, entry in entries.items()},
        truncated=not exact,
    )
    logger.info(f"Composite up to arity {bound} has {len(entries)} nonempty orbits")
    return ComposeWitness(x, y, result, entries)


# Labeled oracle


@dataclass(frozen=True)
class OracleEntry:
    """Labeled terms ``(phi, v)`` over one orbit and their quotient."""

    key: OrbitSignature
    terms: Tuple[Tuple[Tuple[int, ...], Tuple[Color, ...]], ...]
    cover: Coproduct
    quotient: Quotient
    action: GroupAction


@dataclass(frozen=True)
class OracleComposite:
    left: SymmetricSequence
    right: SymmetricSequence
    result: SymmetricSequence
    entries: Dict[OrbitSignature, OracleEntry]


def _labeled_terms(x, y, key: OrbitSignature):
    terms = []
    for n in slot_range(x, y, key.arity):
        for phi in product(range(n), repeat=key.arity):
            for slot_colors in product(x.colors.labels, repeat=n):
                factors = term_factors(x, y, key, phi, slot_colors)
                if factors is not None:
                    terms.append(((tuple(phi), tuple(slot_colors)), factors))
    return terms


def _slot_swap(x, key: OrbitSignature, term, factors, swap: Perm) -> Tuple[tuple, BaseMorphism]:
    phi, slot_colors = term
    moved_term = (tuple(swap[i] for i in phi), act_on_tuple(swap, slot_colors))
    local = [x.transport(key.out_color, slot_colors, swap)] + [identity(f) for f in factors[1:]]
    perm = (0,) + tuple(1 + t for t in swap)
    return moved_term, compose_maps(permute_factors(factors, perm, x.variant), tensor_morphisms(local, x.variant))


def _oracle_entry(x, y, key: OrbitSignature) -> Optional[OracleEntry]:
    labeled = _labeled_terms(x, y, key)
    if not labeled:
        return None
    terms = tuple(term for term, _ in labeled)
    factor_lists = [factors for _, factors in labeled]
    objects = [tensor_many(factors, x.variant) for factors in factor_lists]
    cover = coproduct(objects, x.variant)
    index = {term: i for i, term in enumerate(terms)}
    relations = []
    for i, term in enumerate(terms):
        n = len(term[1])
        for a in range(n - 1):
            moved_term, swap_map = _slot_swap(x, key, term, factor_lists[i], transposition(n, a, a + 1))
            j = index[moved_term]
            relations.append(
                (cover.injections[i], compose_maps(cover.injections[j], _retarget(swap_map, objects[j])))
            )
    quotient = quotient_by_relations(cover.object, relations)

    def act(sigma: Perm) -> BaseMorphism:
        sigma_inverse = invert_perm(sigma)
        images = {}
        for i, (phi, slot_colors) in enumerate(terms):
            new_phi = tuple(phi[sigma_inverse[j]] for j in range(len(phi)))
            old_fibers = fibers_of(phi, len(slot_colors))
            new_fibers = fibers_of(new_phi, len(slot_colors))
            local = [identity(factor_lists[i][0])]
            for s, (color, fiber) in enumerate(zip(slot_colors, old_fibers)):
                rho = tuple(new_fibers[s].index(sigma[j]) for j in fiber)
                inner = OrbitSignature(color, tuple(key.inputs[j] for j in fiber))
                local.append(y.entry(inner)(rho))
            images[i] = (index[(new_phi, slot_colors)], tensor_morphisms(local, x.variant))

        def image(label):
            i, z = label
            j, local_map = images[i]
            return {(j, t): c for t, c in local_map.image_vector(z).items()}

        on_cover = from_images(cover.object, cover.object, image)
        return quotient.descend(compose_maps(quotient.projection, on_cover))

    action = action_from_function(quotient.object, key.aut, act, key.aut_generators)
    return OracleEntry(key, terms, cover, quotient, action)


def _retarget(m: BaseMorphism, target: BaseObject) -> BaseMorphism:
    """``m`` with its target replaced by an equal object."""
    if m.target is target:
        return m
    return from_images(m.source, target, m.image_vector)


def oracle_composite(
    x: SymmetricSequence, y: SymmetricSequence, out_arity_bound: Optional[int] = None
) -> OracleComposite:
    """``x o y`` from labeled terms, quotiented once by the slot permutations."""
    check_compatible(x, y)
    bound, exact = composite_bound(x, y, out_arity_bound)
    entries = {}
    for key in output_orbits(x.colors, bound):
        entry = _oracle_entry(x, y, key)
        if entry is not None and not entry.quotient.object.is_initial:
            entries[key] = entry
    natural = x.support_bound * y.support_bound
    result = SymmetricSequence(
        x.colors,
        x.variant,
        natural if exact else bound,
        {key: entry.action for key, entry in entries.items()},
        truncated=not exact,
    )
    return OracleComposite(x, y, result, entries)


def compose_oracle(
    x: SymmetricSequence, y: SymmetricSequence, out_arity_bound: Optional[int] = None
) -> SymmetricSequence:
    return oracle_composite(x, y, out_arity_bound).result


def oracle_comparison(witness: ComposeWitness, oracle: OracleComposite) -> Optional[str]:
    """
    Build the map from the oracle to the closed form on every orbit and check
    that it is a well-defined equivariant isomorphism.

    Returns:
        None when all orbits agree, else a description of the first failure
    """
    keys = sorted(set(witness.entries) | set(oracle.entries), key=lambda o: o.sort_key(witness.colors))
    for key in keys:
        entry = oracle.entries.get(key)
        if entry is None:
            return f"orbit {key}: oracle is empty, closed form has size {witness.result.object(key).size}"
        if key not in witness.entries:
            return f"orbit {key}: closed form is empty, oracle has size {entry.quotient.object.size}"
        closed = witness.result.entry(key)

        def image(label, entry=entry, key=key):
            i, z = label
            phi, slot_colors = entry.terms[i]
            return witness.inject(key, phi, slot_colors, {z: 1})

        on_cover = from_images(entry.cover.object, closed.object, image)
        try:
            comparison = entry.quotient.descend(on_cover, check=True)
        except StructureMismatch as e:
            return f"orbit {key}: comparison is not constant on oracle classes ({e})"
        if not is_isomorphism(comparison):
            sizes = f"{entry.quotient.object.size} -> {closed.object.size}"
            return f"orbit {key}: comparison of sizes {sizes} is not invertible"
        for g in key.aut_generators:
            witness_diff = morphisms_equal(
                compose_maps(comparison, entry.action(g)), compose_maps(closed(g), comparison)
            )
            if witness_diff is not None:
                return f"orbit {key}: comparison is not equivariant for {g} at {witness_diff[0]!r}"
    return None


# Canonical maps


def left_unit_map(witness: ComposeWitness, key: OrbitSignature) -> BaseMorphism:
    """``Y(w) -> (I o Y)(w)``, ``y -> [1 (x) y]``."""
    y = witness.right
    phi = (0,) * key.arity
    return from_images(
        y.object(key),
        witness.result.object(key),
        lambda label: witness.inject(key, phi, (key.out_color,), {((), label): 1}),
    )


def right_unit_map(witness: ComposeWitness, key: OrbitSignature) -> BaseMorphism:
    """``X(w) -> (X o I)(w)``, ``x -> [x (x) 1 ... 1]``."""
    x = witness.left
    phi = identity_perm(key.arity)
    units = ((),) * key.arity
    return from_images(
        x.object(key),
        witness.result.object(key),
        lambda label: witness.inject(key, phi, key.inputs, {(label,) + units: 1}),
    )


def left_linearity_map(
    total: ComposeWitness, parts: Sequence[ComposeWitness], combined: SymmetricSequence, key: OrbitSignature
) -> BaseMorphism:
    """
    ``((X_0 + X_1) o Y)(w) -> (X_0 o Y)(w) + (X_1 o Y)(w)`` for a left factor
    built with ``coproduct_sequences``.
    """
    target = combined.object(key)

    def fn(contribution: DecContribution, g: Perm, z) -> Vector:
        tag, x_label = z[0]
        part = parts[tag].term_vector(key, contribution.dec, g, {(x_label,) + tuple(z[1:]): 1})
        return {(tag, label): coeff for label, coeff in part.items()}

    return total.descend(key, target, fn, check=True)


def right_linearity_map(
    total: ComposeWitness, parts: Sequence[ComposeWitness], combined: SymmetricSequence, key: OrbitSignature
) -> BaseMorphism:
    """``(X o (Y_0 + Y_1))(w) -> (X o Y_0)(w) + (X o Y_1)(w)`` for ``X`` in arity 1."""
    target = combined.object(key)

    def fn(contribution: DecContribution, g: Perm, z) -> Vector:
        tag, y_label = z[1]
        part = parts[tag].term_vector(key, contribution.dec, g, {(z[0], y_label): 1})
        return {(tag, label): coeff for label, coeff in part.items()}

    return total.descend(key, target, fn, check=True)


SequenceMap = Mapping[OrbitSignature, BaseMorphism]


def _tensor_vectors(vectors: Sequence[Vector]) -> Vector:
    result: Vector = {}
    for combo in product(*[list(v.items()) for v in vectors]):
        coeff = 1
        for _, c in combo:
            coeff *= c
        add_into(result, {tuple(label for label, _ in combo): coeff})
    return result


def _image(maps: Optional[SequenceMap], key: OrbitSignature, label) -> Vector:
    if maps is None:
        return {label: 1}
    return maps[key].image_vector(label)


def _translated(witness: ComposeWitness, key: OrbitSignature, g: Perm, vector: Vector) -> Vector:
    """``g`` acting on a vector of the entry at ``key``; ``[g, z] = g . [1, z]``."""
    if not vector or key not in witness.entries:
        return vector
    return witness.result.entry(key)(g).apply(vector)


def compose_morphisms(
    source: ComposeWitness,
    target: ComposeWitness,
    key: OrbitSignature,
    left: Optional[SequenceMap] = None,
    right: Optional[SequenceMap] = None,
) -> BaseMorphism:
    """
    ``(f o g)(w): (X o Y)(w) -> (X' o Y')(w)`` for maps ``f: X -> X'`` and
    ``g: Y -> Y'`` given orbitwise; ``None`` stands for an identity.

    Raises:
        StructureMismatch: If the maps are not equivariant, so that the
            image of a class depends on its representative
    """

    def fn(contribution: DecContribution, g: Perm, z) -> Vector:
        dec = contribution.dec
        images = [_image(left, dec.outer_orbit(), z[0])]
        images += [_image(right, orbit, label) for orbit, label in zip(dec.inner_orbits(), z[1:])]
        return _translated(target, key, g, target.inject(key, dec.phi, dec.slot_colors, _tensor_vectors(images)))

    return source.descend(key, target.result.object(key), fn, check=True)


@dataclass(frozen=True)
class Associator:
    """
    ``((X o Y) o Z)(w) -> (X o (Y o Z))(w)``.

    A class of ``(X o Y) o Z`` is unfolded through its ``X o Y`` factor to a
    labeled term ``x (x) y_0 ... (x) z_0 ...`` and regrouped: the ``y`` of
    every ``X``-slot takes the ``z`` of its own inputs.
    """

    xy: ComposeWitness
    left: ComposeWitness
    yz: ComposeWitness
    right: ComposeWitness

    def __post_init__(self):
        if self.left.left is not self.xy.result or self.right.right is not self.yz.result:
            raise StructureMismatch("The outer composites are not built on the inner ones")
        pairs = ((self.xy.left, self.right.left), (self.xy.right, self.yz.left), (self.left.right, self.yz.right))
        if any(a is not b for a, b in pairs):
            raise StructureMismatch("The factors of the two bracketings differ")

    def keys(self) -> List[OrbitSignature]:
        keys = set(self.left.entries) | set(self.right.entries)
        return sorted(keys, key=lambda o: o.sort_key(self.left.colors))

    def component(self, key: OrbitSignature) -> BaseMorphism:
        return self.left.descend(
            key, self.right.result.object(key), lambda c, g, z: self._regrouped(key, c, g, z), check=True
        )

    def _regrouped(self, key: OrbitSignature, contribution: DecContribution, g: Perm, z) -> Vector:
        dec = contribution.dec
        u = dec.outer_orbit()
        i, (position, z_xy) = z[0]
        inner = self.xy.entries[u].contributions[i]
        g_xy = inner.group[position]
        d_xy = inner.dec
        unfolded = labeled_transport(self.xy.left, self.xy.right, u, d_xy, g_xy, identity_perm(d_xy.n))
        phi_xy = tuple(d_xy.phi[j] for j in invert_perm(g_xy))
        slots_of = fibers_of(phi_xy, d_xy.n)
        phi = dec.phi
        psi = tuple(phi_xy[phi[p]] for p in range(key.arity))
        groups = []
        for s, color in enumerate(d_xy.slot_colors):
            positions = [p for p in range(key.arity) if psi[p] == s]
            orbit = OrbitSignature(color, tuple(key.inputs[p] for p in positions))
            slots = slots_of[s]
            phi_s = tuple(slots.index(phi[p]) for p in positions)
            groups.append((orbit, phi_s, tuple(u.inputs[j] for j in slots), slots))
        result: Vector = {}
        for label, coeff in unfolded.image_vector(z_xy).items():
            pieces = [{label[0]: 1}]
            for s, (orbit, phi_s, colors_s, slots) in enumerate(groups):
                term = (label[1 + s],) + tuple(z[1 + j] for j in slots)
                pieces.append(self.yz.inject(orbit, phi_s, colors_s, {term: 1}))
            add_into(result, self.right.inject(key, psi, d_xy.slot_colors, _tensor_vectors(pieces)), coeff)
        return _translated(self.right, key, g, result)


def associator(
    x: SymmetricSequence, y: SymmetricSequence, z: SymmetricSequence, out_arity_bound: Optional[int] = None
) -> Associator:
    """Both bracketings of ``x o y o z`` and the map between them."""
    xy = compose(x, y, out_arity_bound)
    yz = compose(y, z, out_arity_bound)
    return Associator(xy, compose(xy.result, z, out_arity_bound), yz, compose(x, yz.result, out_arity_bound))


# Relative composition


@dataclass(frozen=True)
class NullaryRightModule:
    """
    A sequence ``R`` with a right action of a free-on-nullary operad:
    ``substitute(w, J, r, p0s)`` plugs nullary elements into the slots ``J``
    of ``r in R(w)`` and returns a vector of ``R(w minus J)``.
    """

    sequence: SymmetricSequence
    substitute: Callable[[OrbitSignature, Tuple[int, ...], object, Tuple[object, ...]], Vector]


def remove_slots(key: OrbitSignature, slots: Sequence[int]) -> OrbitSignature:
    dropped = set(slots)
    return OrbitSignature(key.out_color, tuple(c for j, c in enumerate(key.inputs) if j not in dropped))


@dataclass(frozen=True)
class RelativeComposite:
    """
    ``R o_O X`` for an O-algebra ``X``, one quotient per color.

    The cover of color ``c`` is the coproduct over orbits ``w`` with output
    ``c`` of ``R(w) (x) X(w_1) (x) ... (x) X(w_n)``.
    """

    colors: ColorSet
    orbits: Dict[Color, Tuple[OrbitSignature, ...]]
    covers: Dict[Color, Coproduct]
    quotients: Dict[Color, Quotient]

    def object(self, color: Color) -> BaseObject:
        return self.quotients[color].object

    def summand(self, key: OrbitSignature) -> Optional[int]:
        keys = self.orbits.get(key.out_color, ())
        return keys.index(key) if key in keys else None

    def cover_map(self, key: OrbitSignature) -> BaseMorphism:
        """``R(w) (x) X^w -> (R o_O X)(w_*)``."""
        index = self.summand(key)
        if index is None:
            raise StructureMismatch(f"{key} is not a summand of the relative composite")
        cover = self.covers[key.out_color]
        return compose_maps(self.quotients[key.out_color].projection, cover.injections[index])

    def class_of(self, key: OrbitSignature, vector: Vector) -> Vector:
        index = self.summand(key)
        if index is None:
            return {}
        return self.quotients[key.out_color].project({(index, label): c for label, c in vector.items()})

    def sizes(self) -> Dict[Color, int]:
        return {color: self.object(color).size for color in self.colors}


def relative_compose(r: NullaryRightModule, o, x, out_arity_bound: Optional[int] = None) -> RelativeComposite:
    """
    ``R o_O X``: the coequalizer of ``R o O o X`` into ``R o X``.

    ``o`` provides ``nullary(c)``, the nullary objects ``P_0(c)``; ``x``
    provides ``carrier(c)`` and ``basepoint(c): P_0(c) -> X(c)``.

    Raises:
        NonFinitary: If ``R`` is truncated or has entries above the bound
        StructureMismatch: If ``x`` is not an algebra under ``o``'s nullary part
    """
    seq = r.sequence
    if seq.truncated:
        raise NonFinitary("Relative composition needs every arity of R")
    bound = seq.support_bound if out_arity_bound is None else out_arity_bound
    if seq.max_arity() > bound:
        raise NonFinitary(f"R has entries above the arity cut {bound}")
    for color in seq.colors:
        if not same_object(x.basepoint(color).source, o.nullary(color)):
            raise StructureMismatch(f"Basepoint of {color} does not start at the nullary part")
    orbits, covers, quotients = {}, {}, {}
    for color in seq.colors:
        keys = tuple(key for key in seq.orbits() if key.out_color == color)
        summands = [tensor_many([seq.object(key)] + [x.carrier(c) for c in key.inputs], seq.variant) for key in keys]
        cover = coproduct(summands, seq.variant)
        orbits[color], covers[color] = keys, cover
        relations = []
        for i, key in enumerate(keys):
            relations.extend(_aut_relations(seq, x, key, summands[i], cover.injections[i]))
            relations.extend(_nullary_relations(r, o, x, key, keys, summands, cover))
        quotients[color] = quotient_by_relations(cover.object, relations)
        size = quotients[color].object.size
        logger.debug(f"Relative composite at {color}: cover {cover.object.size}, quotient {size}")
    return RelativeComposite(seq.colors, orbits, covers, quotients)


def _aut_relations(seq, x, key, summand, injection):
    factors = [seq.object(key)] + [x.carrier(c) for c in key.inputs]
    relations = []
    for sigma in key.aut_generators:
        local = tensor_morphisms([seq.entry(key)(sigma)] + [identity(f) for f in factors[1:]], seq.variant)
        moved = compose_maps(permute_factors(factors, (0,) + tuple(1 + s for s in sigma), seq.variant), local)
        relations.append((injection, compose_maps(injection, _retarget(moved, summand))))
    return relations


def _nullary_relations(r, o, x, key, keys, summands, cover):
    seq = r.sequence
    relations = []
    for size in range(1, key.arity + 1):
        for slots in combinations(range(key.arity), size):
            factors = [seq.object(key)] + [
                o.nullary(c) if j in slots else x.carrier(c) for j, c in enumerate(key.inputs)
            ]
            domain = tensor_many(factors, seq.variant)
            if domain.is_initial:
                continue
            index = keys.index(key)
            basepoints = tensor_morphisms(
                [identity(factors[0])]
                + [x.basepoint(c) if j in slots else identity(x.carrier(c)) for j, c in enumerate(key.inputs)],
                seq.variant,
            )
            via_algebra = compose_maps(cover.injections[index], _retarget(basepoints, summands[index]))
            reduced = remove_slots(key, slots)
            target_index = keys.index(reduced) if reduced in keys else None

            def substituted(label, key=key, slots=slots, target_index=target_index):
                if target_index is None:
                    return {}
                kept = tuple(label[1 + j] for j in range(key.arity) if j not in slots)
                nullaries = tuple(label[1 + j] for j in slots)
                result: Vector = {}
                for r_label, coeff in r.substitute(key, slots, label[0], nullaries).items():
                    add_into(result, {(target_index, (r_label,) + kept): coeff})
                return result

            via_module = from_images(domain, cover.object, substituted)
            relations.append((via_algebra, via_module))
    return relations

