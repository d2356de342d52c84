"""
The enveloping operad ``P^A`` of a ``P``-algebra ``A`` and its category.

``P^A(w; c)`` is presented as a quotient of

    sum_u  P(c; w ++ u) (x) A(u_1) (x) ... (x) A(u_k)

over sorted extra inputs ``u``, by the automorphisms of ``u`` and by
substituting an operation of ``P`` into one extra slot either in ``P`` or
through the action on ``A``. Extra inputs stop at the arity bound of ``P``.
A composite with more extra inputs is computed in a widened copy of ``P``
and shortened through the same relations before it is projected.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from operadkit.basecat import (
    BaseObject,
    Coproduct,
    Label,
    Quotient,
    Vector,
    action_from_function,
    add_into,
    coproduct,
    from_images,
    induced_action,
    quotient_by_relations,
    tensor_many,
)
from operadkit.basecat.perms import act_on_tuple, block_sum, identity_perm, invert_perm
from operadkit.errors import NonFinitary, StructureMismatch
from operadkit.operads import EnrichedCategory, Operad, OperadMap, offsets, underlying_category
from operadkit.symseq import Color, OrbitSignature, SymmetricSequence, orbits_up_to, sorting_perm
from operadkit.algmod.algebra import Algebra, AlgebraMap, restrict_algebra

logger = logging.getLogger(__name__)

Extension = Tuple[Color, ...]


def _labeled(p: Operad, out_color: Color, slots: Sequence[Color]) -> OrbitSignature:
    return OrbitSignature(out_color, act_on_tuple(sorting_perm(p.colors, slots), tuple(slots)))


@dataclass(frozen=True, eq=False)
class Envelope:
    """
    ``P^A`` with its presentation.

    A label of ``P^A(w; c)`` is a cover representative ``(i, (p, a_1, ...))``
    where ``i`` indexes the extension ``u`` and ``p`` is the canonical vector
    label of an operation labeled at ``w ++ u``.
    """

    operad: Operad
    algebra: Algebra
    bound: int
    extensions: Dict[OrbitSignature, Tuple[Extension, ...]]
    covers: Dict[OrbitSignature, Coproduct]
    quotients: Dict[OrbitSignature, Quotient]
    result: Optional[Operad] = field(default=None, repr=False)

    def cut(self, key: OrbitSignature) -> int:
        """Largest number of extra inputs at ``key``."""
        return self.operad.declared_bound - key.arity

    def class_of(self, key: OrbitSignature, extension: Extension, p: Vector, a: Sequence[Label]) -> Vector:
        """
        Class of ``p (x) a`` with ``p`` labeled at ``key.inputs ++ extension``.

        Raises:
            NonFinitary: If ``extension`` is longer than the presentation at
                ``key`` holds and cannot be shortened
        """
        extension = tuple(extension)
        if not p:
            return {}
        if len(extension) > self.cut(key):
            result: Vector = {}
            for label, coeff in p.items():
                add_into(result, self._shortened(key, extension, label, tuple(a)), coeff)
            return result
        extensions = self.extensions.get(key, ())
        if extension not in extensions:
            return {}
        index = extensions.index(extension)
        return self.quotients[key].project({(index, (label,) + tuple(a)): c for label, c in p.items()})

    def _shortened(self, key: OrbitSignature, extension: Extension, r: Label, a: Tuple[Label, ...]) -> Vector:
        terms = self._drop_nullary(key, extension, r, a)
        if terms is None:
            terms = self._contract(key, extension, r, a)
        if terms is None:
            raise NonFinitary(
                f"An element of {self.result.name if self.result else 'the envelope'} at {key} with "
                f"{len(extension)} extra inputs has no representative with at most {self.cut(key)}"
            )
        result: Vector = {}
        for tail, vector, values, coeff in terms:
            add_into(result, self.class_of(key, tail, vector, values), coeff)
        return result

    def _drop_nullary(self, key: OrbitSignature, extension: Extension, r: Label, a: Tuple[Label, ...]):
        """Absorb an extra input whose value is a nullary operation acting."""
        p, alg = self.operad, self.algebra
        wide = p.widened(key.arity + len(extension))
        slots = key.inputs + extension
        for j, color in enumerate(extension):
            nullary = OrbitSignature(color, ())
            for q in p.labels(nullary):
                if alg.act_basis(nullary, q, ()) != {a[j]: 1}:
                    continue
                inner = [((c,), wide.units[c]) for c in slots]
                inner[key.arity + j] = ((), {q: 1})
                composite = wide.compose_labeled(key.out_color, slots, {r: 1}, inner)
                return [(extension[:j] + extension[j + 1:], composite, a[:j] + a[j + 1:], 1)]
        return None

    def _contract(self, key: OrbitSignature, extension: Extension, r: Label, a: Tuple[Label, ...]):
        """Write ``r`` as ``r' o_j q`` with ``q`` on a block of extra inputs and act by ``q`` on ``A``."""
        p, alg = self.operad, self.algebra
        m, t = key.arity, len(extension)
        wide = p.widened(m + t)
        slots = key.inputs + extension
        for size in range(2, min(p.declared_bound, t) + 1):
            for chosen in combinations(range(t), size):
                first = chosen[0]
                rest = [i for i in range(first + 1, t) if i not in chosen]
                order = list(range(m + first)) + [m + i for i in chosen] + [m + i for i in rest]
                target = wide.transport(key.out_color, slots, invert_perm(tuple(order)), {r: 1})
                block = tuple(extension[i] for i in chosen)
                for color in p.colors:
                    outer_tail = extension[:first] + (color,) + tuple(extension[i] for i in rest)
                    outer_slots = key.inputs + outer_tail
                    for q in p.labels(_labeled(p, color, block)):
                        inner = [((c,), wide.units[c]) for c in outer_slots]
                        inner[m + first] = (block, {q: 1})
                        for r_outer in wide.labels(_labeled(wide, key.out_color, outer_slots)):
                            composite = wide.compose_labeled(key.out_color, outer_slots, {r_outer: 1}, inner)
                            if composite != target:
                                continue
                            value = alg.act_labeled(color, block, {q: 1}, [{a[i]: 1} for i in chosen])
                            terms = []
                            for x, coeff in value.items():
                                values = a[:first] + (x,) + tuple(a[i] for i in rest)
                                _, tail, moved, new_a = _normalized(
                                    wide, key.out_color, key.inputs, outer_tail, {r_outer: 1}, values
                                )
                                terms.append((tail, moved, new_a, coeff))
                            return terms
        return None

    def representative(self, key: OrbitSignature, label) -> Tuple[Extension, Label, Tuple[Label, ...]]:
        index, term = label
        return self.extensions[key][index], term[0], tuple(term[1:])

    def unit_map(self) -> OperadMap:
        """The natural map ``P -> P^A``."""
        p, target = self.operad, self.result
        components = {}
        for key in p.orbits():
            if key.arity > self.bound or key not in target.sequence.entries:
                continue
            components[key] = from_images(
                p.object(key), target.object(key), lambda label, k=key: self.class_of(k, (), {label: 1}, ())
            )
        return OperadMap(p, target, components, name=f"{p.name}->{target.name}")


def extensions_of(p: Operad, alg: Algebra, key: OrbitSignature, cut: int) -> List[Extension]:
    """Sorted extra inputs ``u`` with ``P(c; w ++ u)`` and ``A^u`` nonzero."""
    found = []
    for k in range(max(cut, -1) + 1):
        for extension in combinations_with_replacement(p.colors.labels, k):
            if any(not alg.carrier(c).size for c in extension):
                continue
            big = _labeled(p, key.out_color, key.inputs + extension)
            if big in p.sequence.entries and p.object(big).size:
                found.append(tuple(extension))
    return found


def _summand(p: Operad, alg: Algebra, key: OrbitSignature, extension: Extension) -> BaseObject:
    big = _labeled(p, key.out_color, key.inputs + extension)
    return tensor_many([p.object(big)] + [alg.carrier(c) for c in extension], p.variant)


def _normalized(p: Operad, out_color: Color, head: Sequence[Color], tail: Sequence[Color], vector: Vector, a):
    """
    Move an element labeled at ``head ++ tail`` to ``sorted(head) ++
    sorted(tail)``, permuting the algebra labels ``a`` with ``tail``.
    """
    s_head = sorting_perm(p.colors, head)
    s_tail = sorting_perm(p.colors, tail)
    moved = p.transport(out_color, tuple(head) + tuple(tail), block_sum(s_head, s_tail), vector)
    return act_on_tuple(s_head, tuple(head)), act_on_tuple(s_tail, tuple(tail)), moved, act_on_tuple(s_tail, tuple(a))


def _relations(p: Operad, alg: Algebra, key: OrbitSignature, extensions: List[Extension], cover: Coproduct):
    m = key.arity
    units = {c: ((c,), p.units[c]) for c in p.colors}
    relations = []
    for index, extension in enumerate(extensions):
        k = len(extension)
        summand = cover.summands[index]
        injection = cover.injections[index]
        slots = key.inputs + extension
        for tau in _extension_generators(extension):
            perm = block_sum(identity_perm(m), tau)

            def swapped(label, index=index, slots=slots, perm=perm, tau=tau):
                moved = p.transport(key.out_color, slots, perm, {label[0]: 1})
                a = act_on_tuple(tau, label[1:])
                return {(index, (q,) + a): c for q, c in moved.items()}

            relations.append((injection, from_images(summand, cover.object, swapped)))
        for j in range(k):
            for q_key in p.orbits():
                if q_key.out_color != extension[j] or any(not alg.carrier(c).size for c in q_key.inputs):
                    continue
                if m + k - 1 + q_key.arity > p.declared_bound:
                    if p.truncated:
                        continue
                factors = (
                    [summand_factor(p, key, extension), p.object(q_key)]
                    + [alg.carrier(c) for i, c in enumerate(extension) if i != j]
                    + [alg.carrier(c) for c in q_key.inputs]
                )
                domain = tensor_many(factors, p.variant)
                if domain.is_initial:
                    continue
                split = 2 + k - 1

                def via_algebra(label, index=index, j=j, q_key=q_key, split=split):
                    others, inner = label[2:split], label[split:]
                    value = alg.act_basis(q_key, label[1], inner)
                    result: Vector = {}
                    for x, c in value.items():
                        a = others[:j] + (x,) + others[j:]
                        add_into(result, {(index, (label[0],) + a): c})
                    return result

                def via_operad(label, extension=extension, j=j, q_key=q_key, split=split):
                    others, inner = label[2:split], label[split:]
                    slot_inner = [units[c] for c in key.inputs]
                    slot_inner += [units[c] for c in extension[:j]]
                    slot_inner.append((q_key.inputs, {label[1]: 1}))
                    slot_inner += [units[c] for c in extension[j + 1:]]
                    composite = p.compose_labeled(key.out_color, key.inputs + extension, {label[0]: 1}, slot_inner)
                    tail = extension[:j] + q_key.inputs + extension[j + 1:]
                    a = others[:j] + inner + others[j:]
                    _, new_tail, moved, new_a = _normalized(p, key.out_color, key.inputs, tail, composite, a)
                    if not moved or new_tail not in extensions:
                        return {}
                    target = extensions.index(new_tail)
                    return {(target, (r,) + new_a): c for r, c in moved.items()}

                relations.append(
                    (from_images(domain, cover.object, via_algebra), from_images(domain, cover.object, via_operad))
                )
    return relations


def summand_factor(p: Operad, key: OrbitSignature, extension: Extension) -> BaseObject:
    return p.object(_labeled(p, key.out_color, key.inputs + extension))


def _extension_generators(extension: Extension):
    """Adjacent transpositions of equal colors generate ``Aut(u)``."""
    k = len(extension)
    for i in range(k - 1):
        if extension[i] == extension[i + 1]:
            perm = list(range(k))
            perm[i], perm[i + 1] = i + 1, i
            yield tuple(perm)


def _envelope_gamma(envelope: Envelope):
    p = envelope.operad
    units = {c: ((c,), p.units[c]) for c in p.colors}

    def gamma_fn(outer: OrbitSignature, label, inner) -> Vector:
        extension, p0, a0 = envelope.representative(outer, label)
        slot_inner, pieces = [], []
        for orbit, inner_label in inner:
            ext_i, q_i, b_i = envelope.representative(orbit, inner_label)
            slot_inner.append((orbit.inputs + ext_i, {q_i: 1}))
            pieces.append((orbit.inputs, ext_i, b_i))
        slot_inner += [units[c] for c in extension]
        wide = p.widened(sum(len(inputs) for inputs, _ in slot_inner))
        composite = wide.compose_labeled(outer.out_color, outer.inputs + extension, {p0: 1}, slot_inner)
        if not composite:
            return {}
        # labeled order: V_0 ++ U_0 ++ V_1 ++ U_1 ++ ... ++ u_0; regroup to V ++ U
        sizes, groups = [], []
        for inputs, ext_i, _ in pieces:
            sizes += [len(inputs), len(ext_i)]
            groups += ["v", "u"]
        sizes.append(len(extension))
        groups.append("u")
        starts = offsets(sizes)
        v_positions = [starts[g] + t for g, kind in enumerate(groups) if kind == "v" for t in range(sizes[g])]
        u_positions = [starts[g] + t for g, kind in enumerate(groups) if kind == "u" for t in range(sizes[g])]
        order = v_positions + u_positions
        labeled = [c for inputs, ext_i, _ in pieces for c in inputs + ext_i] + list(extension)
        regroup = tuple(invert_perm(tuple(order)))
        moved = wide.transport(outer.out_color, labeled, regroup, composite)
        head = tuple(c for inputs, _, _ in pieces for c in inputs)
        tail = tuple(c for _, ext_i, _ in pieces for c in ext_i) + tuple(extension)
        a = tuple(x for _, _, b_i in pieces for x in b_i) + tuple(a0)
        canonical_head, new_tail, moved, new_a = _normalized(wide, outer.out_color, head, tail, moved, a)
        key = OrbitSignature(outer.out_color, canonical_head)
        return envelope.class_of(key, new_tail, moved, new_a)

    return gamma_fn


def enveloping_operad(p: Operad, alg: Algebra, bound: Optional[int] = None) -> Envelope:
    """
    ``P^A`` up to arity ``bound``.

    Raises:
        StructureMismatch: If ``alg`` is not a ``P``-algebra
    """
    if alg.operad is not p:
        raise StructureMismatch(f"{alg.name} is not an algebra over {p.name}")
    bound = p.declared_bound if bound is None else min(bound, p.declared_bound)
    if bound < 1:
        raise StructureMismatch(f"The envelope of {alg.name} needs arity bound at least 1, got {bound}")
    extensions, covers, quotients, entries = {}, {}, {}, {}
    for key in orbits_up_to(p.colors, bound):
        found = extensions_of(p, alg, key, p.declared_bound - key.arity)
        if not found:
            continue
        cover = coproduct([_summand(p, alg, key, e) for e in found], p.variant)
        quotient = quotient_by_relations(cover.object, _relations(p, alg, key, found, cover))
        if not quotient.object.size:
            continue
        extensions[key], covers[key], quotients[key] = tuple(found), cover, quotient
        m = key.arity

        def moved(sigma, key=key, found=found, cover=cover):
            def image(label):
                extension = found[label[0]]
                perm = block_sum(sigma, identity_perm(len(extension)))
                vector = p.transport(key.out_color, key.inputs + extension, perm, {label[1][0]: 1})
                return {(label[0], (q,) + label[1][1:]): c for q, c in vector.items()}

            return from_images(cover.object, cover.object, image)

        on_cover = action_from_function(cover.object, key.aut, moved, key.aut_generators)
        entries[key] = induced_action(on_cover, quotient, on_cover.maps)
        logger.debug(f"Envelope at {key} (arity {m}): cover {cover.object.size}, quotient {quotient.object.size}")
    truncated = p.truncated or bound < p.declared_bound
    sequence = SymmetricSequence(p.colors, p.variant, bound, entries, truncated)
    envelope = Envelope(p, alg, bound, extensions, covers, quotients)
    units = {}
    for color in p.colors:
        unit_key = p.unit_key(color)
        units[color] = envelope.class_of(unit_key, (), p.units[color], ())
        if not units[color]:
            raise StructureMismatch(f"Unit of {color} vanishes in the envelope of {alg.name}")
    result = Operad(sequence, _envelope_gamma(envelope), units, name=f"{p.name}^{alg.name}")
    object.__setattr__(envelope, "result", result)
    logger.info(f"Enveloping operad {result.name}: {len(entries)} orbits up to arity {bound}")
    return envelope


def enveloping_category(p: Operad, alg: Algebra) -> EnrichedCategory:
    """The arity-1 part of ``P^A`` as an enriched category."""
    return underlying_category(enveloping_operad(p, alg, bound=1).result)


# Algebras under A


def algebra_under(envelope: Envelope, b: Algebra) -> Tuple[Algebra, AlgebraMap]:
    """
    A ``P^A``-algebra as a ``P``-algebra with a map from ``A``: restrict along
    ``P -> P^A`` and send ``a`` to the nullary class of ``1 (x) a`` acting.
    """
    if b.operad is not envelope.result:
        raise StructureMismatch(f"{b.name} is not an algebra over {envelope.result.name}")
    p, alg = envelope.operad, envelope.algebra
    restricted = restrict_algebra(b, envelope.unit_map())
    components = {}
    for color in p.colors:
        nullary = OrbitSignature(color, ())

        def image(a, color=color, nullary=nullary):
            element = envelope.class_of(nullary, (color,), p.units[color], (a,))
            return b.act(nullary, element, [])

        components[color] = from_images(alg.carrier(color), b.carrier(color), image)
    return restricted, AlgebraMap(alg, restricted, components)


def envelope_algebra(envelope: Envelope, b: Algebra, f: AlgebraMap) -> Algebra:
    """A ``P``-algebra ``b`` under ``A`` (via ``f``) as a ``P^A``-algebra."""
    if b.operad is not envelope.operad:
        raise StructureMismatch(f"{b.name} is not an algebra over {envelope.operad.name}")

    def action_fn(key, label, xs):
        extension, p0, a = envelope.representative(key, label)
        vectors = [{x: 1} for x in xs] + [f.apply(c, {x: 1}) for c, x in zip(extension, a)]
        return b.act_labeled(key.out_color, key.inputs + extension, {p0: 1}, vectors)

    return Algebra(envelope.result, dict(b.carriers), action_fn, name=f"{b.name}^{envelope.algebra.name}")


def envelope_action_vector(envelope: Envelope, key: OrbitSignature, label, xs) -> Vector:
    """Evaluate a representative of ``P^A`` on ``A`` itself."""
    extension, p0, a = envelope.representative(key, label)
    alg = envelope.algebra
    vectors = [{x: 1} for x in xs] + [{x: 1} for x in a]
    return alg.act_labeled(key.out_color, key.inputs + extension, {p0: 1}, vectors)


def tautological_algebra(envelope: Envelope) -> Algebra:
    """``A`` itself as a ``P^A``-algebra."""
    return Algebra(
        envelope.result,
        dict(envelope.algebra.carriers),
        lambda key, label, xs: envelope_action_vector(envelope, key, label, xs),
        name=f"{envelope.algebra.name}^A",
    )
