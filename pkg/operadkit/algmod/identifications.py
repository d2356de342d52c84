"""
Closed-form identifications of the attaching data.

* The skeleton square: ``P_{<=n}`` is the pushout of ``P_{<=n-1}`` and
  ``P_n o O`` along ``(P_n o O)_{<=n-1}``, orbit by orbit.
* ``((P_n o O)_{<=n-1} o_O X)(c)`` is the coinvariant sum ``L`` of
  ``P(w) (x) Q(X, w)``.
* ``R+_n`` is the cobase change of ``T -> U`` along ``T -> P_0(c)``, where
  ``T`` and ``U`` are recomputed as composites with the nullary parts.
"""

import logging
from typing import Dict, Sequence, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    Vector,
    add_into,
    coproduct,
    compose as compose_maps,
    from_images,
    identity,
    is_isomorphism,
    morphisms_equal,
    pushout,
    zero_morphism,
)
from operadkit.basecat.perms import Perm, invert_perm
from operadkit.compose import (
    ComposeWitness,
    DecContribution,
    NullaryRightModule,
    compose,
    relative_compose,
    remove_slots,
)
from operadkit.config.constants import Variant
from operadkit.errors import NonFinitary, StructureMismatch
from operadkit.operads import CheckReport, Operad, nullary_operad
from operadkit.symseq import Color, DecSignature, OrbitSignature, arity_part, sequence_from_objects, skeleton
from operadkit.algmod.filtration import attaching_objects, free_algebra_filtration
from operadkit.algmod.oalgebra import OAlgebra

logger = logging.getLogger(__name__)


def _require_arity(p: Operad, n: int) -> None:
    if n < 2:
        raise StructureMismatch(f"Attaching squares start at arity 2, got {n}")
    if p.truncated and n > p.declared_bound:
        raise NonFinitary(f"{p.name} is unknown above arity {p.declared_bound}")


def _empty(variant: Variant) -> BaseObject:
    return BaseObject(variant, {})


def _entry_object(witness: ComposeWitness, key: OrbitSignature) -> BaseObject:
    result = witness.result
    return result.object(key) if key in result.entries else _empty(result.variant)


def _from_empty(source: BaseObject, target: BaseObject) -> BaseMorphism:
    return from_images(source, target, lambda label: {})


def _tensor_vectors(vectors: Sequence[Vector]) -> Vector:
    result: Vector = {(): 1}
    for vector in vectors:
        expanded: Vector = {}
        for prefix, c in result.items():
            for label, d in vector.items():
                add_into(expanded, {prefix + (label,): c * d})
        result = expanded
    return result


def nullary_substitutions(p: Operad, n: int) -> ComposeWitness:
    """``P_n o O`` where ``O`` is the operad generated by ``P_0``."""
    return compose(arity_part(p.sequence, n), nullary_operad(p).sequence)


def substitution_map(p: Operad, witness: ComposeWitness, key: OrbitSignature) -> BaseMorphism:
    """
    ``(P_n o O)(w) -> P(w)`` plugging the nullary operations in.

    Raises:
        StructureMismatch: If the map is not constant on classes
    """
    target = p.object(key) if key in p.sequence.entries else _empty(p.variant)

    def fn(contribution: DecContribution, g: Perm, z: tuple) -> Vector:
        inner = []
        for orbit, label in zip(contribution.dec.inner_orbits(), z[1:]):
            inner.append(p.units[orbit.out_color] if orbit.arity == 1 else {label: 1})
        composite = p.compose_vectors(contribution.dec, {z[0]: 1}, inner)
        return p.act(key, g, composite) if composite else {}

    return witness.descend(key, target, fn, check=True)


# Skeleton square


def lq_n_pushout_check(p: Operad, n: int, drop_top_cell: bool = False) -> CheckReport:
    """
    Recompute ``P_{<=n}`` as the pushout of
    ``P_{<=n-1} <- (P_n o O)_{<=n-1} -> P_n o O`` for every orbit of arity
    at most ``n``.

    With ``drop_top_cell`` the corner ``P_n o O`` is taken empty in arity ``n``.
    """
    _require_arity(p, n)
    report = CheckReport(f"skeleton square of {p.name}", n)
    witness = nullary_substitutions(p, n)
    for key in witness.result.orbits():
        report.tick("arity cut")
        if key.arity > n:
            report.fail("arity cut", f"{key}: nonempty above arity {n}")
    keys = {key for key in p.orbits() if key.arity <= n} | {k for k in witness.result.orbits() if k.arity <= n}
    for key in sorted(keys, key=lambda k: k.sort_key(p.colors)):
        report.tick("well defined")
        try:
            a_to_p = substitution_map(p, witness, key)
        except StructureMismatch as e:
            report.fail("well defined", f"{key}: {e}")
            continue
        if key in witness.result.entries and key in p.sequence.entries:
            for sigma in key.aut_generators:
                report.tick("equivariance")
                left = compose_maps(a_to_p, witness.result.entry(key)(sigma))
                right = compose_maps(p.entry(key)(sigma), a_to_p)
                found = morphisms_equal(left, right)
                if found is not None:
                    report.fail("equivariance", f"{key}, {sigma}: differs at {found[0]!r}")
        top = _entry_object(witness, key)
        if drop_top_cell and key.arity == n:
            top = _empty(p.variant)
            a_to_p = _from_empty(top, a_to_p.target)
        full = a_to_p.target
        if key.arity < n:
            corner_to_lower, corner_to_top, lower_to_full = a_to_p, identity(top), identity(full)
        else:
            corner = _empty(p.variant)
            lower = _empty(p.variant)
            corner_to_lower, corner_to_top = _from_empty(corner, lower), _from_empty(corner, top)
            lower_to_full = _from_empty(lower, full)
        square = pushout(corner_to_lower, corner_to_top)
        report.tick("pushout")
        try:
            induced = square.induced(lower_to_full, a_to_p, check=True)
        except StructureMismatch as e:
            report.fail("pushout", f"{key}: induced map not defined ({e})")
            continue
        if not is_isomorphism(induced):
            report.fail("pushout", f"{key}: pushout has size {square.object.size}, P has {full.size}")
    logger.info(f"Skeleton square of {p.name} at arity {n}: {'ok' if report.passed else report.first_witness()}")
    return report


# The attaching object L


def _labeled_term(witness: ComposeWitness, key: OrbitSignature, r_label) -> Tuple[DecSignature, Tuple[int, ...], tuple]:
    """The class, the labeled ``phi`` and the term ``z`` of an entry label."""
    index, (gi, z) = r_label
    contribution = witness.entries[key].contributions[index]
    dec = contribution.dec
    back = invert_perm(contribution.group[gi])
    return dec, tuple(dec.phi[back[j]] for j in range(dec.k)), z


def truncated_substitution_module(p: Operad, witness: ComposeWitness, n: int) -> NullaryRightModule:
    """``(P_n o O)_{<=n-1}`` with nullaries replacing identities of ``O``."""
    sequence = skeleton(witness.result, n - 1)

    def substitute(key, slots, r_label, nullaries) -> Vector:
        dec, phi, z = _labeled_term(witness, key, r_label)
        chosen = dict(zip(slots, nullaries))
        term = list(z)
        for j, a in chosen.items():
            term[1 + phi[j]] = a
        kept = tuple(phi[j] for j in range(key.arity) if j not in chosen)
        return witness.inject(remove_slots(key, slots), kept, dec.slot_colors, {tuple(term): 1})

    return NullaryRightModule(sequence, substitute)


def _constant_map(source: BaseObject, target: BaseObject) -> BaseMorphism:
    if source.variant != Variant.FINSET:
        return zero_morphism(source, target)
    if not target.size:
        return _from_empty(source, target)
    first = target.labels[0]
    return from_images(source, target, lambda label: {first: 1})


def compute1_check(p: Operad, x: OAlgebra, n: int, color: Color, corrupt_q_map: bool = False) -> CheckReport:
    """
    Compare the raw relative composite ``((P_n o O)_{<=n-1} o_O X)(color)``
    with ``L``, and the two routes to ``U``.

    With ``corrupt_q_map`` the map ``L -> U`` is replaced by a constant map.
    """
    _require_arity(p, n)
    report = CheckReport(f"L of {p.name} on {x.name} at {color}", n)
    witness = nullary_substitutions(p, n)
    module = truncated_substitution_module(p, witness, n)
    raw = relative_compose(module, x.nullary_operad, x, out_arity_bound=n - 1)
    t, l, u, q_objects = attaching_objects(p, x, color, n)
    keys = raw.orbits[color]
    cover = raw.covers[color].object

    def split(label):
        key = keys[label[0]]
        r_label, xs = label[1][0], label[1][1:]
        dec, phi, z = _labeled_term(witness, key, r_label)
        inside = {phi[j]: xs[j] for j in range(len(xs))}
        return dec.outer_orbit(), z, inside

    def to_l(label) -> Vector:
        outer, z, inside = split(label)
        subset = tuple(sorted(inside))
        values = tuple(inside.get(s, z[1 + s]) for s in range(outer.arity))
        q_class = q_objects[outer].class_of(subset, values)
        return l.class_of(outer, {(z[0], q): c for q, c in q_class.items()})

    def to_u(label) -> Vector:
        outer, z, inside = split(label)
        vectors = [
            {inside[s]: 1} if s in inside else x.basepoint(c).image_vector(z[1 + s])
            for s, c in enumerate(outer.inputs)
        ]
        return u.class_of(outer, {(z[0], xs): c for xs, c in _tensor_vectors(vectors).items()})

    report.tick("well defined")
    try:
        comparison = raw.quotients[color].descend(from_images(cover, l.object, to_l), check=True)
        raw_to_u = raw.quotients[color].descend(from_images(cover, u.object, to_u), check=True)
    except StructureMismatch as e:
        report.fail("well defined", f"{color}: {e}")
        return report
    report.tick("isomorphism")
    if not is_isomorphism(comparison):
        report.fail("isomorphism", f"{color}: raw composite {raw.object(color).size}, L {l.object.size}")
    if corrupt_q_map:
        l_to_u = _constant_map(l.object, u.object)
    else:
        l_to_u = l.descend(
            u.object,
            lambda key, label, q: u.class_of(
                key, {(label, xs): c for xs, c in q_objects[key].map.image_vector(q).items()}
            ),
        )
    report.tick("corner")
    found = morphisms_equal(compose_maps(l_to_u, comparison), raw_to_u)
    if found is not None:
        # quotient labels are cover representatives (summand, term)
        report.fail("corner", f"orbit {keys[found[0][0]]}: maps to U differ at {found[0]!r}")
    logger.info(f"L of {p.name} at {color}, n={n}: {'ok' if report.passed else report.first_witness()}")
    return report


# Cobase change


def compute2_check(p: Operad, x: OAlgebra, n: int, color: Color, corrupt_cobase: bool = False) -> CheckReport:
    """
    Recompute ``T`` and ``U`` as composites with the nullary parts of ``P``
    and ``X``, and identify ``R+_n`` with ``P_0(color) +_T U``.

    With ``corrupt_cobase`` the cobase change is taken along ``T -> U + U``.
    """
    _require_arity(p, n)
    report = CheckReport(f"R maps of {p.name} on {x.name} at {color}", n)
    square = free_algebra_filtration(p, x, n)[-1].squares[color]
    top = OrbitSignature(color, ())
    witness = nullary_substitutions(p, n)
    carriers = {OrbitSignature(c, ()): x.carrier(c) for c in p.colors}
    x_witness = compose(arity_part(p.sequence, n), sequence_from_objects(p.colors, p.variant, carriers, 0))
    t_raw, u_raw = _entry_object(witness, top), _entry_object(x_witness, top)

    def injected(w: ComposeWitness):
        return lambda key, label, values: w.inject(top, (), key.inputs, {(label,) + tuple(values): 1})

    t_to_raw = square.t.descend(t_raw, injected(witness))
    u_to_raw = square.u.descend(u_raw, injected(x_witness))
    for name, m in (("T", t_to_raw), ("U", u_to_raw)):
        report.tick("isomorphism")
        if not is_isomorphism(m):
            report.fail("isomorphism", f"{name} at {color}: {m.source.size} vs {m.target.size}")
    raw_to_nullary = substitution_map(p, witness, top)
    report.tick("nullary leg")
    found = morphisms_equal(compose_maps(raw_to_nullary, t_to_raw), square.t_to_nullary)
    if found is not None:
        report.fail("nullary leg", f"{color}: differs at {found[0]!r}")

    def basepoints(contribution, g, z):
        vectors = [x.basepoint(c).image_vector(a) for c, a in zip(contribution.dec.slot_colors, z[1:])]
        result: Vector = {}
        for xs, c in _tensor_vectors(vectors).items():
            add_into(result, x_witness.inject(top, (), contribution.dec.slot_colors, {(z[0],) + xs: 1}), c)
        return result

    t_to_u = witness.descend(top, u_raw, basepoints, check=True)
    if corrupt_cobase:
        doubled = coproduct([u_raw, u_raw])
        t_to_u, u_to_raw = compose_maps(doubled.injections[0], t_to_u), compose_maps(doubled.injections[0], u_to_raw)
    cobase = pushout(raw_to_nullary, t_to_u)
    u_leg = compose_maps(cobase.leg_c, u_to_raw)
    report.tick("cobase change")
    try:
        r_minus_map = square.r_minus.induced(cobase.leg_b, compose_maps(u_leg, square.l_to_u), check=True)
        comparison = square.r_plus.induced(r_minus_map, u_leg, check=True)
    except StructureMismatch as e:
        report.fail("cobase change", f"{color}: {e}")
        return report
    if not is_isomorphism(comparison):
        sizes = f"R+ has size {square.r_plus.object.size}, cobase change {cobase.object.size}"
        report.fail("cobase change", f"{color}: {sizes}")
    report.tick("r map")
    found = morphisms_equal(compose_maps(comparison, square.r_map), r_minus_map)
    if found is not None:
        report.fail("r map", f"{color}: differs at {found[0]!r}")
    logger.info(f"R maps of {p.name} at {color}, n={n}: {'ok' if report.passed else report.first_witness()}")
    return report


def r_maps(p: Operad, x: OAlgebra, n: int) -> Dict[Color, BaseMorphism]:
    """``R-_n(X) -> R+_n(X)`` at every color."""
    _require_arity(p, n)
    stage = free_algebra_filtration(p, x, n)[-1]
    return {color: square.r_map for color, square in stage.squares.items()}
