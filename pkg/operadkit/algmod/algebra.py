"""Algebras over operads, their maps, restriction and small enumerations."""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    Label,
    Vector,
    add_into,
    compose,
    from_function,
    from_images,
    identity,
    morphisms_equal,
    same_object,
    tensor_many,
)
from operadkit.basecat.perms import act_on_tuple
from operadkit.config.constants import Variant
from operadkit.errors import BoundsTooTight, InvalidAlgebra, StructureMismatch, WrongVariant
from operadkit.operads import CheckReport, Operad, OperadMap, basis, inner_choices, offsets, outer_elements
from operadkit.symseq import Color, OrbitSignature, sorting_perm

logger = logging.getLogger(__name__)

ActionFn = Callable[[OrbitSignature, Label, Tuple[Label, ...]], Vector]

DEFAULT_ENUMERATION_LIMIT = 1 << 16


def multilinear(fn: Callable[[Tuple[Label, ...]], Vector], vectors: Sequence[Vector]) -> Vector:
    """Extend a function of basis tuples to tuples of vectors."""
    result: Vector = {}
    for combo in product(*[list(v.items()) for v in vectors]):
        coeff = 1
        for _, c in combo:
            coeff *= c
        add_into(result, fn(tuple(label for label, _ in combo)), coeff)
    return result


@dataclass(frozen=True, eq=False)
class Algebra:
    """
    An algebra over ``operad`` with one carrier per color.

    ``action_fn(key, p, xs)`` evaluates a basis operation ``p`` of the
    canonical orbit ``key`` on basis elements ``xs[i]`` of
    ``carriers[key.inputs[i]]``.
    """

    operad: Operad
    carriers: Dict[Color, BaseObject]
    action_fn: ActionFn
    name: str = "A"
    _cache: Dict[tuple, Vector] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for color in self.operad.colors:
            if color not in self.carriers:
                raise StructureMismatch(f"Algebra {self.name} has no carrier at {color}")
            if self.carriers[color].variant != self.operad.variant:
                raise WrongVariant(f"Carrier of {color} is not over {self.operad.variant.value}")

    @property
    def variant(self) -> Variant:
        return self.operad.variant

    def carrier(self, color: Color) -> BaseObject:
        return self.carriers[color]

    def act_basis(self, key: OrbitSignature, p: Label, xs: Sequence[Label]) -> Vector:
        cache_key = (key, p, tuple(xs))
        if cache_key not in self._cache:
            self._cache[cache_key] = {x: c for x, c in self.action_fn(key, p, tuple(xs)).items() if c != 0}
        return dict(self._cache[cache_key])

    def act(self, key: OrbitSignature, p: Vector, xs: Sequence[Vector]) -> Vector:
        result: Vector = {}
        for label, coeff in p.items():
            add_into(result, multilinear(lambda combo, q=label: self.act_basis(key, q, combo), xs), coeff)
        return result

    def act_labeled(self, out_color: Color, slots: Sequence[Color], p: Vector, xs: Sequence[Vector]) -> Vector:
        """Act by the canonical vector ``p`` of an operation labeled at ``slots``."""
        slots = tuple(slots)
        s_u = sorting_perm(self.operad.colors, slots)
        key = OrbitSignature(out_color, act_on_tuple(s_u, slots))
        return self.act(key, p, act_on_tuple(s_u, xs))

    def action_map(self, key: OrbitSignature) -> BaseMorphism:
        """``P(w) (x) A(w_1) (x) ... -> A(w_*)``."""
        factors = [self.operad.object(key)] + [self.carrier(c) for c in key.inputs]
        source = tensor_many(factors, self.variant)
        return from_images(source, self.carrier(key.out_color), lambda z: self.act_basis(key, z[0], z[1:]))

    def sizes(self) -> Dict[Color, int]:
        return {color: self.carrier(color).size for color in self.operad.colors}


def carrier_tuples(alg: Algebra, colors: Sequence[Color]) -> Iterator[Tuple[Label, ...]]:
    return product(*[alg.carrier(c).labels for c in colors])


# Checks


def _check_algebra_units(alg: Algebra, report: CheckReport) -> None:
    p = alg.operad
    for color in p.colors:
        for x in alg.carrier(color).labels:
            result = alg.act(p.unit_key(color), p.units[color], [basis(x)])
            report.expect("unit", result, basis(x), f"1_{color} on {x!r}")


def _check_algebra_equivariance(alg: Algebra, bound: int, report: CheckReport) -> None:
    p = alg.operad
    for key, label in outer_elements(p, bound):
        for xs in carrier_tuples(alg, key.inputs):
            base = alg.act_basis(key, label, xs)
            for sigma in key.aut_generators:
                moved = alg.act(key, p.act(key, sigma, basis(label)), [basis(x) for x in act_on_tuple(sigma, xs)])
                report.expect("equivariance", moved, base, f"{sigma} on {label!r} at {key} with {xs}")


def _check_algebra_associativity(alg: Algebra, bound: int, report: CheckReport) -> None:
    p = alg.operad
    for outer, label in outer_elements(p, bound):
        for inner in inner_choices(p, outer.inputs, bound):
            composite = p.gamma(outer, label, inner)
            concat = tuple(c for orbit, _ in inner for c in orbit.inputs)
            sizes = [orbit.arity for orbit, _ in inner]
            starts = offsets(sizes)
            for xs in carrier_tuples(alg, concat):
                left = alg.act_labeled(outer.out_color, concat, composite, [basis(x) for x in xs])
                partial = [
                    alg.act_basis(orbit, q, xs[starts[i]:starts[i] + sizes[i]]) for i, (orbit, q) in enumerate(inner)
                ]
                right = alg.act(outer, basis(label), partial)
                report.expect("associativity", left, right, f"{label!r} at {outer} with {inner} on {xs}")


def check_algebra(alg: Algebra, bound: Optional[int] = None) -> CheckReport:
    """Unit, equivariance and associativity on basis elements up to ``bound``."""
    bound = alg.operad.declared_bound if bound is None else min(bound, alg.operad.declared_bound)
    report = CheckReport(alg.name, bound)
    try:
        _check_algebra_units(alg, report)
        _check_algebra_equivariance(alg, bound, report)
        _check_algebra_associativity(alg, bound, report)
    except StructureMismatch as e:
        report.fail("well-defined", str(e))
    logger.debug(f"Checked algebra {alg.name}: passed={report.passed}")
    return report


def validated(alg: Algebra, bound: Optional[int] = None) -> Algebra:
    """
    Raises:
        InvalidAlgebra: If ``alg`` fails a law
    """
    report = check_algebra(alg, bound)
    if not report.passed:
        raise InvalidAlgebra(f"{alg.name} is not an algebra: {report.first_witness()}")
    return alg


# Initial algebra and restriction


def initial_algebra(p: Operad) -> Algebra:
    """``P_0`` acted on by composition."""
    carriers = {color: p.nullary(color) for color in p.colors}

    def action_fn(key: OrbitSignature, label: Label, xs: Tuple[Label, ...]) -> Vector:
        inner = [(OrbitSignature(c, ()), x) for c, x in zip(key.inputs, xs)]
        return p.gamma(key, label, inner)

    return Algebra(p, carriers, action_fn, name=f"{p.name}_0")


def restrict_algebra(alg: Algebra, f: OperadMap) -> Algebra:
    """The algebra ``f^* A`` over the source of ``f``."""
    if f.target is not alg.operad:
        raise StructureMismatch(f"{f.name} does not land in the operad of {alg.name}")

    def action_fn(key: OrbitSignature, label: Label, xs: Tuple[Label, ...]) -> Vector:
        return alg.act(key, f.apply(key, basis(label)), [basis(x) for x in xs])

    return Algebra(f.source, dict(alg.carriers), action_fn, name=f"{f.name}*{alg.name}")


def algebras_agree(a: Algebra, b: Algebra, bound: Optional[int] = None) -> Optional[str]:
    """None when ``a`` and ``b`` have equal carriers and actions up to ``bound``."""
    p = a.operad
    bound = p.declared_bound if bound is None else bound
    for color in p.colors:
        if not same_object(a.carrier(color), b.carrier(color)):
            return f"carriers differ at {color}"
    for key, label in outer_elements(p, bound):
        for xs in carrier_tuples(a, key.inputs):
            left, right = a.act_basis(key, label, xs), b.act_basis(key, label, xs)
            if left != right:
                return f"{label!r} at {key} on {xs}: {left!r} != {right!r}"
    return None


# Maps


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    source: Algebra
    target: Algebra
    components: Dict[Color, BaseMorphism]

    def apply(self, color: Color, vector: Vector) -> Vector:
        return self.components[color].apply(vector)


def check_algebra_map(f: AlgebraMap, bound: Optional[int] = None) -> CheckReport:
    """``f`` commutes with every action up to ``bound``."""
    p = f.source.operad
    bound = p.declared_bound if bound is None else min(bound, p.declared_bound)
    report = CheckReport(f"{f.source.name}->{f.target.name}", bound)
    for key, label in outer_elements(p, bound):
        for xs in carrier_tuples(f.source, key.inputs):
            left = f.apply(key.out_color, f.source.act_basis(key, label, xs))
            right = f.target.act(key, basis(label), [f.apply(c, basis(x)) for c, x in zip(key.inputs, xs)])
            report.expect("homomorphism", left, right, f"{label!r} at {key} on {xs}")
    return report


def algebra_maps(source: Algebra, target: Algebra, bound: Optional[int] = None) -> List[AlgebraMap]:
    """
    Every algebra map between FinSet algebras, by exhaustive search.

    Raises:
        WrongVariant: If the algebras are not over FinSet
    """
    if source.variant != Variant.FINSET:
        raise WrongVariant("Algebra maps are enumerated over finset only")
    colors = list(source.operad.colors)
    per_color = []
    for color in colors:
        labels = source.carrier(color).labels
        images = target.carrier(color).labels
        per_color.append([dict(zip(labels, choice)) for choice in product(images, repeat=len(labels))])
    found = []
    for tables in product(*per_color):
        components = {
            color: from_function(source.carrier(color), target.carrier(color), table.__getitem__)
            for color, table in zip(colors, tables)
        }
        candidate = AlgebraMap(source, target, components)
        if check_algebra_map(candidate, bound).passed:
            found.append(candidate)
    return found


def identity_algebra_map(alg: Algebra) -> AlgebraMap:
    return AlgebraMap(alg, alg, {color: identity(alg.carrier(color)) for color in alg.operad.colors})


def compose_algebra_maps(g: AlgebraMap, f: AlgebraMap) -> AlgebraMap:
    components = {color: compose(g.components[color], f.components[color]) for color in f.components}
    return AlgebraMap(f.source, g.target, components)


def algebra_maps_equal(f: AlgebraMap, g: AlgebraMap) -> bool:
    return all(morphisms_equal(f.components[c], g.components[c]) is None for c in f.components)


# Augmentation


@dataclass(frozen=True, eq=False)
class AugmentedAlgebra:
    """An algebra with a map of algebras to the initial algebra."""

    algebra: Algebra
    augmentation: AlgebraMap

    def check(self, bound: Optional[int] = None) -> CheckReport:
        report = check_algebra(self.algebra, bound)
        return report.merge(check_algebra_map(self.augmentation, bound))


def augment(alg: Algebra, components: Dict[Color, BaseMorphism]) -> AugmentedAlgebra:
    return AugmentedAlgebra(alg, AlgebraMap(alg, initial_algebra(alg.operad), components))


# Exhaustive enumeration


def _cells(p: Operad, carriers: Dict[Color, BaseObject], bound: int) -> List[Tuple[OrbitSignature, Label, tuple]]:
    cells = []
    for key, label in outer_elements(p, bound):
        if key.arity == 1 and basis(label) == p.units[key.out_color]:
            continue
        for xs in product(*[carriers[c].labels for c in key.inputs]):
            cells.append((key, label, xs))
    return cells


def enumerate_algebras(
    p: Operad,
    carriers: Dict[Color, BaseObject],
    bound: Optional[int] = None,
    limit: int = DEFAULT_ENUMERATION_LIMIT,
) -> List[Algebra]:
    """
    All algebra structures on FinSet carriers, by exhaustive search over
    action tables.

    Raises:
        WrongVariant: If ``p`` is not over FinSet
        BoundsTooTight: If more than ``limit`` tables would be tried
    """
    if p.variant != Variant.FINSET:
        raise WrongVariant("Algebra structures are enumerated over finset only")
    bound = p.declared_bound if bound is None else min(bound, p.declared_bound)
    cells = _cells(p, carriers, bound)
    choices = [carriers[key.out_color].labels for key, _, _ in cells]
    total = 1
    for options in choices:
        total *= len(options)
    if total > limit:
        raise BoundsTooTight(f"{total} candidate action tables exceed the limit {limit}")
    found = []
    for values in product(*choices):
        table = {cell: value for cell, value in zip(cells, values)}

        def action_fn(key, label, xs, table=table):
            if (key, label, xs) in table:
                return {table[(key, label, xs)]: 1}
            if key.arity == 1 and basis(label) == p.units[key.out_color]:
                return {xs[0]: 1}
            return {}

        candidate = Algebra(p, dict(carriers), action_fn, name=f"{p.name}-alg{len(found)}")
        if check_algebra(candidate, bound).passed:
            found.append(candidate)
    logger.info(f"Found {len(found)} {p.name}-algebra structures among {total} tables")
    return found


def action_table(alg: Algebra, bound: Optional[int] = None) -> Dict[tuple, Vector]:
    """Every basis action value up to ``bound``."""
    p = alg.operad
    bound = p.declared_bound if bound is None else bound
    return {
        (key, label, xs): alg.act_basis(key, label, xs)
        for key, label in outer_elements(p, bound)
        for xs in carrier_tuples(alg, key.inputs)
    }
