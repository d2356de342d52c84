"""Modules over an algebra and their translation to functors out of the enveloping category."""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterator, Optional, Sequence, Tuple

from operadkit.basecat import BaseObject, Label, Vector, add_into
from operadkit.basecat.perms import act_on_tuple
from operadkit.errors import StructureMismatch
from operadkit.operads import (
    CheckReport,
    EnrichedCategory,
    Operad,
    basis,
    category_operad,
    inner_choices,
    offsets,
    outer_elements,
    underlying_category,
)
from operadkit.symseq import Color, OrbitSignature, sorting_perm
from operadkit.algmod.algebra import Algebra, multilinear
from operadkit.algmod.envelope import Envelope

logger = logging.getLogger(__name__)

ModuleActionFn = Callable[[OrbitSignature, int, Label, Tuple[Label, ...]], Vector]


@dataclass(frozen=True, eq=False)
class ModuleOverAlgebra:
    """
    A module over ``algebra``: carriers ``M(c)`` and actions
    ``P(w) (x) A(w_1) (x) .. M(w_k) .. (x) A(w_n) -> M(w_*)``.

    ``action_fn(key, k, p, xs)`` has the module element at ``xs[k]``.
    """

    algebra: Algebra
    carriers: Dict[Color, BaseObject]
    action_fn: ModuleActionFn
    name: str = "M"
    _cache: Dict[tuple, Vector] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for color in self.operad.colors:
            if color not in self.carriers:
                raise StructureMismatch(f"Module {self.name} has no carrier at {color}")

    @property
    def operad(self) -> Operad:
        return self.algebra.operad

    def carrier(self, color: Color) -> BaseObject:
        return self.carriers[color]

    def act_basis(self, key: OrbitSignature, k: int, p: Label, xs: Sequence[Label]) -> Vector:
        cache_key = (key, k, p, tuple(xs))
        if cache_key not in self._cache:
            self._cache[cache_key] = {x: c for x, c in self.action_fn(key, k, p, tuple(xs)).items() if c != 0}
        return dict(self._cache[cache_key])

    def act(self, key: OrbitSignature, k: int, p: Vector, xs: Sequence[Vector]) -> Vector:
        result: Vector = {}
        for label, coeff in p.items():
            add_into(result, multilinear(lambda combo, q=label: self.act_basis(key, k, q, combo), xs), coeff)
        return result

    def act_labeled(self, out_color: Color, slots: Sequence[Color], k: int, p: Vector, xs: Sequence[Vector]) -> Vector:
        """Act by an operation labeled at ``slots`` with the module element in slot ``k``."""
        slots = tuple(slots)
        s_u = sorting_perm(self.operad.colors, slots)
        key = OrbitSignature(out_color, act_on_tuple(s_u, slots))
        return self.act(key, s_u[k], p, act_on_tuple(s_u, tuple(xs)))


def module_from_algebra(alg: Algebra) -> ModuleOverAlgebra:
    """``A`` as a module over itself."""
    return ModuleOverAlgebra(alg, dict(alg.carriers), lambda key, k, p, xs: alg.act_basis(key, p, xs), name=alg.name)


def _mixed_tuples(module: ModuleOverAlgebra, colors: Sequence[Color], k: int) -> Iterator[Tuple[Label, ...]]:
    pools = [
        module.carrier(c).labels if j == k else module.algebra.carrier(c).labels for j, c in enumerate(colors)
    ]
    return product(*pools)


def _check_module_units(module: ModuleOverAlgebra, report: CheckReport) -> None:
    p = module.operad
    for color in p.colors:
        for m in module.carrier(color).labels:
            result = module.act(p.unit_key(color), 0, p.units[color], [basis(m)])
            report.expect("unit", result, basis(m), f"1_{color} on {m!r}")


def _check_module_equivariance(module: ModuleOverAlgebra, bound: int, report: CheckReport) -> None:
    p = module.operad
    for key, label in outer_elements(p, bound):
        for k in range(key.arity):
            for xs in _mixed_tuples(module, key.inputs, k):
                base = module.act_basis(key, k, label, xs)
                for sigma in key.aut_generators:
                    moved_p = p.act(key, sigma, basis(label))
                    moved_xs = [basis(x) for x in act_on_tuple(sigma, xs)]
                    result = module.act(key, sigma[k], moved_p, moved_xs)
                    report.expect("equivariance", result, base, f"{sigma} on {label!r} at {key}, slot {k}, {xs}")


def _check_module_associativity(module: ModuleOverAlgebra, bound: int, report: CheckReport) -> None:
    p, alg = module.operad, module.algebra
    for outer, label in outer_elements(p, bound):
        if not outer.arity:
            continue
        for inner in inner_choices(p, outer.inputs, bound):
            composite = p.gamma(outer, label, inner)
            concat = tuple(c for orbit, _ in inner for c in orbit.inputs)
            sizes = [orbit.arity for orbit, _ in inner]
            starts = offsets(sizes)
            for i, (orbit_i, q_i) in enumerate(inner):
                for t in range(orbit_i.arity):
                    k = starts[i] + t
                    for xs in _mixed_tuples(module, concat, k):
                        left = module.act_labeled(outer.out_color, concat, k, composite, [basis(x) for x in xs])
                        partial = []
                        for j, (orbit, q) in enumerate(inner):
                            block = xs[starts[j]:starts[j] + sizes[j]]
                            if j == i:
                                partial.append(module.act_basis(orbit, t, q, block))
                            else:
                                partial.append(alg.act_basis(orbit, q, block))
                        right = module.act(outer, i, basis(label), partial)
                        report.expect(
                            "associativity", left, right, f"{label!r} at {outer} with {inner}, slot {k}, {xs}"
                        )


def check_module(module: ModuleOverAlgebra, bound: Optional[int] = None) -> CheckReport:
    """Unit, equivariance and associativity on basis elements up to ``bound``."""
    p = module.operad
    bound = p.declared_bound if bound is None else min(bound, p.declared_bound)
    report = CheckReport(module.name, bound)
    try:
        _check_module_units(module, report)
        _check_module_equivariance(module, bound, report)
        _check_module_associativity(module, bound, report)
    except StructureMismatch as e:
        report.fail("well-defined", str(e))
    logger.debug(f"Checked module {module.name}: passed={report.passed}")
    return report


# Functors out of the enveloping category


def functor_operad(envelope: Envelope) -> Tuple[EnrichedCategory, Operad]:
    """The enveloping category and the operad whose algebras are its functors."""
    category = underlying_category(envelope.result)
    return category, category_operad(category)


def module_to_functor(envelope: Envelope, module: ModuleOverAlgebra, operad: Optional[Operad] = None) -> Algebra:
    """
    A module as an enriched functor: a morphism of ``P^A(b; a)`` represented
    by ``p (x) a_1 ...`` acts with the module element in its first slot.
    """
    if module.algebra is not envelope.algebra:
        raise StructureMismatch(f"{module.name} is not a module over {envelope.algebra.name}")
    target = operad or functor_operad(envelope)[1]

    def action_fn(key, label, xs):
        extension, p0, a = envelope.representative(key, label)
        vectors = [basis(xs[0])] + [basis(x) for x in a]
        return module.act_labeled(key.out_color, key.inputs + extension, 0, basis(p0), vectors)

    return Algebra(target, dict(module.carriers), action_fn, name=f"F({module.name})")


def _to_front(k: int, n: int) -> Tuple[int, ...]:
    """Moves slot ``k`` to position 0 keeping the order of the others."""
    return tuple(0 if j == k else (j + 1 if j < k else j) for j in range(n))


def functor_to_module(envelope: Envelope, functor: Algebra) -> ModuleOverAlgebra:
    """An enriched functor as a module over the algebra of ``envelope``."""
    p = envelope.operad

    def action_fn(key, k, label, xs):
        front = _to_front(k, key.arity)
        moved = p.transport(key.out_color, key.inputs, front, basis(label))
        others = tuple(c for j, c in enumerate(key.inputs) if j != k)
        a = tuple(x for j, x in enumerate(xs) if j != k)
        hom_key = OrbitSignature(key.out_color, (key.inputs[k],))
        element = envelope.class_of(hom_key, others, moved, a)
        if not element:
            return {}
        return functor.act(hom_key, element, [basis(xs[k])])

    return ModuleOverAlgebra(envelope.algebra, dict(functor.carriers), action_fn, name=f"M({functor.name})")


def modules_agree(a: ModuleOverAlgebra, b: ModuleOverAlgebra, bound: Optional[int] = None) -> Optional[str]:
    """None when ``a`` and ``b`` have the same actions up to ``bound``."""
    p = a.operad
    bound = p.declared_bound if bound is None else bound
    for key, label in outer_elements(p, bound):
        for k in range(key.arity):
            for xs in _mixed_tuples(a, key.inputs, k):
                left, right = a.act_basis(key, k, label, xs), b.act_basis(key, k, label, xs)
                if left != right:
                    return f"{label!r} at {key}, slot {k}, {xs}: {left!r} != {right!r}"
    return None


def corrupted_module(module: ModuleOverAlgebra) -> ModuleOverAlgebra:
    """The module with every action of arity two or more sent to zero."""

    def action_fn(key, k, label, xs):
        if key.arity >= 2:
            return {}
        return module.act_basis(key, k, label, xs)

    return ModuleOverAlgebra(module.algebra, dict(module.carriers), action_fn, name=f"{module.name}~")
