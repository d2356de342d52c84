"""Library algebras: monoids over com and ass, structure constants over VectQ."""

import logging
from functools import reduce
from typing import Dict, Optional, Sequence, Tuple

from operadkit.basecat import Label, Vector, finset, vectq
from operadkit.config.constants import Variant
from operadkit.errors import MultiColoredInput, StructureMismatch, WrongVariant
from operadkit.operads import COM_LABEL, Operad
from operadkit.algmod.algebra import Algebra, multilinear

logger = logging.getLogger(__name__)


def reading_order(label: Label, arity: int) -> Tuple[int, ...]:
    """Order in which an operation of com or ass reads its inputs."""
    if label == COM_LABEL:
        return tuple(range(arity))
    return tuple(label)


def _single_color(p: Operad) -> str:
    if len(p.colors) != 1:
        raise MultiColoredInput(f"{p.name} is not single-colored")
    return p.colors.labels[0]


def monoid_algebra(
    p: Operad,
    elements: Sequence[Label],
    table: Dict[Tuple[Label, Label], Label],
    unit: Optional[Label] = None,
    name: str = "M",
) -> Algebra:
    """
    A FinSet monoid (commutative for com) as an algebra: an operation
    multiplies its inputs in reading order, arity 0 gives the unit.

    Raises:
        StructureMismatch: If the operad has nullary operations and no unit is given
    """
    color = _single_color(p)
    if p.variant != Variant.FINSET:
        raise WrongVariant("Monoid tables describe finset algebras")
    if p.nullary(color).size and unit is None:
        raise StructureMismatch(f"{p.name} has a nullary operation but the monoid has no unit")

    def action_fn(key, label, xs):
        if not xs:
            return {unit: 1}
        ordered = [xs[i] for i in reading_order(label, len(xs))]
        return {reduce(lambda a, b: table[(a, b)], ordered): 1}

    return Algebra(p, {color: finset(elements)}, action_fn, name=name)


def cyclic_monoid(p: Operad, order: int, name: Optional[str] = None) -> Algebra:
    """``Z/order`` under addition."""
    elements = list(range(order))
    table = {(a, b): (a + b) % order for a in elements for b in elements}
    return monoid_algebra(p, elements, table, unit=0, name=name or f"Z{order}")


def truncated_word_monoid(p: Operad, length: int, name: Optional[str] = None) -> Algebra:
    """Powers ``x^0 ... x^length`` of one generator, products capped at ``length``."""
    elements = list(range(length + 1))
    table = {(a, b): min(a + b, length) for a in elements for b in elements}
    return monoid_algebra(p, elements, table, unit=0, name=name or f"N<={length}")


def structure_constant_algebra(
    p: Operad,
    dim: int,
    constants: Dict[Tuple[int, int], Vector],
    unit: Optional[Vector] = None,
    name: str = "A",
) -> Algebra:
    """
    A finite-dimensional associative algebra over a linear ``ass``: basis
    ``e0 ... e{dim-1}`` with ``e_i e_j = constants[(i, j)]`` given on indices.

    Raises:
        WrongVariant: If ``p`` is not over VectQ
    """
    color = _single_color(p)
    if p.variant != Variant.VECTQ:
        raise WrongVariant("Structure constants describe vectq algebras")
    carrier = vectq(dim)
    labels = carrier.labels
    index = {label: i for i, label in enumerate(labels)}
    if p.nullary(color).size and unit is None:
        raise StructureMismatch(f"{p.name} has a nullary operation but no unit is given")

    def product_of(a: Label, b: Label) -> Vector:
        return {labels[k]: c for k, c in constants.get((index[a], index[b]), {}).items()}

    def action_fn(key, label, xs):
        if not xs:
            return {labels[k]: c for k, c in unit.items()}
        ordered = [xs[i] for i in reading_order(label, len(xs))]
        current: Vector = {ordered[0]: 1}
        for x in ordered[1:]:
            current = multilinear(lambda pair: product_of(*pair), [current, {x: 1}])
        return current

    return Algebra(p, {color: carrier}, action_fn, name=name)


def dual_numbers(p: Operad, unital: bool = True) -> Algebra:
    """``Q[e]/e^2`` (unital) or the square-zero line (non-unital)."""
    if unital:
        constants = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
        return structure_constant_algebra(p, 2, constants, unit={0: 1}, name="Q[e]")
    return structure_constant_algebra(p, 1, {}, name="Qe")


def matrix_algebra(p: Operad, size: int = 2) -> Algebra:
    """Matrix units ``E_ij`` of ``M_size``, indexed row-major."""
    constants = {}
    for i in range(size):
        for j in range(size):
            for k in range(size):
                constants[(i * size + j, j * size + k)] = {i * size + k: 1}
    unit = {i * size + i: 1 for i in range(size)}
    has_unit = bool(p.nullary(_single_color(p)).size)
    return structure_constant_algebra(p, size * size, constants, unit=unit if has_unit else None, name=f"M{size}")


def colored_cyclic_monoid(p: Operad, order: int, name: Optional[str] = None) -> Algebra:
    """
    ``Z/order`` on every color of an operad whose operations are those of com
    or ass, such as ``mcom`` and profile operads: each operation adds its
    inputs whatever their colors.

    Raises:
        StructureMismatch: If an operation is not a com or ass label
    """
    if p.variant != Variant.FINSET:
        raise WrongVariant("Monoid tables describe finset algebras")
    for key in p.orbits():
        for label in p.labels(key):
            if label != COM_LABEL and (not isinstance(label, tuple) or sorted(label) != list(range(key.arity))):
                raise StructureMismatch(f"{label!r} at {key} is not a com or ass operation")
    elements = list(range(order))

    def action_fn(key, label, xs):
        return {sum(xs) % order: 1}

    carriers = {color: finset(elements) for color in p.colors}
    return Algebra(p, carriers, action_fn, name=name or f"Z{order}[{','.join(p.colors)}]")
