"""The attaching object ``Q(X, w)``: a colimit over proper subsets of slots."""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    Coproduct,
    GroupAction,
    IteratedPushoutProduct,
    Label,
    Quotient,
    Vector,
    add_into,
    compose,
    coproduct,
    from_images,
    is_isomorphism,
    iterated_pushout_product,
    morphisms_equal,
    quotient_by_relations,
    tensor_many,
)
from operadkit.basecat.perms import Perm, act_on_tuple
from operadkit.errors import StructureMismatch
from operadkit.symseq import Color, OrbitSignature

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


def proper_subsets(n: int) -> List[Subset]:
    """Proper subsets of ``range(n)``, by size then lexicographically."""
    return [subset for size in range(n) for subset in combinations(range(n), size)]


@dataclass(frozen=True)
class QObject:
    """
    ``Q(X, w)`` with its map to ``X(w_1) (x) ... (x) X(w_n)``.

    The cover is the coproduct over proper subsets ``I`` of
    ``F(I) = (x)_j (X(w_j) if j in I else P_0(w_j))``; cover labels are
    ``(index of I, t)``.
    """

    key: OrbitSignature
    subsets: Tuple[Subset, ...]
    cover: Coproduct
    quotient: Quotient
    map: BaseMorphism
    action: GroupAction

    @property
    def object(self) -> BaseObject:
        return self.quotient.object

    @property
    def target(self) -> BaseObject:
        return self.map.target

    def subset_of(self, label: Label) -> Subset:
        return self.subsets[label[0]]

    def component(self, subset: Subset) -> BaseMorphism:
        """``F(I) -> Q``."""
        index = self.subsets.index(tuple(subset))
        return compose(self.quotient.projection, self.cover.injections[index])

    def class_of(self, subset: Subset, t: Tuple[Label, ...]) -> Vector:
        return self.quotient.project({(self.subsets.index(tuple(subset)), tuple(t)): 1})


def _apply_basepoints(
    basepoints: Dict[Color, BaseMorphism], inputs: Sequence[Color], subset: Sequence[int], t: Sequence[Label]
) -> Vector:
    """The tensor ``t`` with basepoints applied outside ``subset``, as a flat vector."""
    inside = set(subset)
    result: Vector = {(): 1}
    for j, (color, label) in enumerate(zip(inputs, t)):
        factor = {label: 1} if j in inside else basepoints[color].image_vector(label)
        expanded: Vector = {}
        for prefix, c in result.items():
            for value, d in factor.items():
                add_into(expanded, {prefix + (value,): c * d})
        result = expanded
    return result


def q_object(basepoints: Dict[Color, BaseMorphism], key: OrbitSignature) -> QObject:
    """
    The colimit of ``F(I)`` over proper subsets ``I`` of the slots of ``key``,
    glued along ``I - {i} -> I`` by the basepoint at ``i``.

    Raises:
        StructureMismatch: If ``key`` has no inputs
    """
    n = key.arity
    if n < 1:
        raise StructureMismatch("Q(X, w) needs at least one slot")
    inputs = key.inputs
    nullaries = {c: basepoints[c].source for c in inputs}
    carriers = {c: basepoints[c].target for c in inputs}
    variant = basepoints[inputs[0]].variant
    subsets = proper_subsets(n)
    position = {subset: i for i, subset in enumerate(subsets)}

    def factor(subset: Subset) -> BaseObject:
        inside = set(subset)
        return tensor_many([carriers[c] if j in inside else nullaries[c] for j, c in enumerate(inputs)], variant)

    pieces = [factor(subset) for subset in subsets]
    cover = coproduct(pieces, variant)
    relations = []
    for subset in subsets:
        for i in subset:
            smaller = tuple(j for j in subset if j != i)
            source = pieces[position[smaller]]

            def glued(t, subset=subset, i=i):
                point = basepoints[inputs[i]].image_vector(t[i])
                return {(position[subset], t[:i] + (x,) + t[i + 1:]): c for x, c in point.items()}

            relations.append((cover.injections[position[smaller]], from_images(source, cover.object, glued)))
    quotient = quotient_by_relations(cover.object, relations)
    target = tensor_many([carriers[c] for c in inputs], variant)
    on_cover = from_images(
        cover.object, target, lambda label: _apply_basepoints(basepoints, inputs, subsets[label[0]], label[1])
    )
    corner = quotient.descend(on_cover, check=True)

    def moved(sigma: Perm) -> BaseMorphism:
        def image(label):
            subset = tuple(sorted(sigma[j] for j in subsets[label[0]]))
            return {(position[subset], act_on_tuple(sigma, label[1])): 1}

        return quotient.descend(compose(quotient.projection, from_images(cover.object, cover.object, image)))

    action = GroupAction(quotient.object, key.aut, key.aut_generators, {g: moved(g) for g in key.aut})
    logger.debug(f"Q at {key}: cover {cover.object.size}, object {quotient.object.size}")
    return QObject(key, tuple(subsets), cover, quotient, corner, action)


# Comparison with the iterated pushout-product


def _nest(labels: Sequence[Label]) -> Label:
    nested = labels[0]
    for label in labels[1:]:
        nested = (nested, label)
    return nested


def _nested_vector(basepoints, inputs, subset, t) -> Vector:
    return {_nest(flat): c for flat, c in _apply_basepoints(basepoints, inputs, subset, t).items()}


def _iota(pp: IteratedPushoutProduct, basepoints, inputs, subset: Subset, t: Tuple[Label, ...]) -> Vector:
    """Image of ``(I, t)`` in the object of the ``k``-th pushout-product, ``k = len(t) - 1``."""
    k = len(t) - 1
    if k == 0:
        return {t[0]: 1}
    stage = pp.stages[k - 1]
    if k in subset:
        head = _iota(pp, basepoints, inputs, tuple(j for j in subset if j != k), t[:k])
        return stage.leg_ad.apply({(h, t[k]): c for h, c in head.items()})
    head = _nested_vector(basepoints, inputs[:k], subset, t[:k])
    return stage.leg_bc.apply({(h, t[k]): c for h, c in head.items()})


@dataclass(frozen=True)
class QComparison:
    pushout_product: IteratedPushoutProduct
    map: BaseMorphism

    @property
    def is_isomorphism(self) -> bool:
        return is_isomorphism(self.map)


def compare_with_pushout_product(
    q: QObject, basepoints: Dict[Color, BaseMorphism]
) -> Tuple[QComparison, Optional[str]]:
    """
    The canonical map from ``Q(X, w)`` to the iterated pushout-product of
    the basepoints, and a failure description or None.
    """
    inputs = q.key.inputs
    pp = iterated_pushout_product([basepoints[c] for c in inputs])
    on_cover = from_images(
        q.cover.object, pp.object, lambda label: _iota(pp, basepoints, inputs, q.subsets[label[0]], label[1])
    )
    try:
        comparison = q.quotient.descend(on_cover, check=True)
    except StructureMismatch as e:
        return QComparison(pp, on_cover), f"not well defined on Q: {e}"
    result = QComparison(pp, comparison)
    if not result.is_isomorphism:
        return result, f"not an isomorphism: {q.object.size} vs {pp.object.size}"
    corner = compose(pp.flatten(), compose(pp.map, comparison))
    witness = morphisms_equal(corner, q.map)
    if witness is not None:
        return result, f"corner maps differ at {witness[0]!r}"
    return result, None
