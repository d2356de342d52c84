"""Finite colimits: quotients by relations, coequalizers, pushouts, pushout-products.

Every colimit here is computed by ``quotient_by_relations``: a target object
and parallel pairs of morphisms into it, identified elementwise. Quotient
basis elements are labeled by target labels (class representatives or a
complementary set of basis vectors), and each quotient carries a section so
that maps out of it are materialized as ``map . section``.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from sympy import Rational

from operadkit.basecat import linalg
from operadkit.basecat.objects import (
    ONE,
    BaseMorphism,
    BaseObject,
    Coproduct,
    Label,
    Vector,
    _build_differential,
    check_variants,
    compose,
    coproduct,
    from_function,
    from_images,
    identity,
    morphisms_equal,
    permute_factors,
    same_object,
    tensor,
    tensor_many,
    tensor_morphisms,
)
from operadkit.config.constants import Variant
from operadkit.errors import MixedVariant, NotParallel, SourceMismatch, StructureMismatch

logger = logging.getLogger(__name__)

Relation = Tuple[BaseMorphism, BaseMorphism]


@dataclass(frozen=True)
class Quotient:
    """A quotient object with its projection and a section of it."""

    object: BaseObject
    projection: BaseMorphism
    section: BaseMorphism

    @property
    def cover(self) -> BaseObject:
        return self.projection.source

    def descend(self, m: BaseMorphism, check: bool = False) -> BaseMorphism:
        """
        The map out of the quotient induced by ``m`` on the cover.

        Args:
            m: Morphism out of the cover that is constant on classes
            check: Verify that ``m`` factors through the projection

        Raises:
            StructureMismatch: If ``check`` is set and ``m`` does not factor
        """
        if not same_object(m.source, self.cover):
            raise NotParallel("Descended map must start at the cover")
        induced = compose(m, self.section)
        if induced.variant == Variant.CHAINQ and not m.is_chain_map:
            induced = BaseMorphism(induced.source, induced.target, blocks=induced.blocks, is_chain_map=False)
        elif induced.variant == Variant.CHAINQ:
            induced = BaseMorphism(induced.source, induced.target, blocks=induced.blocks)
        if check:
            witness = morphisms_equal(compose(induced, self.projection), m)
            if witness is not None:
                raise StructureMismatch(f"Map does not factor through the quotient at {witness[0]!r}")
        return induced

    def project(self, vector: Vector) -> Vector:
        return self.projection.apply(vector)

    def lift(self, vector: Vector) -> Vector:
        return self.section.apply(vector)


class _UnionFind:
    """Union-find keeping the smallest index as class representative."""

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry


class _WeightedUnionFind:
    """
    Union-find over basis vectors with rational ratios.

    ``find(x) == (r, w)`` means ``e_x = w e_r`` in the quotient; a class whose
    root is marked zero vanishes.
    """

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.weight: List[Rational] = [ONE] * size
        self.zero = [False] * size

    def find(self, x: int) -> Tuple[int, Rational]:
        path = []
        node = x
        while self.parent[node] != node:
            path.append(node)
            node = self.parent[node]
        root = node
        for step in reversed(path):
            up = self.parent[step]
            if up != root:
                self.weight[step] = self.weight[step] * self.weight[up]
                self.parent[step] = root
        return root, (self.weight[x] if x != root else ONE)

    def union(self, x: int, y: int, ratio: Rational) -> None:
        """Impose ``e_x = ratio e_y``."""
        rx, wx = self.find(x)
        ry, wy = self.find(y)
        if rx == ry:
            if wx != ratio * wy:
                self.zero[rx] = True
            return
        root_ratio = ratio * wy / wx
        if rx < ry:
            self.parent[ry] = rx
            self.weight[ry] = 1 / root_ratio
            self.zero[rx] = self.zero[rx] or self.zero[ry]
        else:
            self.parent[rx] = ry
            self.weight[rx] = root_ratio
            self.zero[ry] = self.zero[ry] or self.zero[rx]

    def kill(self, x: int) -> None:
        root, _ = self.find(x)
        self.zero[root] = True


def _check_relations(target: BaseObject, relations: Sequence[Relation]) -> None:
    for f, g in relations:
        if not (same_object(f.source, g.source) and same_object(f.target, target) and same_object(g.target, target)):
            raise NotParallel("Relation maps must be parallel into the quotiented object")
        check_variants([f.source, target])


def _finset_quotient(target: BaseObject, relations: Sequence[Relation]) -> Quotient:
    labels = target.labels
    index = {label: i for i, label in enumerate(labels)}
    classes = _UnionFind(len(labels))
    for f, g in relations:
        for label in f.source.labels:
            classes.union(index[f.table[label]], index[g.table[label]])
    representative = {label: labels[classes.find(i)] for i, label in enumerate(labels)}
    kept = [label for label in labels if representative[label] == label]
    obj = BaseObject(Variant.FINSET, {0: kept})
    projection = BaseMorphism(target, obj, table=representative)
    section = BaseMorphism(obj, target, table={label: label for label in kept})
    return Quotient(obj, projection, section)


def _quotient_from_parts(
    target: BaseObject,
    kept: Dict[int, List[Label]],
    projection_image,
) -> Quotient:
    variant = target.variant
    differential = {}

    def projection_image_vector(vector: Vector) -> Vector:
        result: Vector = {}
        for label, coeff in vector.items():
            for image, image_coeff in projection_image(label).items():
                result[image] = result.get(image, 0) + coeff * image_coeff
        return {label: c for label, c in result.items() if c != 0}

    if variant == Variant.CHAINQ:
        differential = _build_differential(kept, lambda label: projection_image_vector(target.boundary(label)))
    obj = BaseObject(variant, kept, differential)
    projection = from_images(target, obj, projection_image)
    section = from_images(obj, target, lambda label: {label: ONE}, is_chain_map=False)
    return Quotient(obj, projection, section)


def _monomial_quotient(target: BaseObject, relations: Sequence[Relation]) -> Quotient:
    labels = target.labels
    index = {label: i for i, label in enumerate(labels)}
    classes = _WeightedUnionFind(len(labels))
    for f, g in relations:
        for label in f.source.labels:
            left, right = f.images(label), g.images(label)
            if left and right:
                (a, x), (c, y) = left[0], right[0]
                classes.union(index[x], index[y], c / a)
            elif left:
                classes.kill(index[left[0][1]])
            elif right:
                classes.kill(index[right[0][1]])
    roots = {}
    for i, label in enumerate(labels):
        root, weight = classes.find(i)
        roots[label] = None if classes.zero[root] else (labels[root], weight)
    kept: Dict[int, List[Label]] = {}
    for label in labels:
        if roots[label] is not None and roots[label][0] == label:
            kept.setdefault(target.degree_of(label), []).append(label)

    def projection_image(label):
        entry = roots[label]
        return {} if entry is None else {entry[0]: entry[1]}

    return _quotient_from_parts(target, kept, projection_image)


def _linear_quotient(target: BaseObject, relations: Sequence[Relation]) -> Quotient:
    kept: Dict[int, List[Label]] = {}
    projections = {}
    for deg, labels in target.basis.items():
        vectors = []
        for f, g in relations:
            for label in f.source.basis.get(deg, ()):
                column = f.image_vector(label)
                for c, t in g.images(label):
                    column[t] = column.get(t, 0) - c
                if any(c != 0 for c in column.values()):
                    vectors.append(column)
        matrix = linalg.zero_matrix(len(labels), len(vectors))
        for col, vector in enumerate(vectors):
            for t, c in vector.items():
                matrix[target.position(t), col] = c
        indices, projection = linalg.cokernel(matrix, len(labels))
        kept_labels = [labels[i] for i in indices]
        if kept_labels:
            kept[deg] = kept_labels
        projections[deg] = (kept_labels, projection)

    def projection_image(label):
        deg = target.degree_of(label)
        kept_labels, projection = projections[deg]
        column = target.position(label)
        return {
            kept_labels[row]: projection[row, column]
            for row in range(len(kept_labels))
            if projection[row, column] != 0
        }

    return _quotient_from_parts(target, kept, projection_image)


def quotient_by_relations(target: BaseObject, relations: Sequence[Relation]) -> Quotient:
    """
    Quotient of ``target`` identifying ``f(x)`` with ``g(x)`` for every pair.

    FinSet uses union-find closure; linear variants with monomial relation maps
    use a weighted union-find, other linear relations an exact cokernel.
    """
    _check_relations(target, relations)
    if target.variant == Variant.FINSET:
        quotient = _finset_quotient(target, relations)
    elif all(f.is_monomial() and g.is_monomial() for f, g in relations):
        quotient = _monomial_quotient(target, relations)
    else:
        quotient = _linear_quotient(target, relations)
    logger.debug(f"Quotient of size {target.size} by {len(relations)} relations has size {quotient.object.size}")
    return quotient


def coequalizer(f: BaseMorphism, g: BaseMorphism) -> Quotient:
    """Coequalizer of a parallel pair."""
    if not (same_object(f.source, g.source) and same_object(f.target, g.target)):
        raise NotParallel("Coequalizer of non-parallel morphisms")
    return quotient_by_relations(f.target, [(f, g)])


@dataclass(frozen=True)
class Pushout:
    """Pushout of a span ``B <- A -> C`` with its legs."""

    object: BaseObject
    leg_b: BaseMorphism
    leg_c: BaseMorphism
    quotient: Quotient
    cover: Coproduct

    def induced(self, from_b: BaseMorphism, from_c: BaseMorphism, check: bool = False) -> BaseMorphism:
        """The map out of the pushout restricting to the given maps on the legs."""
        return self.quotient.descend(self.cover.copair([from_b, from_c]), check=check)


def pushout(f: BaseMorphism, g: BaseMorphism) -> Pushout:
    """
    Pushout of ``f: A -> B`` and ``g: A -> C``.

    Raises:
        SourceMismatch: If the morphisms do not share a source
    """
    if not same_object(f.source, g.source):
        raise SourceMismatch("Pushout of morphisms with different sources")
    check_variants([f.target, g.target])
    cover = coproduct([f.target, g.target])
    relation = (compose(cover.injections[0], f), compose(cover.injections[1], g))
    quotient = quotient_by_relations(cover.object, [relation])
    leg_b = compose(quotient.projection, cover.injections[0])
    leg_c = compose(quotient.projection, cover.injections[1])
    return Pushout(quotient.object, leg_b, leg_c, quotient, cover)


@dataclass(frozen=True)
class PushoutProduct:
    """``Q = A(x)D  +_{A(x)C}  B(x)C`` with its map to ``B(x)D``."""

    object: BaseObject
    map: BaseMorphism
    leg_ad: BaseMorphism
    leg_bc: BaseMorphism
    pushout: Pushout
    f: BaseMorphism
    g: BaseMorphism


def pushout_product(f: BaseMorphism, g: BaseMorphism) -> PushoutProduct:
    """Pushout-product of ``f: A -> B`` and ``g: C -> D``."""
    if f.variant != g.variant:
        raise MixedVariant("Pushout-product of morphisms over different bases")
    a, b, c, d = f.source, f.target, g.source, g.target
    span = pushout(tensor_morphisms([identity(a), g]), tensor_morphisms([f, identity(c)]))
    corner = span.induced(tensor_morphisms([f, identity(d)]), tensor_morphisms([identity(b), g]))
    return PushoutProduct(span.object, corner, span.leg_b, span.leg_c, span, f, g)


def braiding(first: PushoutProduct, second: PushoutProduct) -> BaseMorphism:
    """
    ``Q(f, g) -> Q(g, f)`` swapping the tensor factors; it lies over the
    symmetry ``B (x) D -> D (x) B``.

    Raises:
        StructureMismatch: If ``second`` is not the pushout-product of the
            same maps in the other order
    """
    if second.f is not first.g or second.g is not first.f:
        raise StructureMismatch("Braiding needs Q(f, g) and Q(g, f)")
    a, b, c, d = first.f.source, first.f.target, first.g.source, first.g.target
    from_ad = compose(second.leg_bc, permute_factors([a, d], (1, 0)))
    from_bc = compose(second.leg_ad, permute_factors([b, c], (1, 0)))
    return first.pushout.induced(from_ad, from_bc, check=True)


@dataclass(frozen=True)
class IteratedPushoutProduct:
    """
    Left-associated pushout-product of ``f_0, ..., f_{n-1}``.

    Targets have nested labels ``((b_0, b_1), b_2)``; ``flatten`` relabels
    them to the flat tensor product.
    """

    maps: Tuple[BaseMorphism, ...]
    stages: Tuple[PushoutProduct, ...]

    @property
    def map(self) -> BaseMorphism:
        return self.stages[-1].map if self.stages else self.maps[0]

    @property
    def object(self) -> BaseObject:
        return self.map.source

    def flat_target(self) -> BaseObject:
        return tensor_many([m.target for m in self.maps])

    def flatten(self) -> BaseMorphism:
        """Relabeling isomorphism from the nested target to the flat tensor."""
        depth = len(self.maps)

        def unnest(label):
            parts = []
            for _ in range(depth - 1):
                label, last = label
                parts.append(last)
            parts.append(label)
            return tuple(reversed(parts))

        return from_function(self.map.target, self.flat_target(), unnest)


def iterated_pushout_product(maps: Sequence[BaseMorphism]) -> IteratedPushoutProduct:
    if not maps:
        raise StructureMismatch("Iterated pushout-product needs at least one map")
    check_variants([m.source for m in maps])
    stages: List[PushoutProduct] = []
    current = maps[0]
    for m in maps[1:]:
        stage = pushout_product(current, m)
        stages.append(stage)
        current = stage.map
    return IteratedPushoutProduct(tuple(maps), tuple(stages))
