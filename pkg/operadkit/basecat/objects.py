"""Objects and morphisms of the three exact base categories.

Every object has a basis of hashable labels sorted into degrees: FinSet
elements and VectQ basis vectors sit in degree 0, ChainQ basis vectors in
their homological degree with differentials ``d_k: C_k -> C_{k-1}``.
Elements are handled uniformly as sparse vectors ``{label: coefficient}``;
a FinSet element is the vector ``{label: 1}``.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import Matrix, Rational

from operadkit.basecat import linalg
from operadkit.config.constants import Variant
from operadkit.errors import MixedVariant, NotParallel, StructureMismatch, WrongVariant

logger = logging.getLogger(__name__)

Label = Hashable
Vector = Dict[Label, Rational]

ONE = Rational(1)
LINEAR_VARIANTS = (Variant.VECTQ, Variant.CHAINQ)


def add_into(accumulator: Vector, vector: Mapping[Label, Rational], scale=ONE) -> Vector:
    """Add ``scale * vector`` into ``accumulator`` in place, dropping zeros."""
    for label, coeff in vector.items():
        value = accumulator.get(label, 0) + scale * coeff
        if value == 0:
            accumulator.pop(label, None)
        else:
            accumulator[label] = value
    return accumulator


def basis_vector(label: Label) -> Vector:
    return {label: ONE}


def scale_vector(vector: Mapping[Label, Rational], scale) -> Vector:
    if scale == 0:
        return {}
    return {label: coeff * scale for label, coeff in vector.items()}


@dataclass(frozen=True)
class BaseObject:
    """An object of FinSet, VectQ or ChainQ given by its labeled basis."""

    variant: Variant
    basis: Dict[int, Tuple[Label, ...]]
    differential: Dict[int, Matrix] = field(default_factory=dict)
    _index: Dict[Label, Tuple[int, int]] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        basis = {deg: tuple(labels) for deg, labels in sorted(self.basis.items()) if len(labels)}
        if self.variant != Variant.CHAINQ and any(deg != 0 for deg in basis):
            raise WrongVariant(f"{self.variant.value} objects live in degree 0 only")
        index: Dict[Label, Tuple[int, int]] = {}
        for deg, labels in basis.items():
            for pos, label in enumerate(labels):
                if label in index:
                    raise StructureMismatch(f"Duplicate basis label {label!r}")
                index[label] = (deg, pos)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "differential", self._normalized_differential(basis))

    def _normalized_differential(self, basis) -> Dict[int, Matrix]:
        if self.variant != Variant.CHAINQ:
            if self.differential:
                raise WrongVariant(f"{self.variant.value} objects carry no differential")
            return {}
        result = {}
        for deg, matrix in sorted(self.differential.items()):
            rows, cols = len(basis.get(deg - 1, ())), len(basis.get(deg, ()))
            if matrix.shape != (rows, cols):
                raise StructureMismatch(
                    f"Differential in degree {deg} has shape {matrix.shape}, expected {(rows, cols)}"
                )
            if not linalg.is_zero(matrix):
                result[deg] = Matrix(matrix)
        for deg in result:
            if deg - 1 in result and not linalg.is_zero(linalg.matmul(result[deg - 1], result[deg])):
                raise StructureMismatch(f"d o d is nonzero in degree {deg}")
        return result

    @property
    def labels(self) -> Tuple[Label, ...]:
        """All basis labels, by degree."""
        return tuple(label for labels in self.basis.values() for label in labels)

    @property
    def degrees(self) -> List[int]:
        return list(self.basis)

    @property
    def size(self) -> int:
        return len(self._index)

    @property
    def is_initial(self) -> bool:
        return not self._index

    def dim(self, degree: int = 0) -> int:
        return len(self.basis.get(degree, ()))

    def has(self, label: Label) -> bool:
        return label in self._index

    def degree_of(self, label: Label) -> int:
        return self._index[label][0]

    def position(self, label: Label) -> int:
        return self._index[label][1]

    def d(self, degree: int) -> Matrix:
        """The differential leaving ``degree``, zero when absent."""
        if degree in self.differential:
            return self.differential[degree]
        return linalg.zero_matrix(self.dim(degree - 1), self.dim(degree))

    def boundary(self, label: Label) -> Vector:
        """Differential of a basis element."""
        deg, pos = self._index[label]
        if deg not in self.differential:
            return {}
        column = self.differential[deg][:, pos]
        targets = self.basis[deg - 1]
        return {targets[i]: Rational(c) for i, c in enumerate(column) if c != 0}

    def degree_range(self) -> Tuple[int, int]:
        if not self.basis:
            return (0, -1)
        return (min(self.basis), max(self.basis))


def finset(labels: Iterable[Label]) -> BaseObject:
    return BaseObject(Variant.FINSET, {0: tuple(labels)})


def vectq(labels) -> BaseObject:
    """VectQ object from a dimension or a list of basis labels."""
    if isinstance(labels, int):
        labels = [f"e{i}" for i in range(labels)]
    return BaseObject(Variant.VECTQ, {0: tuple(labels)})


def chainq(basis: Mapping[int, Sequence[Label]], differential: Optional[Mapping[int, Matrix]] = None) -> BaseObject:
    return BaseObject(Variant.CHAINQ, dict(basis), dict(differential or {}))


def chainq_from_dims(dims: Mapping[int, int], differential: Optional[Mapping[int, Matrix]] = None) -> BaseObject:
    """ChainQ object with generated labels ``e{deg}.{i}``."""
    basis = {deg: [f"e{deg}.{i}" for i in range(n)] for deg, n in dims.items()}
    return chainq(basis, differential)


def initial_object(variant: Variant) -> BaseObject:
    return BaseObject(variant, {})


def same_object(a: BaseObject, b: BaseObject) -> bool:
    return a is b or a == b


def check_variants(objects: Iterable[BaseObject], variant: Optional[Variant] = None) -> Variant:
    """Common variant of the objects."""
    found = variant
    for obj in objects:
        if found is None:
            found = obj.variant
        elif obj.variant != found:
            raise MixedVariant(f"Cannot combine {found.value} with {obj.variant.value}")
    if found is None:
        raise MixedVariant("No variant given for an empty family")
    return found


@dataclass(frozen=True)
class BaseMorphism:
    """
    A morphism of base objects.

    FinSet morphisms carry a function ``table``; linear ones carry a matrix per
    source degree. ``is_chain_map`` is False only for graded sections of
    quotient maps, which need not commute with differentials.
    """

    source: BaseObject
    target: BaseObject
    table: Optional[Dict[Label, Label]] = None
    blocks: Optional[Dict[int, Matrix]] = None
    is_chain_map: bool = True
    _images: Dict[Label, Tuple[Tuple[Rational, Label], ...]] = field(
        default=None, init=False, repr=False, compare=False
    )

    def __post_init__(self):
        variant = check_variants([self.source, self.target])
        object.__setattr__(self, "_images", {})
        if variant == Variant.FINSET:
            table = dict(self.table or {})
            if set(table) != set(self.source.labels):
                raise StructureMismatch("Function table is not total on its source")
            for label, image in table.items():
                if not self.target.has(image):
                    raise StructureMismatch(f"Image {image!r} of {label!r} is not in the target")
            object.__setattr__(self, "table", table)
            object.__setattr__(self, "blocks", None)
            return
        blocks = {}
        given = dict(self.blocks or {})
        for deg in self.source.degrees:
            shape = (self.target.dim(deg), self.source.dim(deg))
            matrix = given.pop(deg, None)
            if matrix is None:
                matrix = linalg.zero_matrix(*shape)
            if matrix.shape != shape:
                raise StructureMismatch(f"Block in degree {deg} has shape {matrix.shape}, expected {shape}")
            blocks[deg] = Matrix(matrix)
        for deg, matrix in given.items():
            if matrix.cols:
                raise StructureMismatch(f"Block in degree {deg} has no source basis")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "table", None)
        if variant == Variant.CHAINQ and self.is_chain_map:
            degree = self.commutator_degree()
            if degree is not None:
                raise StructureMismatch(f"Morphism does not commute with differentials in degree {degree}")

    @property
    def variant(self) -> Variant:
        return self.source.variant

    def block(self, degree: int) -> Matrix:
        if self.blocks and degree in self.blocks:
            return self.blocks[degree]
        return linalg.zero_matrix(self.target.dim(degree), self.source.dim(degree))

    def commutator_degree(self) -> Optional[int]:
        """First degree where ``d f != f d``, or None."""
        for deg in sorted(set(self.source.degrees) | set(self.target.degrees)):
            left = linalg.matmul(self.target.d(deg), self.block(deg))
            right = linalg.matmul(self.block(deg - 1), self.source.d(deg))
            if left != right:
                return deg
        return None

    def images(self, label: Label) -> Tuple[Tuple[Rational, Label], ...]:
        """Nonzero (coefficient, target label) pairs of a source basis element."""
        cached = self._images.get(label)
        if cached is not None:
            return cached
        if self.table is not None:
            result = ((ONE, self.table[label]),)
        else:
            deg = self.source.degree_of(label)
            column = self.blocks[deg][:, self.source.position(label)]
            targets = self.target.basis.get(deg, ())
            result = tuple((Rational(c), targets[i]) for i, c in enumerate(column) if c != 0)
        self._images[label] = result
        return result

    def image_vector(self, label: Label) -> Vector:
        return {target: coeff for coeff, target in self.images(label)}

    def __call__(self, label: Label) -> Label:
        """Image of a FinSet element."""
        return self.table[label]

    def apply(self, vector: Mapping[Label, Rational]) -> Vector:
        result: Vector = {}
        for label, coeff in vector.items():
            for image_coeff, image in self.images(label):
                add_into(result, {image: image_coeff}, coeff)
        return result

    def is_monomial(self) -> bool:
        """Every basis element maps to a multiple of a basis element."""
        if self.table is not None:
            return True
        return all(len(self.images(label)) <= 1 for label in self.source.labels)


def from_images(
    source: BaseObject,
    target: BaseObject,
    image: Callable[[Label], Mapping[Label, Rational]],
    is_chain_map: bool = True,
) -> BaseMorphism:
    """
    Build a morphism from the images of basis elements.

    Args:
        source: Source object
        target: Target object
        image: Returns the image vector of a source basis label
        is_chain_map: Whether to validate commutation with differentials

    Raises:
        StructureMismatch: If an image is not a single element (FinSet) or
            leaves the degree of its source (ChainQ)
    """
    variant = check_variants([source, target])
    if variant == Variant.FINSET:
        table = {}
        for label in source.labels:
            vector = image(label)
            if len(vector) != 1 or next(iter(vector.values())) != 1:
                raise StructureMismatch(f"Image of {label!r} is not a single element: {vector!r}")
            table[label] = next(iter(vector))
        return BaseMorphism(source, target, table=table)
    blocks = {}
    for deg, labels in source.basis.items():
        matrix = linalg.zero_matrix(target.dim(deg), len(labels))
        for col, label in enumerate(labels):
            for target_label, coeff in image(label).items():
                if coeff == 0:
                    continue
                target_deg, row = target._index[target_label]
                if target_deg != deg:
                    raise StructureMismatch(f"Image of {label!r} leaves degree {deg}")
                matrix[row, col] += coeff
        blocks[deg] = matrix
    return BaseMorphism(source, target, blocks=blocks, is_chain_map=is_chain_map)


def from_function(source: BaseObject, target: BaseObject, function: Callable[[Label], Label]) -> BaseMorphism:
    """Morphism sending each basis label to a basis label."""
    return from_images(source, target, lambda label: basis_vector(function(label)))


def identity(obj: BaseObject) -> BaseMorphism:
    return from_function(obj, obj, lambda label: label)


def zero_morphism(source: BaseObject, target: BaseObject) -> BaseMorphism:
    if source.variant == Variant.FINSET and not source.is_initial:
        raise WrongVariant("FinSet has no zero morphisms out of a nonempty set")
    return from_images(source, target, lambda label: {})


def compose(g: BaseMorphism, f: BaseMorphism) -> BaseMorphism:
    """The composite ``g . f``."""
    if not same_object(f.target, g.source):
        raise NotParallel("Composite of non-composable morphisms")
    if f.table is not None:
        return BaseMorphism(f.source, g.target, table={a: g.table[b] for a, b in f.table.items()})
    blocks = {deg: linalg.matmul(g.block(deg), f.block(deg)) for deg in f.source.degrees}
    return BaseMorphism(f.source, g.target, blocks=blocks, is_chain_map=f.is_chain_map and g.is_chain_map)


def compose_all(*maps: BaseMorphism) -> BaseMorphism:
    """``compose_all(h, g, f) == h . g . f``."""
    result = maps[-1]
    for m in reversed(maps[:-1]):
        result = compose(m, result)
    return result


def morphisms_equal(f: BaseMorphism, g: BaseMorphism) -> Optional[Tuple[Label, Vector, Vector]]:
    """None when ``f == g``, else a basis element where they differ with both images."""
    if not (same_object(f.source, g.source) and same_object(f.target, g.target)):
        raise NotParallel("Compared morphisms are not parallel")
    for label in f.source.labels:
        left, right = f.image_vector(label), g.image_vector(label)
        if left != right:
            return label, left, right
    return None


def is_isomorphism(f: BaseMorphism) -> bool:
    if f.source.size != f.target.size:
        return False
    if f.table is not None:
        return len(set(f.table.values())) == f.target.size
    return all(
        f.source.dim(deg) == f.target.dim(deg) and linalg.is_invertible(f.block(deg))
        for deg in set(f.source.degrees) | set(f.target.degrees)
    )


def inverse(f: BaseMorphism) -> BaseMorphism:
    """Inverse of an isomorphism."""
    if not is_isomorphism(f):
        raise StructureMismatch("Morphism is not invertible")
    if f.table is not None:
        return BaseMorphism(f.target, f.source, table={b: a for a, b in f.table.items()})
    return BaseMorphism(f.target, f.source, blocks={deg: f.block(deg).inv() for deg in f.target.degrees})


def section_of_surjection(f: BaseMorphism) -> BaseMorphism:
    """
    A graded right inverse of a surjective morphism.

    Raises:
        StructureMismatch: If ``f`` is not surjective
    """
    if f.table is not None:
        chosen: Dict[Label, Label] = {}
        for label in f.source.labels:
            chosen.setdefault(f.table[label], label)
        if len(chosen) != f.target.size:
            raise StructureMismatch("Function is not surjective")
        return BaseMorphism(f.target, f.source, table=chosen)
    blocks = {}
    for deg in f.target.degrees:
        try:
            blocks[deg] = linalg.right_inverse(f.block(deg))
        except ValueError as e:
            raise StructureMismatch(f"Map is not surjective in degree {deg}") from e
    return BaseMorphism(f.target, f.source, blocks=blocks, is_chain_map=False)


def linearize(obj: BaseObject) -> BaseObject:
    """Free VectQ object on a finite set."""
    if obj.variant != Variant.FINSET:
        raise WrongVariant("Only FinSet objects are linearized")
    return BaseObject(Variant.VECTQ, dict(obj.basis))


def linearize_morphism(
    f: BaseMorphism, source: Optional[BaseObject] = None, target: Optional[BaseObject] = None
) -> BaseMorphism:
    source = source or linearize(f.source)
    target = target or linearize(f.target)
    return from_function(source, target, f.table.__getitem__)


# Tensor products


def _build_differential(basis: Dict[int, List[Label]], boundary: Callable[[Label], Vector]) -> Dict[int, Matrix]:
    index = {label: pos for labels in basis.values() for pos, label in enumerate(labels)}
    differential = {}
    for deg, labels in basis.items():
        if deg - 1 not in basis:
            continue
        matrix = linalg.zero_matrix(len(basis[deg - 1]), len(labels))
        for col, label in enumerate(labels):
            for target, coeff in boundary(label).items():
                matrix[index[target], col] += coeff
        differential[deg] = matrix
    return differential


def tensor_many(objects: Sequence[BaseObject], variant: Optional[Variant] = None) -> BaseObject:
    """
    n-fold tensor product with flat tuple labels.

    The empty product is the monoidal unit, with the single label ``()``.
    ChainQ differentials carry the Koszul sign of the preceding factors.
    """
    variant = check_variants(objects, variant)
    basis: Dict[int, List[Label]] = {}
    for combo in product(*[obj.labels for obj in objects]):
        deg = sum(obj.degree_of(label) for obj, label in zip(objects, combo))
        basis.setdefault(deg, []).append(combo)
    if variant != Variant.CHAINQ:
        return BaseObject(variant, basis)

    def boundary(combo):
        result: Vector = {}
        preceding = 0
        for i, (obj, label) in enumerate(zip(objects, combo)):
            sign = -1 if preceding % 2 else 1
            for target, coeff in obj.boundary(label).items():
                add_into(result, {combo[:i] + (target,) + combo[i + 1:]: coeff}, sign)
            preceding += obj.degree_of(label)
        return result

    return BaseObject(variant, basis, _build_differential(basis, boundary))


def tensor(a: BaseObject, b: BaseObject) -> BaseObject:
    return tensor_many([a, b])


def unit_object(variant: Variant) -> BaseObject:
    return tensor_many([], variant)


def _expand_product(factors: Sequence[Iterable[Tuple[Rational, Label]]]) -> Vector:
    result: Vector = {}
    for combo in product(*factors):
        coeff = ONE
        for c, _ in combo:
            coeff *= c
        add_into(result, {tuple(label for _, label in combo): coeff})
    return result


def tensor_morphisms(maps: Sequence[BaseMorphism], variant: Optional[Variant] = None) -> BaseMorphism:
    """Tensor product of morphisms, factor by factor."""
    variant = check_variants([m.source for m in maps], variant)
    source = tensor_many([m.source for m in maps], variant)
    target = tensor_many([m.target for m in maps], variant)
    return from_images(
        source,
        target,
        lambda combo: _expand_product([m.images(label) for m, label in zip(maps, combo)]),
    )


def koszul_sign(objects: Sequence[BaseObject], combo: Sequence[Label], perm: Sequence[int]) -> int:
    """Sign of moving factor ``i`` of ``combo`` to position ``perm[i]``."""
    degrees = [obj.degree_of(label) for obj, label in zip(objects, combo)]
    parity = 0
    for i in range(len(perm)):
        if degrees[i] % 2 == 0:
            continue
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j] and degrees[j] % 2:
                parity ^= 1
    return -1 if parity else 1


def permute_factors(
    objects: Sequence[BaseObject], perm: Sequence[int], variant: Optional[Variant] = None
) -> BaseMorphism:
    """Symmetry isomorphism moving factor ``i`` to position ``perm[i]``."""
    variant = check_variants(objects, variant)
    moved: List[Optional[BaseObject]] = [None] * len(objects)
    for i, obj in enumerate(objects):
        moved[perm[i]] = obj
    source = tensor_many(objects, variant)
    target = tensor_many(moved, variant)

    def image(combo):
        result = [None] * len(combo)
        for i, label in enumerate(combo):
            result[perm[i]] = label
        sign = koszul_sign(objects, combo, perm) if variant == Variant.CHAINQ else 1
        return {tuple(result): Rational(sign)}

    return from_images(source, target, image)


def flatten_morphism(source: BaseObject, target: BaseObject, flatten: Callable[[Label], Label]) -> BaseMorphism:
    """Relabeling isomorphism between two presentations of one tensor product."""
    return from_function(source, target, flatten)


# Coproducts


@dataclass(frozen=True)
class Coproduct:
    """A coproduct with labels ``(i, label)`` and its injections."""

    object: BaseObject
    summands: Tuple[BaseObject, ...]
    injections: Tuple[BaseMorphism, ...]

    def copair(self, maps: Sequence[BaseMorphism]) -> BaseMorphism:
        """The morphism out of the coproduct restricting to ``maps``."""
        if len(maps) != len(self.summands):
            raise StructureMismatch("Copairing needs one map per summand")
        target = maps[0].target if maps else None
        if target is None:
            raise StructureMismatch("Copairing of an empty family needs a target")
        for m, summand in zip(maps, self.summands):
            if not same_object(m.source, summand) or not same_object(m.target, target):
                raise NotParallel("Copaired maps must share the target and start at the summands")
        return from_images(self.object, target, lambda label: maps[label[0]].image_vector(label[1]))

    def copair_into(self, target: BaseObject, maps: Sequence[BaseMorphism]) -> BaseMorphism:
        if not maps:
            return from_images(self.object, target, lambda label: {})
        return self.copair(maps)


def coproduct(objects: Sequence[BaseObject], variant: Optional[Variant] = None) -> Coproduct:
    """Disjoint union / direct sum with tagged labels ``(i, label)``."""
    variant = check_variants(objects, variant)
    basis: Dict[int, List[Label]] = {}
    for i, obj in enumerate(objects):
        for deg, labels in obj.basis.items():
            basis.setdefault(deg, []).extend((i, label) for label in labels)
    differential = {}
    if variant == Variant.CHAINQ:
        differential = _build_differential(
            basis,
            lambda tagged: {(tagged[0], t): c for t, c in objects[tagged[0]].boundary(tagged[1]).items()},
        )
    obj = BaseObject(variant, basis, differential)
    injections = tuple(
        from_function(summand, obj, lambda label, i=i: (i, label)) for i, summand in enumerate(objects)
    )
    return Coproduct(obj, tuple(objects), injections)


def coproduct_of_morphisms(
    maps: Sequence[BaseMorphism],
    source: Optional[Coproduct] = None,
    target: Optional[Coproduct] = None,
    variant: Optional[Variant] = None,
) -> BaseMorphism:
    """The sum of morphisms between coproducts."""
    source = source or coproduct([m.source for m in maps], variant)
    target = target or coproduct([m.target for m in maps], variant)
    return from_images(
        source.object,
        target.object,
        lambda tagged: {(tagged[0], t): c for t, c in maps[tagged[0]].image_vector(tagged[1]).items()},
    )


def distribute(a: BaseObject, parts: Sequence[BaseObject], variant: Optional[Variant] = None) -> BaseMorphism:
    """``A (x) (B_0 + B_1 + ...) -> A (x) B_0 + A (x) B_1 + ...``."""
    variant = check_variants([a, *parts], variant)
    summed = coproduct(parts, variant)
    target = coproduct([tensor(a, part) for part in parts], variant)
    return flatten_morphism(
        tensor(a, summed.object), target.object, lambda combo: (combo[1][0], (combo[0], combo[1][1]))
    )
