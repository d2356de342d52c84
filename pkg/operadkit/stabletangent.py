"""
Over-under chain complexes, prespectra and their stable homology.

An object over-under ``A`` is a complex ``C`` with a section ``s: A -> C`` and
a retraction ``p: C -> A``. Its pointed fiber is the degreewise kernel of
``p``. Prespectra are band diagrams: the diagonal entries ``X_{n,n}`` and the
neighbouring ``X_{n,n+1}``, ``X_{n+1,n}``, with one square per level

    X_{n,n}    -> X_{n,n+1}
      |              |
    X_{n+1,n}  -> X_{n+1,n+1}

Off-diagonal entries are contractible over-under ``A``: their section is a
quasi-isomorphism.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Tuple, Union

from operadkit.basecat import (
    ONE,
    BaseMorphism,
    BaseObject,
    Label,
    Vector,
    chainq,
    compose,
    coproduct,
    from_images,
    homology,
    homology_table,
    identity,
    induced_homology_rank,
    is_quasi_iso,
    mapping_cone,
    morphisms_equal,
    pushout_product,
    same_object,
    shift,
    shift_morphism,
    tensor_many,
    tensor_morphisms,
    zero_morphism,
)
from operadkit.basecat import linalg
from operadkit.config.constants import DEFAULT_STABILITY_WINDOW, UNDETERMINED, Variant
from operadkit.errors import StructureMismatch, TruncationTooSmall, WrongVariant
from operadkit.operads import CheckReport

logger = logging.getLogger(__name__)

Index = Tuple[int, int]
Edge = Tuple[Index, Index]


def _require_chain(*objects: BaseObject) -> None:
    for obj in objects:
        if obj.variant != Variant.CHAINQ:
            raise WrongVariant(f"Over-under objects live in chainq, not {obj.variant.value}")


@dataclass(frozen=True)
class Fiber:
    """The kernel of a retraction with its inclusion; kernel labels are the free labels of the total."""

    object: BaseObject
    inclusion: BaseMorphism
    vectors: Dict[Label, Vector]

    def coordinates(self, vector: Vector) -> Vector:
        """Coordinates of a vector of the total that lies in the kernel."""
        return {label: c for label, c in vector.items() if c != 0 and self.object.has(label)}


@dataclass(frozen=True, eq=False)
class OverUnder:
    """``A -> C -> A`` with ``p . s = id``."""

    base: BaseObject
    total: BaseObject
    section: BaseMorphism
    retraction: BaseMorphism
    name: str = "X"

    def __post_init__(self):
        _require_chain(self.base, self.total)
        if not (same_object(self.section.source, self.base) and same_object(self.section.target, self.total)):
            raise StructureMismatch(f"Section of {self.name} does not go from the base to the total")
        if not (same_object(self.retraction.source, self.total) and same_object(self.retraction.target, self.base)):
            raise StructureMismatch(f"Retraction of {self.name} does not go from the total to the base")
        witness = morphisms_equal(compose(self.retraction, self.section), identity(self.base))
        if witness is not None:
            raise StructureMismatch(f"Retraction of {self.name} does not split the section at {witness[0]!r}")

    @cached_property
    def fiber(self) -> Fiber:
        return _compute_fiber(self)


def _compute_fiber(x: OverUnder) -> Fiber:
    kernels, basis, vectors = {}, {}, {}
    for deg in x.total.degrees:
        null, free = linalg.nullspace(x.retraction.block(deg))
        labels = x.total.basis[deg]
        kernels[deg] = (null, free)
        basis[deg] = [labels[i] for i in free]
        for col, i in enumerate(free):
            vectors[labels[i]] = {labels[r]: null[r, col] for r in range(null.rows) if null[r, col] != 0}
    differential = {}
    for deg, (null, free) in kernels.items():
        if deg - 1 not in kernels or not free:
            continue
        image = linalg.matmul(x.total.d(deg), null)
        differential[deg] = linalg.rows(image, kernels[deg - 1][1])
    obj = chainq(basis, differential)
    inclusion = from_images(obj, x.total, lambda label: vectors[label])
    return Fiber(obj, inclusion, vectors)


def kernel_functor(x: OverUnder) -> BaseObject:
    """``ker(p) = C x_A 0``."""
    return x.fiber.object


def include_coprod(base: BaseObject, b: BaseObject, name: str = "X") -> OverUnder:
    """
    ``A -> B (+) A -> A``, including the second summand.

    Total labels are ``(0, b)`` and ``(1, a)``; the kernel is ``B`` relabeled
    by ``(0, b)`` with its own differential.
    """
    _require_chain(base, b)
    summed = coproduct([b, base])
    retraction = from_images(summed.object, base, lambda label: {label[1]: ONE} if label[0] == 1 else {})
    return OverUnder(base, summed.object, summed.injections[1], retraction, name=name)


def unit_map(base: BaseObject, b: BaseObject) -> BaseMorphism:
    """The strict unit ``B -> ker(B (+) A -> A)``."""
    fiber = include_coprod(base, b).fiber.object
    return from_images(b, fiber, lambda label: {(0, label): ONE})


def counit_map(x: OverUnder) -> BaseMorphism:
    """``ker(p) (+) A -> C``, the kernel inclusion on the first summand and the section on the second."""
    fiber = x.fiber
    split = include_coprod(x.base, fiber.object)

    def image(label):
        tag, y = label
        return fiber.inclusion.image_vector(y) if tag == 0 else x.section.image_vector(y)

    return from_images(split.total, x.total, image)


def over_under_failure(f: BaseMorphism, source: OverUnder, target: OverUnder) -> Optional[str]:
    """None when ``f`` commutes with the sections and the retractions."""
    if not (same_object(f.source, source.total) and same_object(f.target, target.total)):
        return f"map does not go from {source.name} to {target.name}"
    witness = morphisms_equal(compose(f, source.section), target.section)
    if witness is not None:
        return f"sections differ at {witness[0]!r}"
    witness = morphisms_equal(compose(target.retraction, f), source.retraction)
    if witness is not None:
        return f"retractions differ at {witness[0]!r}"
    return None


def fiber_morphism(f: BaseMorphism, source: OverUnder, target: OverUnder) -> BaseMorphism:
    """The restriction of a map over-under ``A`` to the pointed fibers."""
    src, dst = source.fiber, target.fiber
    return from_images(src.object, dst.object, lambda label: dst.coordinates(f.apply(src.vectors[label])))


# Complexes


def suspension(x: BaseObject) -> BaseObject:
    return shift(x, 1)


def loop(x: BaseObject) -> BaseObject:
    return shift(x, -1)


def suspend_over_under(x: OverUnder) -> OverUnder:
    """Suspension in the pointed fiber: ``A -> Sigma ker(p) (+) A -> A``."""
    return include_coprod(x.base, suspension(x.fiber.object), name=f"S{x.name}")


def cone_morphism(
    f: BaseMorphism,
    g: BaseMorphism,
    on_source: BaseMorphism,
    on_target: BaseMorphism,
    source: Optional[BaseObject] = None,
    target: Optional[BaseObject] = None,
) -> BaseMorphism:
    """
    ``cone(f) -> cone(g)`` from a strictly commuting square
    ``g . on_source == on_target . f``.
    """
    source = source or mapping_cone(f)[0]
    target = target or mapping_cone(g)[0]

    def image(label):
        tag, y = label
        moved = (on_source if tag == "s" else on_target).image_vector(y)
        return {(tag, z): c for z, c in moved.items()}

    return from_images(source, target, image)


def homotopy_pushout(f: BaseMorphism, g: BaseMorphism) -> BaseObject:
    """The double mapping cylinder of ``B <- A -> C``, as the cone of ``A -> B (+) C``."""
    summed = coproduct([f.target, g.target])

    def image(label):
        result = {(0, y): c for y, c in f.image_vector(label).items()}
        for y, c in g.image_vector(label).items():
            result[(1, y)] = -c
        return result

    return mapping_cone(from_images(f.source, summed.object, image))[0]


@dataclass(frozen=True)
class Square:
    """A strictly commuting square of pointed fibers: ``right . top == bottom . left``."""

    level: int
    top: BaseMorphism
    left: BaseMorphism
    right: BaseMorphism
    bottom: BaseMorphism

    def total_cofiber(self) -> BaseObject:
        return mapping_cone(cone_morphism(self.top, self.bottom, self.left, self.right))[0]

    def failure_degree(self) -> Optional[int]:
        """Lowest degree where the total cofiber has homology, None when the square is homotopy Cartesian."""
        table = homology_table(self.total_cofiber())
        return min(table) if table else None


# Prespectra


def band_indices(truncation: int) -> List[Index]:
    indices = []
    for n in range(truncation + 1):
        indices.append((n, n))
        if n < truncation:
            indices += [(n, n + 1), (n + 1, n)]
    return indices


def square_edges(n: int) -> Tuple[Edge, Edge, Edge, Edge]:
    """Top, left, right and bottom edges of the diagonal square at level ``n``."""
    corner, right, below, next_corner = (n, n), (n, n + 1), (n + 1, n), (n + 1, n + 1)
    return (corner, right), (corner, below), (right, next_corner), (below, next_corner)


def band_edges(truncation: int) -> List[Edge]:
    return [edge for n in range(truncation) for edge in square_edges(n)]


@dataclass(frozen=True, eq=False)
class Prespectrum:
    """
    A prespectrum truncated at level ``truncation``.

    ``maps`` are maps of totals over and under the common base, one per band
    edge.
    """

    truncation: int
    entries: Dict[Index, OverUnder]
    maps: Dict[Edge, BaseMorphism]
    name: str = "X"
    _fiber_maps: Dict[Edge, BaseMorphism] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.truncation < 0:
            raise TruncationTooSmall(f"Truncation of {self.name} must be nonnegative")
        for index in band_indices(self.truncation):
            if index not in self.entries:
                raise StructureMismatch(f"{self.name} has no entry at {index}")
        base = self.entries[(0, 0)].base
        for index, entry in self.entries.items():
            if not same_object(entry.base, base):
                raise StructureMismatch(f"Entry {index} of {self.name} lives over another base")
            if index[0] != index[1] and not is_quasi_iso(entry.section):
                raise StructureMismatch(f"Off-diagonal entry {index} of {self.name} is not contractible")
        for edge in band_edges(self.truncation):
            if edge not in self.maps:
                raise StructureMismatch(f"{self.name} has no structure map along {edge}")
            failure = over_under_failure(self.maps[edge], self.entries[edge[0]], self.entries[edge[1]])
            if failure is not None:
                raise StructureMismatch(f"Structure map {edge} of {self.name}: {failure}")

    @property
    def base(self) -> BaseObject:
        return self.entries[(0, 0)].base

    def fiber(self, index: Index) -> BaseObject:
        return self.entries[index].fiber.object

    def fiber_map(self, edge: Edge) -> BaseMorphism:
        if edge not in self._fiber_maps:
            self._fiber_maps[edge] = fiber_morphism(self.maps[edge], self.entries[edge[0]], self.entries[edge[1]])
        return self._fiber_maps[edge]

    def square(self, n: int) -> Square:
        top, left, right, bottom = (self.fiber_map(edge) for edge in square_edges(n))
        return Square(n, top, left, right, bottom)


def _summed_map(source: OverUnder, target: OverUnder, fiber_map: BaseMorphism) -> BaseMorphism:
    """``f (+) id_A`` between totals of the form ``include_coprod``."""

    def image(label):
        if label[0] == 1:
            return {label: ONE}
        return {(0, y): c for y, c in fiber_map.image_vector(label[1]).items()}

    return from_images(source.total, target.total, image)


def prespectrum_from_fibers(
    base: BaseObject,
    fibers: Dict[Index, BaseObject],
    fiber_maps: Dict[Edge, BaseMorphism],
    truncation: int,
    name: str = "X",
) -> Prespectrum:
    """The prespectrum with entries ``include_coprod(base, fiber)`` and structure maps ``f (+) id``."""
    entries = {index: include_coprod(base, fiber, name=f"{name}{index}") for index, fiber in fibers.items()}
    maps = {
        edge: _summed_map(entries[edge[0]], entries[edge[1]], m)
        for edge, m in fiber_maps.items()
    }
    return Prespectrum(truncation, entries, maps, name=name)


def _suspension_fibers(fiber: BaseObject, truncation: int):
    levels = [fiber]
    for _ in range(truncation):
        levels.append(suspension(levels[-1]))
    fibers: Dict[Index, BaseObject] = {(n, n): levels[n] for n in range(truncation + 1)}
    maps: Dict[Edge, BaseMorphism] = {}
    for n in range(truncation):
        cone, inclusion = mapping_cone(identity(levels[n]))
        fibers[(n, n + 1)] = fibers[(n + 1, n)] = cone
        top, left, right, bottom = square_edges(n)
        maps[top] = maps[left] = inclusion
        maps[right] = from_images(cone, levels[n + 1], lambda label: {label[1]: ONE} if label[0] == "s" else {})
        maps[bottom] = zero_morphism(cone, levels[n + 1])
    return levels, fibers, maps


def suspension_prespectrum_of(base: BaseObject, fiber: BaseObject, truncation: int, name: str = "S") -> Prespectrum:
    """
    ``Sigma^infty`` of the over-under object with pointed fiber ``fiber``:
    ``X_{n,n}`` has fiber ``Sigma^n K`` and both off-diagonal entries are the
    cone on ``Sigma^n K``.
    """
    _, fibers, maps = _suspension_fibers(fiber, truncation)
    return prespectrum_from_fibers(base, fibers, maps, truncation, name=name)


def suspension_prespectrum(x: OverUnder, truncation: int) -> Prespectrum:
    return suspension_prespectrum_of(x.base, x.fiber.object, truncation, name=f"S{x.name}")


def constant_prespectrum(base: BaseObject, fiber: BaseObject, truncation: int, name: str = "C") -> Prespectrum:
    """
    Every entry has fiber ``fiber`` and every structure map is the identity;
    a prespectrum only for acyclic fibers.
    """
    fibers = {index: fiber for index in band_indices(truncation)}
    maps = {edge: identity(fiber) for edge in band_edges(truncation)}
    return prespectrum_from_fibers(base, fibers, maps, truncation, name=name)


def shift_prespectrum(spectrum: Prespectrum, k: int) -> Prespectrum:
    """Levelwise ``Sigma^k`` on pointed fibers; negative ``k`` loops."""
    fibers = {index: shift(spectrum.fiber(index), k) for index in band_indices(spectrum.truncation)}
    maps = {
        edge: shift_morphism(spectrum.fiber_map(edge), k, source=fibers[edge[0]], target=fibers[edge[1]])
        for edge in band_edges(spectrum.truncation)
    }
    return prespectrum_from_fibers(spectrum.base, fibers, maps, spectrum.truncation, name=f"{spectrum.name}[{k}]")


def corrupt_square(spectrum: Prespectrum, n: int) -> Prespectrum:
    """The prespectrum with the right edge of square ``n`` replaced by zero."""
    edge = square_edges(n)[2]
    maps = dict(spectrum.maps)
    source, target = spectrum.entries[edge[0]], spectrum.entries[edge[1]]
    maps[edge] = compose(target.section, source.retraction)
    return Prespectrum(spectrum.truncation, dict(spectrum.entries), maps, name=f"{spectrum.name}~{n}")


def omega_spectrum_failures(spectrum: Prespectrum) -> List[Tuple[int, int]]:
    """``(level, degree)`` for every diagonal square that is not homotopy Cartesian."""
    if spectrum.truncation < 1:
        raise TruncationTooSmall(f"{spectrum.name} has no squares below level {spectrum.truncation}")
    failures = []
    for n in range(spectrum.truncation):
        degree = spectrum.square(n).failure_degree()
        logger.debug(f"Square {n} of {spectrum.name}: failure degree {degree}")
        if degree is not None:
            failures.append((n, degree))
    return failures


def omega_spectrum_check(spectrum: Prespectrum) -> CheckReport:
    """
    Whether every diagonal square is homotopy Cartesian, decided by the
    total cofiber.

    Raises:
        TruncationTooSmall: If the prespectrum has no squares
    """
    report = CheckReport(spectrum.name, spectrum.truncation)
    failures = omega_spectrum_failures(spectrum)
    for _ in range(spectrum.truncation):
        report.tick("homotopy cartesian")
    for n, degree in failures:
        report.fail("homotopy cartesian", f"square {n}, degree {degree}")
    return report


# Stable homology


@dataclass(frozen=True)
class StableValue:
    """``H_{q+k}`` of the diagonal fibers for ``k = 0..T`` and the stable value, if any."""

    degree: int
    levels: Tuple[int, ...]
    value: Optional[int]
    stabilized_at: Optional[int]

    @property
    def determined(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class StableHomology:
    subject: str
    truncation: int
    window: int
    values: Dict[int, StableValue]

    def value(self, degree: int) -> Optional[int]:
        """The stable value in ``degree``; degrees absent from every level are 0."""
        if degree not in self.values:
            return 0
        return self.values[degree].value

    def undetermined(self) -> List[int]:
        return [q for q, v in sorted(self.values.items()) if not v.determined]

    def table(self) -> Dict[int, Union[int, str]]:
        """Nonzero stable values, with ``"undetermined"`` where no value settled."""
        result: Dict[int, Union[int, str]] = {}
        for q, v in sorted(self.values.items()):
            if not v.determined:
                result[q] = UNDETERMINED
            elif v.value:
                result[q] = v.value
        return result

    @property
    def is_trivial(self) -> bool:
        return all(v.determined and v.value == 0 for v in self.values.values())

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "truncation": self.truncation,
            "window": self.window,
            "stable_homology": {str(q): v for q, v in self.table().items()},
            "stabilized_at": {
                str(q): v.stabilized_at for q, v in sorted(self.values.items()) if v.determined
            },
        }


def spectrify(spectrum: Prespectrum, window: int = DEFAULT_STABILITY_WINDOW) -> StableHomology:
    """
    Stable homology ``H_q = H_{q+k}(ker X_{k,k})`` once the value holds for
    the last ``window`` levels up to the truncation.

    Raises:
        TruncationTooSmall: If fewer than ``window`` levels exist
    """
    top = spectrum.truncation
    if top + 1 < window:
        raise TruncationTooSmall(f"{spectrum.name} has {top + 1} levels, fewer than the window {window}")
    diagonal = [spectrum.fiber((k, k)) for k in range(top + 1)]
    degrees = sorted({deg - k for k, fiber in enumerate(diagonal) for deg in fiber.degrees})
    values = {}
    for q in degrees:
        levels = tuple(homology(diagonal[k], q + k) for k in range(top + 1))
        start = top
        while start > 0 and levels[start - 1] == levels[top]:
            start -= 1
        if top - start + 1 >= window:
            values[q] = StableValue(q, levels, levels[top], start)
        else:
            values[q] = StableValue(q, levels, None, None)
    result = StableHomology(spectrum.name, top, window, values)
    logger.info(f"Stable homology of {spectrum.name}: {result.table()}")
    return result


@dataclass(frozen=True, eq=False)
class PrespectrumMap:
    """A levelwise map of totals, over and under the base, commuting with the structure maps."""

    source: Prespectrum
    target: Prespectrum
    components: Dict[Index, BaseMorphism]
    name: str = "f"

    def __post_init__(self):
        if self.source.truncation != self.target.truncation:
            raise StructureMismatch(f"{self.name} joins prespectra of different truncations")
        for index in band_indices(self.source.truncation):
            if index not in self.components:
                raise StructureMismatch(f"{self.name} has no component at {index}")
            failure = over_under_failure(self.components[index], self.source.entries[index], self.target.entries[index])
            if failure is not None:
                raise StructureMismatch(f"Component {index} of {self.name}: {failure}")
        for edge in band_edges(self.source.truncation):
            left = compose(self.target.maps[edge], self.components[edge[0]])
            right = compose(self.components[edge[1]], self.source.maps[edge])
            witness = morphisms_equal(left, right)
            if witness is not None:
                raise StructureMismatch(f"{self.name} does not commute with {edge} at {witness[0]!r}")

    def fiber_component(self, index: Index) -> BaseMorphism:
        return fiber_morphism(self.components[index], self.source.entries[index], self.target.entries[index])

    def is_degreewise_injective(self) -> bool:
        for index in self.components:
            f = self.fiber_component(index)
            if any(linalg.rank(f.block(deg)) != f.source.dim(deg) for deg in f.source.degrees):
                return False
        return True


def prespectrum_map_from_fibers(
    source: Prespectrum, target: Prespectrum, fiber_maps: Dict[Index, BaseMorphism], name: str = "f"
) -> PrespectrumMap:
    """``f (+) id`` levelwise, for prespectra built by ``prespectrum_from_fibers``."""
    components = {
        index: _summed_map(source.entries[index], target.entries[index], m) for index, m in fiber_maps.items()
    }
    return PrespectrumMap(source, target, components, name=name)


def suspension_map(h: BaseMorphism, base: BaseObject, truncation: int) -> PrespectrumMap:
    """``Sigma^infty`` of a map of pointed fibers ``h: K -> L``."""
    source_levels, source_fibers, source_maps = _suspension_fibers(h.source, truncation)
    target_levels, target_fibers, target_maps = _suspension_fibers(h.target, truncation)
    source = prespectrum_from_fibers(base, source_fibers, source_maps, truncation, name="SK")
    target = prespectrum_from_fibers(base, target_fibers, target_maps, truncation, name="SL")
    shifted = [
        shift_morphism(h, n, source=source_levels[n], target=target_levels[n]) for n in range(truncation + 1)
    ]
    fiber_maps = {(n, n): shifted[n] for n in range(truncation + 1)}
    for n in range(truncation):
        on_cone = cone_morphism(
            identity(source_levels[n]),
            identity(target_levels[n]),
            shifted[n],
            shifted[n],
            source=source_fibers[(n, n + 1)],
            target=target_fibers[(n, n + 1)],
        )
        fiber_maps[(n, n + 1)] = fiber_maps[(n + 1, n)] = on_cone
    return prespectrum_map_from_fibers(source, target, fiber_maps, name=f"S({source.name}->{target.name})")


def levelwise_cofiber(f: PrespectrumMap) -> Prespectrum:
    """The prespectrum of mapping cones of the fiber components of ``f``."""
    truncation = f.source.truncation
    components = {index: f.fiber_component(index) for index in band_indices(truncation)}
    cones = {index: mapping_cone(m)[0] for index, m in components.items()}
    maps = {
        edge: cone_morphism(
            components[edge[0]],
            components[edge[1]],
            f.source.fiber_map(edge),
            f.target.fiber_map(edge),
            source=cones[edge[0]],
            target=cones[edge[1]],
        )
        for edge in band_edges(truncation)
    }
    return prespectrum_from_fibers(f.source.base, cones, maps, truncation, name=f"cof({f.name})")


def levelwise_tensor(spectrum: Prespectrum, m: BaseObject) -> Prespectrum:
    """Pointed fibers ``K (x) M`` with structure maps ``phi (x) id``."""
    fibers = {index: tensor_many([spectrum.fiber(index), m]) for index in band_indices(spectrum.truncation)}
    maps = {edge: tensor_morphisms([spectrum.fiber_map(edge), identity(m)]) for edge in band_edges(spectrum.truncation)}
    return prespectrum_from_fibers(spectrum.base, fibers, maps, spectrum.truncation, name=f"{spectrum.name}(x)M")


def levelwise_pushout_product(f: PrespectrumMap, g: BaseMorphism) -> PrespectrumMap:
    """
    The pushout-product of ``f`` with a map of complexes ``g: M -> N``, taken
    on pointed fibers at every index.

    Raises:
        StructureMismatch: If ``g`` is not degreewise injective
    """
    if any(linalg.rank(g.block(deg)) != g.source.dim(deg) for deg in g.source.degrees):
        raise StructureMismatch("The pushout-product needs a degreewise injective map of complexes")
    truncation = f.source.truncation
    products = {index: pushout_product(f.fiber_component(index), g) for index in band_indices(truncation)}
    maps = {}
    for edge in band_edges(truncation):
        start, end = products[edge[0]], products[edge[1]]
        maps[edge] = start.pushout.induced(
            compose(end.leg_ad, tensor_morphisms([f.source.fiber_map(edge), identity(g.target)])),
            compose(end.leg_bc, tensor_morphisms([f.target.fiber_map(edge), identity(g.source)])),
            check=True,
        )
    fibers = {index: pp.object for index, pp in products.items()}
    source = prespectrum_from_fibers(f.source.base, fibers, maps, truncation, name=f"{f.name}[]g")
    target = levelwise_tensor(f.target, g.target)
    return prespectrum_map_from_fibers(
        source, target, {index: pp.map for index, pp in products.items()}, name=f"{f.name}[]g"
    )


def stable_equiv_check(f: PrespectrumMap, window: int = DEFAULT_STABILITY_WINDOW) -> bool:
    """
    Whether ``f`` is an isomorphism on every stable homology group determined
    on both sides, read off at the top level.
    """
    source, target = spectrify(f.source, window), spectrify(f.target, window)
    top = f.source.truncation
    component = f.fiber_component((top, top))
    for q in sorted(set(source.values) | set(target.values)):
        s, t = source.value(q), target.value(q)
        if s is None or t is None:
            continue
        if s != t:
            logger.debug(f"{f.name}: stable H_{q} has dimensions {s} and {t}")
            return False
        if s and induced_homology_rank(component, q + top) != s:
            logger.debug(f"{f.name}: stable H_{q} is not mapped isomorphically")
            return False
    return True


# Suspension spectra of A + A


def sigma_infty_plus(base: BaseObject, truncation: int) -> Prespectrum:
    """``Sigma^infty_+ A``: the suspension prespectrum of ``A -> A (+) A -> A``."""
    return suspension_prespectrum(include_coprod(base, base, name="A+A"), truncation)


def sigma_infty_plus_check(
    base: BaseObject, truncation: int, window: int = DEFAULT_STABILITY_WINDOW
) -> Tuple[CheckReport, StableHomology]:
    """Compare the stable homology of ``Sigma^infty_+ A`` with ``H_*(A)``."""
    spectrum = sigma_infty_plus(base, truncation)
    stable = spectrify(spectrum, window)
    report = CheckReport("Sigma^infty_+ A", truncation)
    for q in sorted(set(stable.values) | set(base.degrees)):
        report.tick("stable homology")
        expected, found = homology(base, q), stable.value(q)
        if found != expected:
            report.fail("stable homology", f"degree {q}: stable {found}, H_{q}(A) = {expected}")
    if truncation >= 1:
        report.merge(omega_spectrum_check(spectrum))
    return report, stable
