"""Homology of bounded chain complexes over Q."""

from typing import Dict, Tuple

from operadkit.basecat import linalg
from operadkit.basecat.objects import (
    ONE,
    BaseMorphism,
    BaseObject,
    chainq,
    from_images,
)
from operadkit.config.constants import Variant
from operadkit.errors import WrongVariant


def _require_chain(obj: BaseObject) -> None:
    if obj.variant != Variant.CHAINQ:
        raise WrongVariant(f"Homology is defined for chainq objects, not {obj.variant.value}")


def homology(x: BaseObject, degree: int) -> int:
    """Dimension of ``ker d_degree / im d_{degree+1}``."""
    _require_chain(x)
    cycles = x.dim(degree) - linalg.rank(x.d(degree))
    return cycles - linalg.rank(x.d(degree + 1))


def homology_table(x: BaseObject) -> Dict[int, int]:
    """Nonzero homology dimensions by degree."""
    _require_chain(x)
    table = {deg: homology(x, deg) for deg in x.degrees}
    return {deg: dim for deg, dim in table.items() if dim}


def is_acyclic(x: BaseObject) -> bool:
    return not homology_table(x)


def induced_homology_rank(f: BaseMorphism, degree: int) -> int:
    """Rank of ``H_degree(f)``."""
    _require_chain(f.source)
    cycles, _ = linalg.nullspace(f.source.d(degree))
    boundaries = f.target.d(degree + 1)
    images = linalg.matmul(f.block(degree), cycles)
    height = f.target.dim(degree)
    return linalg.rank(linalg.hstack([boundaries, images], height)) - linalg.rank(boundaries)


def combined_degrees(f: BaseMorphism):
    return sorted(set(f.source.degrees) | set(f.target.degrees))


def is_quasi_iso(f: BaseMorphism) -> bool:
    """Whether ``f`` induces isomorphisms on homology in every degree."""
    _require_chain(f.source)
    return quasi_iso_failure(f) is None


def quasi_iso_failure(f: BaseMorphism):
    """First degree where ``H(f)`` is not an isomorphism, or None."""
    for deg in combined_degrees(f):
        source, target = homology(f.source, deg), homology(f.target, deg)
        if source != target or induced_homology_rank(f, deg) != source:
            return deg
    return None


def shift(x: BaseObject, k: int) -> BaseObject:
    """``x`` with degrees raised by ``k`` and differential multiplied by ``(-1)^k``."""
    _require_chain(x)
    sign = -1 if k % 2 else 1
    basis = {deg + k: labels for deg, labels in x.basis.items()}
    differential = {deg + k: matrix * sign for deg, matrix in x.differential.items()}
    return chainq(basis, differential)


def shift_morphism(f: BaseMorphism, k: int, source: BaseObject = None, target: BaseObject = None) -> BaseMorphism:
    source = source or shift(f.source, k)
    target = target or shift(f.target, k)
    return from_images(source, target, f.image_vector)


def mapping_cone(f: BaseMorphism) -> Tuple[BaseObject, BaseMorphism]:
    """
    Mapping cone ``cone_n = S_{n-1} + T_n`` with ``d(s, t) = (-ds, f(s) + dt)``.

    Labels are ``("s", a)`` for the shifted source and ``("t", b)`` for the
    target. Returns the cone and the inclusion of the target.
    """
    _require_chain(f.source)
    source, target = f.source, f.target
    basis: Dict[int, list] = {}
    for deg, labels in source.basis.items():
        basis.setdefault(deg + 1, []).extend(("s", a) for a in labels)
    for deg, labels in target.basis.items():
        basis.setdefault(deg, []).extend(("t", b) for b in labels)
    index = {label: pos for labels in basis.values() for pos, label in enumerate(labels)}
    differential = {}
    for deg, labels in basis.items():
        if deg - 1 not in basis:
            continue
        matrix = linalg.zero_matrix(len(basis[deg - 1]), len(labels))
        for col, (tag, label) in enumerate(labels):
            if tag == "s":
                for image, coeff in source.boundary(label).items():
                    matrix[index[("s", image)], col] -= coeff
                for coeff, image in f.images(label):
                    matrix[index[("t", image)], col] += coeff
            else:
                for image, coeff in target.boundary(label).items():
                    matrix[index[("t", image)], col] += coeff
        differential[deg] = matrix
    cone = chainq(basis, differential)
    inclusion = from_images(target, cone, lambda b: {("t", b): ONE})
    return cone, inclusion


def zero_complex() -> BaseObject:
    return chainq({})

