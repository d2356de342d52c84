"""
Seeded random instances for the verification suites.

Everything generated here is valid by construction: G-set entries are unions
of coset actions, operads come from the library or from closed profile sets,
and chain complexes get differentials drawn inside the kernel of the previous
one.
"""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import Matrix

from operadkit.basecat import (
    BaseMorphism,
    BaseObject,
    GroupAction,
    action_from_function,
    chainq,
    coproduct,
    from_images,
    homology_table,
    identity,
    mapping_cone,
)
from operadkit.basecat import linalg
from operadkit.basecat.perms import Perm, closure, compose_perms
from operadkit.config.constants import Variant
from operadkit.errors import BoundsTooTight, WrongVariant
from operadkit.operads import Operad, ass, com, linearize_operad, random_profile_operad
from operadkit.symseq import ColorSet, OrbitSignature, SymmetricSequence, orbits_up_to
from operadkit.algmod import (
    Algebra,
    OAlgebra,
    colored_cyclic_monoid,
    cyclic_monoid,
    initial_algebra,
    pointed_oalgebra,
)
from operadkit.stabletangent import OverUnder

logger = logging.getLogger(__name__)

COLOR_NAMES = ("a", "b", "c")
MAX_COLORS = 3
MAX_ARITY = 4
MAX_ENTRY = 4
COMPLEX_DEGREES = (0, 4)


class InstanceSpec(BaseModel):
    """Bounds and seed of a generated instance."""

    model_config = ConfigDict(frozen=True)

    variant: Variant = Variant.FINSET
    colors: int = 1
    arity_bound: int = 3
    entry_bound: int = 3
    seed: int = 0
    truncation: int = 6

    @model_validator(mode="after")
    def _check_bounds(self):
        if not 1 <= self.colors <= MAX_COLORS:
            raise BoundsTooTight(f"Color count must lie in 1..{MAX_COLORS}, got {self.colors}")
        if not 1 <= self.arity_bound <= MAX_ARITY:
            raise BoundsTooTight(f"Arity bound must lie in 1..{MAX_ARITY}, got {self.arity_bound}")
        if not 1 <= self.entry_bound <= MAX_ENTRY:
            raise BoundsTooTight(f"Entry bound must lie in 1..{MAX_ENTRY}, got {self.entry_bound}")
        if self.truncation < 1:
            raise BoundsTooTight(f"Truncation must be at least 1, got {self.truncation}")
        return self

    def rng(self, salt: int = 0) -> random.Random:
        return random.Random(self.seed * 7919 + salt)

    def color_set(self) -> ColorSet:
        return ColorSet(COLOR_NAMES[: self.colors])

    def with_seed(self, seed: int) -> "InstanceSpec":
        return self.model_copy(update={"seed": seed})


# Symmetric sequences


def sign(g: Perm) -> int:
    inversions = sum(1 for i in range(len(g)) for j in range(i + 1, len(g)) if g[i] > g[j])
    return -1 if inversions % 2 else 1


def _random_subgroup(rng: random.Random, key: OrbitSignature) -> Tuple[Perm, ...]:
    elements = key.aut
    chosen = [rng.choice(elements) for _ in range(rng.randint(0, 2))]
    return closure(chosen, key.arity)


def _cosets(key: OrbitSignature, subgroup: Sequence[Perm]) -> List[Tuple[Perm, ...]]:
    found: List[Tuple[Perm, ...]] = []
    for g in key.aut:
        coset = tuple(sorted(compose_perms(g, h) for h in subgroup))
        if coset not in found:
            found.append(coset)
    return found


def random_entry(
    rng: random.Random, key: OrbitSignature, variant: Variant, entry_bound: int, tag: str = "x"
) -> Optional[GroupAction]:
    """
    A union of coset actions of ``Aut(key)`` with at most ``entry_bound``
    elements; VectQ entries are linearized and may carry a sign summand.
    """
    if variant == Variant.CHAINQ:
        raise WrongVariant("Random sequence entries live in finset or vectq")
    orbits: List[List[Tuple[Perm, ...]]] = []
    size = 0
    for _ in range(rng.randint(1, entry_bound)):
        cosets = _cosets(key, _random_subgroup(rng, key))
        if size + len(cosets) <= entry_bound:
            orbits.append(cosets)
            size += len(cosets)
    with_sign = variant == Variant.VECTQ and key.arity >= 2 and size < entry_bound and rng.random() < 0.3
    if not orbits and not with_sign:
        return None
    labels = [f"{tag}{j}.{i}" for j, cosets in enumerate(orbits) for i in range(len(cosets))]
    sign_label = f"{tag}sgn"
    if with_sign:
        labels.append(sign_label)
    obj = BaseObject(variant, {0: tuple(labels)})
    position = {f"{tag}{j}.{i}": (j, i) for j, cosets in enumerate(orbits) for i in range(len(cosets))}

    def moved(label: str, g: Perm) -> str:
        j, i = position[label]
        cosets = orbits[j]
        target = compose_perms(g, cosets[i][0])
        return f"{tag}{j}.{next(k for k, c in enumerate(cosets) if target in c)}"

    def act(g: Perm) -> BaseMorphism:
        return from_images(
            obj, obj, lambda label: {label: sign(g)} if label == sign_label else {moved(label, g): 1}
        )

    return action_from_function(obj, key.aut, act, key.aut_generators)


def random_sequence(
    spec: InstanceSpec,
    rng: random.Random,
    min_arity: int = 0,
    density: float = 0.35,
    tag: str = "x",
) -> SymmetricSequence:
    """
    A random sequence supported in arities ``min_arity .. arity_bound`` with
    at least one entry of positive arity.
    """
    colors = spec.color_set()
    keys = [key for key in orbits_up_to(colors, spec.arity_bound) if key.arity >= min_arity]
    entries: Dict[OrbitSignature, GroupAction] = {}
    for key in keys:
        if rng.random() < density:
            action = random_entry(rng, key, spec.variant, spec.entry_bound, tag)
            if action is not None:
                entries[key] = action
    if not any(key.arity for key in entries):
        key = rng.choice([key for key in keys if key.arity])
        obj = BaseObject(spec.variant, {0: (f"{tag}0.0",)})
        entries[key] = action_from_function(obj, key.aut, lambda g: identity(obj), key.aut_generators)
    return SymmetricSequence(colors, spec.variant, spec.arity_bound, entries)


# Operads and algebras


def random_operad(spec: InstanceSpec, rng: random.Random) -> Operad:
    """
    A library operad (one color) or a random profile operad over com or ass
    (several colors), linearized for VectQ.
    """
    if spec.variant == Variant.CHAINQ:
        raise WrongVariant("Random operads live in finset or vectq")
    bound = spec.arity_bound
    if spec.colors == 1:
        unital, build = rng.choice([True, False]), rng.choice([com, ass])
        p = build(bound, unital=unital)
    else:
        base = rng.choice([com, ass])(bound)
        p = random_profile_operad(rng, spec.color_set(), bound, base=base, generator_count=rng.randint(1, 3))
    return linearize_operad(p) if spec.variant == Variant.VECTQ else p


def random_algebra(p: Operad, rng: random.Random, entry_bound: int) -> Algebra:
    """A cyclic monoid over FinSet operads, spread over every color when there are several, else the initial algebra."""
    if p.variant != Variant.FINSET:
        return initial_algebra(p)
    order = rng.randint(1, min(3, entry_bound))
    if len(p.colors) == 1:
        return cyclic_monoid(p, order)
    return colored_cyclic_monoid(p, order)


def random_oalgebra(p: Operad, rng: random.Random, entry_bound: int) -> OAlgebra:
    """``P_0 + extra`` with at least one extra element at the first color."""
    extra = {}
    for index, color in enumerate(p.colors):
        least = 1 if index == 0 else 0
        room = min(2, entry_bound - p.nullary(color).size)
        extra[color] = tuple(f"x{index}{i}" for i in range(rng.randint(least, max(room, least))))
    return pointed_oalgebra(p, extra, augmented=rng.random() < 0.5)


@dataclass(frozen=True)
class Instance:
    """One operad with an algebra and an algebra under its nullary operations."""

    spec: InstanceSpec
    operad: Operad
    algebra: Algebra
    oalgebra: OAlgebra


def generate(spec: InstanceSpec) -> Instance:
    """
    Random operad, algebra and O-algebra for ``spec``, deterministic per seed.

    Raises:
        WrongVariant: If ``spec`` asks for chain complexes
    """
    rng = spec.rng()
    p = random_operad(spec, rng)
    instance = Instance(spec, p, random_algebra(p, rng, spec.entry_bound), random_oalgebra(p, rng, spec.entry_bound))
    logger.debug(f"Seed {spec.seed}: {p.name} with {len(p.orbits())} orbits")
    return instance


# Chain complexes


def _random_matrix(rng: random.Random, rows: int, cols: int, spread: int = 1) -> Matrix:
    if not rows or not cols:
        return linalg.zero_matrix(rows, cols)
    return Matrix(rows, cols, [rng.randint(-spread, spread) for _ in range(rows * cols)])


def random_complex(
    rng: random.Random, max_dim: int, degrees: Tuple[int, int] = COMPLEX_DEGREES, tag: str = "e"
) -> BaseObject:
    """
    A bounded complex with nonzero homology and at most ``max_dim``
    generators per degree; ``d_n`` is a random combination of a kernel basis
    of ``d_{n-1}``.
    """
    lo, hi = degrees
    dims = {deg: rng.randint(0, max_dim) for deg in range(lo, hi + 1)}
    differential: Dict[int, Matrix] = {}
    for deg in range(lo + 1, hi + 1):
        below = differential.get(deg - 1, linalg.zero_matrix(dims.get(deg - 2, 0), dims[deg - 1]))
        kernel, _ = linalg.nullspace(below)
        if kernel.cols and dims[deg]:
            differential[deg] = linalg.matmul(kernel, _random_matrix(rng, kernel.cols, dims[deg]))
    basis = {deg: [f"{tag}{deg}.{i}" for i in range(n)] for deg, n in dims.items()}
    x = chainq(basis, differential)
    if any(homology_table(x).values()):
        return x
    # one more cycle on top
    basis[hi].append(f"{tag}{hi}.{dims[hi]}")
    if hi in differential:
        differential[hi] = differential[hi].row_join(linalg.zero_matrix(dims[hi - 1], 1))
    return chainq(basis, differential)


def random_acyclic(rng: random.Random, max_dim: int, tag: str = "z") -> BaseObject:
    """The cone of an identity."""
    return mapping_cone(identity(random_complex(rng, max_dim, tag=tag)))[0]


def random_injection(rng: random.Random, max_dim: int) -> BaseMorphism:
    """``M -> M (+) N`` with ``N`` not acyclic."""
    summed = coproduct([random_complex(rng, max_dim, tag="m"), random_complex(rng, max_dim, tag="n")])
    return summed.injections[0]


def _unipotent(rng: random.Random, size: int) -> Matrix:
    result = linalg.identity_matrix(size)
    for i in range(size):
        for j in range(i + 1, size):
            result[i, j] = rng.randint(0, 1)
    return result


def _inverse(matrix: Matrix) -> Matrix:
    return matrix if matrix.rows == 0 else matrix.inv()


def _block(top_left: Matrix, top_right: Matrix, bottom_left: Matrix, bottom_right: Matrix) -> Matrix:
    rows = top_left.rows + bottom_left.rows
    cols = top_left.cols + top_right.cols
    result = linalg.zero_matrix(rows, cols)
    for r0, c0, part in (
        (0, 0, top_left),
        (0, top_left.cols, top_right),
        (top_left.rows, 0, bottom_left),
        (top_left.rows, top_left.cols, bottom_right),
    ):
        for r in range(part.rows):
            for c in range(part.cols):
                result[r0 + r, c0 + c] = part[r, c]
    return result


def random_over_under(rng: random.Random, max_dim: int, name: str = "X") -> OverUnder:
    """
    ``A -> C -> A`` with ``C = K (+) A`` under the twisted differential
    ``[[d_K, d_K h - h d_A], [0, d_A]]``, section ``a -> (-h a, a)``, then
    written in a random unipotent basis. The fiber ``K`` is not acyclic.
    """
    k = random_complex(rng, max_dim, tag="k")
    a = random_complex(rng, max_dim, tag="a")
    lo, hi = COMPLEX_DEGREES
    degrees = range(lo, hi + 1)
    h = {deg: _random_matrix(rng, k.dim(deg), a.dim(deg)) for deg in range(lo - 1, hi + 1)}
    change = {deg: _unipotent(rng, k.dim(deg) + a.dim(deg)) for deg in range(lo - 1, hi + 1)}
    differential, section, retraction = {}, {}, {}
    for deg in degrees:
        twist = linalg.matmul(k.d(deg), h[deg]) - linalg.matmul(h[deg - 1], a.d(deg))
        raw = _block(k.d(deg), twist, linalg.zero_matrix(a.dim(deg - 1), k.dim(deg)), a.d(deg))
        differential[deg] = linalg.matmul(linalg.matmul(change[deg - 1], raw), _inverse(change[deg]))
        unit = linalg.identity_matrix(a.dim(deg))
        lift = _block(-h[deg], linalg.zero_matrix(k.dim(deg), 0), unit, linalg.zero_matrix(a.dim(deg), 0))
        section[deg] = linalg.matmul(change[deg], lift)
        project = _block(
            linalg.zero_matrix(0, k.dim(deg)),
            linalg.zero_matrix(0, a.dim(deg)),
            linalg.zero_matrix(a.dim(deg), k.dim(deg)),
            unit,
        )
        retraction[deg] = linalg.matmul(project, _inverse(change[deg]))
    basis = {deg: [f"c{deg}.{i}" for i in range(k.dim(deg) + a.dim(deg))] for deg in degrees}
    total = chainq(basis, {deg: m for deg, m in differential.items() if deg - 1 in basis})
    return OverUnder(
        a,
        total,
        BaseMorphism(a, total, blocks=section),
        BaseMorphism(total, a, blocks=retraction),
        name=name,
    )
