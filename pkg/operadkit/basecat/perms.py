"""Permutations of tuple positions.

A permutation of n points is a tuple ``s`` with ``s[i]`` the image of ``i``.
Products read right to left: ``compose_perms(a, b)[i] == a[b[i]]``.
"""

from functools import lru_cache
from itertools import permutations
from typing import Iterable, List, Sequence, Tuple

from sympy.combinatorics import Permutation, PermutationGroup

Perm = Tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose_perms(a: Perm, b: Perm) -> Perm:
    """The permutation ``a . b`` (apply ``b`` first)."""
    return tuple(a[i] for i in b)


def invert_perm(a: Perm) -> Perm:
    inverse = [0] * len(a)
    for i, image in enumerate(a):
        inverse[image] = i
    return tuple(inverse)


def act_on_tuple(perm: Perm, items: Sequence) -> tuple:
    """Move the entry at position ``i`` to position ``perm[i]``."""
    result = [None] * len(items)
    for i, item in enumerate(items):
        result[perm[i]] = item
    return tuple(result)


def block_sum(a: Perm, b: Perm) -> Perm:
    """``a`` on the first points and ``b`` shifted onto the remaining ones."""
    offset = len(a)
    return tuple(a) + tuple(offset + i for i in b)


def transposition(n: int, i: int, j: int) -> Perm:
    image = list(range(n))
    image[i], image[j] = image[j], image[i]
    return tuple(image)


def all_perms(n: int) -> List[Perm]:
    return [tuple(p) for p in permutations(range(n))]


@lru_cache(maxsize=None)
def young_subgroup(block_sizes: Tuple[int, ...]) -> Tuple[Tuple[Perm, ...], Tuple[Perm, ...]]:
    """
    Young subgroup preserving consecutive blocks of the given sizes.

    Args:
        block_sizes: sizes of consecutive position blocks

    Returns:
        (elements, generators), elements sorted with the identity first and
        generators the adjacent transpositions inside each block.
    """
    n = sum(block_sizes)
    generators: List[Perm] = []
    start = 0
    for size in block_sizes:
        for i in range(start, start + size - 1):
            generators.append(transposition(n, i, i + 1))
        start += size
    if not generators:
        return (identity_perm(n),), ()
    group = PermutationGroup([Permutation(list(g)) for g in generators])
    elements = sorted(tuple(p.array_form) for p in group.generate())
    return tuple(elements), tuple(generators)


def _group(generators: Iterable[Perm], n: int) -> PermutationGroup:
    gens = [Permutation(list(g), size=n) for g in generators]
    return PermutationGroup(gens or [Permutation(list(range(n)), size=n)])


def closure(generators: Iterable[Perm], n: int) -> Tuple[Perm, ...]:
    """All products of the generators, sorted."""
    if n <= 1:
        return (identity_perm(n),)
    return tuple(sorted(tuple(p.array_form) for p in _group(generators, n).generate()))


def generating_set(elements: Sequence[Perm]) -> Tuple[Perm, ...]:
    """A strong generating set of the group formed by ``elements``."""
    if not elements or len(elements[0]) <= 1:
        return ()
    group = _group(elements, len(elements[0]))
    return tuple(sorted({tuple(g.array_form) for g in group.strong_gens if not g.is_Identity}))


def conjugate(g: Perm, h: Perm) -> Perm:
    """``g h g^-1``."""
    return compose_perms(compose_perms(g, h), invert_perm(g))
