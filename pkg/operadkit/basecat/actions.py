"""Finite permutation groups acting on base objects."""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, Optional, Sequence, Tuple

from operadkit.basecat import linalg
from operadkit.basecat.colimits import Quotient, quotient_by_relations
from operadkit.basecat.objects import (
    BaseMorphism,
    BaseObject,
    compose,
    identity,
    initial_object,
    morphisms_equal,
    same_object,
)
from operadkit.basecat.perms import Perm, compose_perms, conjugate, generating_set, identity_perm
from operadkit.config.constants import Variant
from operadkit.errors import InvalidAction

logger = logging.getLogger(__name__)

DEFAULT_MAX_EXACT_ORDER = 5040
DEFAULT_WORD_LENGTH = 4


@dataclass(frozen=True)
class GroupAction:
    """
    A permutation group acting on a base object by automorphisms.

    ``maps`` holds the automorphism of every group element; ``generators``
    generate ``elements``.
    """

    object: BaseObject
    elements: Tuple[Perm, ...]
    generators: Tuple[Perm, ...]
    maps: Dict[Perm, BaseMorphism]

    @property
    def degree(self) -> int:
        return len(self.elements[0])

    @property
    def order(self) -> int:
        return len(self.elements)

    def __call__(self, g: Perm) -> BaseMorphism:
        return self.maps[g]

    def verify(
        self,
        max_exact_order: int = DEFAULT_MAX_EXACT_ORDER,
        word_length: int = DEFAULT_WORD_LENGTH,
    ) -> Optional[str]:
        """
        Check the identity and product laws.

        All elements are checked against all generators when the group has at
        most ``max_exact_order`` elements; larger groups are checked on
        generator words up to ``word_length``.

        Returns:
            None when the action is valid, else a description of a failure
        """
        unit = identity_perm(self.degree)
        if unit not in self.maps:
            return "identity element has no action"
        if morphisms_equal(self.maps[unit], identity(self.object)) is not None:
            return "identity element acts nontrivially"
        for g, m in self.maps.items():
            if not (same_object(m.source, self.object) and same_object(m.target, self.object)):
                return f"action of {g} is not an endomorphism"
        if self.order <= max_exact_order:
            left: Sequence[Perm] = self.elements
        else:
            words = [unit]
            for _ in range(word_length - 1):
                words = list({compose_perms(w, h) for w, h in product(words, self.generators)})
            left = words
        for g in left:
            for h in self.generators:
                gh = compose_perms(g, h)
                if gh not in self.maps:
                    return f"product {g}*{h} is not a group element"
                witness = morphisms_equal(self.maps[gh], compose(self.maps[g], self.maps[h]))
                if witness is not None:
                    return f"action({g}*{h}) differs from action({g}) . action({h}) at {witness[0]!r}"
        return None

    def validated(self, **kwargs) -> "GroupAction":
        failure = self.verify(**kwargs)
        if failure is not None:
            raise InvalidAction(failure)
        return self


def action_from_function(
    obj: BaseObject,
    elements: Sequence[Perm],
    function: Callable[[Perm], BaseMorphism],
    generators: Optional[Sequence[Perm]] = None,
) -> GroupAction:
    elements = tuple(sorted(elements))
    if generators is None:
        generators = generating_set(elements)
    return GroupAction(obj, elements, tuple(generators), {g: function(g) for g in elements})


def action_from_generators(
    obj: BaseObject,
    elements: Sequence[Perm],
    generator_maps: Dict[Perm, BaseMorphism],
) -> GroupAction:
    """
    Extend automorphisms given on generators to the whole group.

    Raises:
        InvalidAction: If the generators do not reach every element
    """
    elements = tuple(sorted(elements))
    unit = identity_perm(len(elements[0]))
    maps = {unit: identity(obj)}
    frontier = [unit]
    while frontier:
        g = frontier.pop()
        for h, m in generator_maps.items():
            gh = compose_perms(g, h)
            if gh not in maps:
                maps[gh] = compose(maps[g], m)
                frontier.append(gh)
    if set(maps) != set(elements):
        raise InvalidAction("Generators do not generate the acting group")
    return GroupAction(obj, elements, tuple(sorted(generator_maps)), maps)


def trivial_action(
    obj: BaseObject, elements: Sequence[Perm], generators: Optional[Sequence[Perm]] = None
) -> GroupAction:
    unit = identity(obj)
    return action_from_function(obj, elements, lambda g: unit, generators)


def empty_action(
    variant: Variant, elements: Sequence[Perm], generators: Optional[Sequence[Perm]] = None
) -> GroupAction:
    return trivial_action(initial_object(variant), elements, generators)


def groupoid_colimit(action: GroupAction, validate: bool = True) -> Quotient:
    """
    Coinvariants of a group action: orbits for FinSet, the cokernel of
    ``g - id`` over the generators for linear bases.

    Raises:
        InvalidAction: If ``validate`` is set and the action is not valid
    """
    if validate:
        action.validated()
    unit = identity(action.object)
    relations = [(action(g), unit) for g in action.generators]
    return quotient_by_relations(action.object, relations)


def induced_action(action: GroupAction, quotient: Quotient, maps: Dict[Perm, BaseMorphism]) -> GroupAction:
    """Action on a quotient induced by cover automorphisms ``maps``."""
    return GroupAction(
        quotient.object,
        action.elements,
        action.generators,
        {g: quotient.descend(compose(quotient.projection, maps[g])) for g in action.elements},
    )


# Isomorphism-type invariants


def _subgroup_class(subgroup: Sequence[Perm], elements: Sequence[Perm]) -> Tuple[Perm, ...]:
    return min(tuple(sorted(conjugate(g, h) for h in subgroup)) for g in elements)


def action_signature(action: GroupAction) -> tuple:
    """
    Complete isomorphism invariant of an action.

    FinSet: the sorted multiset of stabilizer conjugacy classes over orbits.
    Linear: the per-degree character over the sorted group elements.
    """
    obj = action.object
    if obj.variant == Variant.FINSET:
        seen = set()
        classes = []
        for label in obj.labels:
            if label in seen:
                continue
            orbit = {action(g)(label) for g in action.elements}
            seen |= orbit
            stabilizer = [g for g in action.elements if action(g)(label) == label]
            classes.append((len(orbit), _subgroup_class(stabilizer, action.elements)))
        return ("finset", tuple(sorted(classes)))
    characters = []
    for deg in obj.degrees:
        characters.append((deg, tuple(linalg.trace(action(g).block(deg)) for g in action.elements)))
    return (obj.variant.value, tuple(characters))


def actions_isomorphic(a: GroupAction, b: GroupAction) -> bool:
    if a.elements != b.elements:
        return False
    return action_signature(a) == action_signature(b)


def orbit_count(action: GroupAction) -> int:
    """Number of orbits (FinSet) or dimension of coinvariants (linear)."""
    return groupoid_colimit(action, validate=False).object.size

