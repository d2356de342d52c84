"""Unit tests for permutations and group actions."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from operadkit.basecat import (
    GroupAction,
    action_from_generators,
    actions_isomorphic,
    finset,
    from_function,
    groupoid_colimit,
    identity,
    linearize,
    orbit_count,
    trivial_action,
)
from operadkit.basecat.perms import (
    act_on_tuple,
    all_perms,
    closure,
    compose_perms,
    generating_set,
    identity_perm,
    invert_perm,
    transposition,
    young_subgroup,
)
from operadkit.errors import InvalidAction

perm_pairs = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.tuples(st.permutations(list(range(n))), st.permutations(list(range(n))))
)


@pytest.fixture
def two():
    return finset(["a", "b"])


@pytest.fixture
def swap(two):
    return from_function(two, two, {"a": "b", "b": "a"}.__getitem__)


class TestPermutations:
    """Permutation laws."""

    @given(perm_pairs)
    def test_action_on_tuples_respects_products(self, pair):
        a, b = tuple(pair[0]), tuple(pair[1])
        items = tuple(f"x{i}" for i in range(len(a)))
        assert act_on_tuple(compose_perms(a, b), items) == act_on_tuple(a, act_on_tuple(b, items))

    @given(perm_pairs)
    def test_inverse(self, pair):
        a = tuple(pair[0])
        assert compose_perms(a, invert_perm(a)) == identity_perm(len(a))
        assert compose_perms(invert_perm(a), a) == identity_perm(len(a))

    def test_transpositions_generate_symmetric_group(self):
        assert len(closure([transposition(3, 0, 1), transposition(3, 1, 2)], 3)) == 6
        assert len(all_perms(4)) == 24

    def test_young_subgroup(self):
        elements, generators = young_subgroup((2, 1))
        assert elements == ((0, 1, 2), (1, 0, 2))
        assert generators == ((1, 0, 2),)
        assert young_subgroup((1, 1)) == (((0, 1),), ())

    def test_generating_set_generates(self):
        elements = tuple(all_perms(3))
        assert closure(generating_set(elements), 3) == tuple(sorted(elements))

    def test_closure_of_a_subgroup(self):
        cycle = (1, 2, 3, 0)
        generated = closure([cycle], 4)
        assert len(generated) == 4
        assert identity_perm(4) in generated
        assert closure([], 3) == (identity_perm(3),)
        assert closure([(0,)], 1) == ((0,),)

    def test_generating_set_of_subgroups(self):
        assert generating_set([identity_perm(3)]) == ()
        dihedral = closure([(1, 2, 3, 0), (3, 2, 1, 0)], 4)
        assert len(dihedral) == 8
        assert closure(generating_set(dihedral), 4) == dihedral
        assert closure(generating_set(all_perms(4)), 4) == tuple(sorted(all_perms(4)))


class TestGroupAction:
    """Validation and coinvariants of actions."""

    def test_swap_action_is_valid(self, two, swap):
        action = action_from_generators(two, all_perms(2), {(1, 0): swap})
        assert action.verify() is None
        assert orbit_count(action) == 1

    def test_identity_must_act_trivially(self, two, swap):
        action = GroupAction(two, ((0, 1), (1, 0)), ((1, 0),), {(0, 1): swap, (1, 0): swap})
        assert action.verify() == "identity element acts nontrivially"
        with pytest.raises(InvalidAction):
            action.validated()

    def test_product_law_is_checked(self):
        three = finset(["a", "b", "c"])
        cycle = from_function(three, three, {"a": "b", "b": "c", "c": "a"}.__getitem__)
        action = GroupAction(three, ((0, 1), (1, 0)), ((1, 0),), {(0, 1): identity(three), (1, 0): cycle})
        assert "differs" in action.verify()

    def test_trivial_action_orbits(self, two):
        assert orbit_count(trivial_action(two, all_perms(2))) == 2

    def test_linear_coinvariants(self, two, swap):
        action = action_from_generators(two, all_perms(2), {(1, 0): swap})
        linear = linearize(two)
        linear_swap = from_function(linear, linear, {"a": "b", "b": "a"}.__getitem__)
        linear_action = action_from_generators(linear, all_perms(2), {(1, 0): linear_swap})
        assert groupoid_colimit(linear_action).object.size == 1
        assert groupoid_colimit(action).object.size == 1

    def test_isomorphism_invariant(self, two, swap):
        free = action_from_generators(two, all_perms(2), {(1, 0): swap})
        fixed = trivial_action(two, all_perms(2))
        assert actions_isomorphic(free, free)
        assert not actions_isomorphic(free, fixed)
