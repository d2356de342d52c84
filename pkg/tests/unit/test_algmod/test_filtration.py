"""Unit tests for the skeletal filtration of free algebras and its identifications."""

import pytest

from operadkit.algmod import (
    augmentation_failure,
    check_algebra,
    compare_with_oracle,
    compare_with_pushout_product,
    compute1_check,
    compute2_check,
    free_algebra_filtration,
    lq_n_pushout_check,
    pointed_oalgebra,
    q_object,
)
from operadkit.errors import NonFinitary, StructureMismatch
from operadkit.basecat import compose, morphisms_equal
from operadkit.operads import close_profiles, com, profile_operad
from operadkit.symseq import ColorSet, OrbitSignature


@pytest.fixture
def p():
    return com(3)


@pytest.fixture
def x(p):
    return pointed_oalgebra(p, {"c": ("x",)})


@pytest.fixture
def colored():
    """com pulled back to ``a <- b``, ``a <- a a`` and constants in both colors."""
    colors = ColorSet(("a", "b"))
    generators = [OrbitSignature("a", ("b",)), OrbitSignature("a", ("a", "a")), OrbitSignature("b", ())]
    q = profile_operad(colors, close_profiles(colors, generators, 3), com(3))
    return q, pointed_oalgebra(q, {"a": ("x",), "b": ("y",)})


class TestFiltration:
    """Stages of ``P o_O X`` built by pushouts."""

    def test_monomials_in_one_variable(self, p, x):
        stages = free_algebra_filtration(p, x, 3)
        assert [stage.object("c").size for stage in stages] == [1, 2, 3, 4]

    def test_monomials_in_two_variables(self, p):
        xy = pointed_oalgebra(p, {"c": ("x", "y")})
        assert [stage.sizes()["c"] for stage in free_algebra_filtration(p, xy, 3)] == [1, 3, 6, 10]

    def test_stages_agree_with_oracle(self, p, x):
        for stage in free_algebra_filtration(p, x, 3)[1:]:
            assert compare_with_oracle(stage).passed

    def test_oracle_of_lower_arity_disagrees(self, p, x):
        stage = free_algebra_filtration(p, x, 3)[-1]
        assert not compare_with_oracle(stage, oracle_arity=2).passed

    def test_truncated_operad_stops_at_bound(self, p, x):
        with pytest.raises(NonFinitary):
            free_algebra_filtration(p, x, 4)

    def test_algebra_of_another_operad(self, x):
        with pytest.raises(StructureMismatch):
            free_algebra_filtration(com(3), x, 2)

    def test_extra_label_clash(self, p):
        with pytest.raises(StructureMismatch):
            pointed_oalgebra(p, {"c": ("*",)})

    def test_stages_are_algebras_over_the_one_skeleton(self, p, x, colored):
        for q, pointed in ((p, x), colored):
            for stage in free_algebra_filtration(q, pointed, 3):
                assert check_algebra(stage.as_algebra()).passed

    def test_unary_action_extends_the_previous_stage(self, colored):
        q, pointed = colored
        key = OrbitSignature("a", ("b",))
        stages = free_algebra_filtration(q, pointed, 3)
        for previous, stage in zip(stages, stages[1:]):
            left = compose(stage.unary_action(key, "*"), stage.inclusions["b"])
            right = compose(stage.inclusions["a"], previous.unary_action(key, "*"))
            assert morphisms_equal(left, right) is None

    def test_unary_action_sends_generators_to_composites(self, colored):
        q, pointed = colored
        key = OrbitSignature("a", ("b",))
        stage = free_algebra_filtration(q, pointed, 2)[-1]
        y = stage.iota(OrbitSignature("b", ("b",)), "*", ("y",))
        assert stage.unary_action(key, "*").apply(y) == stage.iota(key, "*", ("y",))

    def test_augmentation_propagates(self, p, colored):
        xy = pointed_oalgebra(p, {"c": ("x", "y")})
        for q, pointed in ((p, xy), colored):
            for stage in free_algebra_filtration(q, pointed, 3):
                assert stage.augmentation is not None
                assert augmentation_failure(stage) is None

    def test_augmentation_needs_an_augmented_algebra(self, p):
        plain = pointed_oalgebra(p, {"c": ("x",)}, augmented=False)
        stage = free_algebra_filtration(p, plain, 2)[-1]
        assert stage.augmentation is None
        with pytest.raises(StructureMismatch):
            augmentation_failure(stage)


class TestQObject:
    """``Q(X, w)`` against the iterated pushout-product of basepoints."""

    def test_binary_corner(self, x):
        q = q_object(x.basepoints, OrbitSignature("c", ("c", "c")))
        assert q.object.size == 3
        comparison, failure = compare_with_pushout_product(q, x.basepoints)
        assert failure is None
        assert comparison.is_isomorphism

    def test_needs_a_slot(self, x):
        with pytest.raises(StructureMismatch):
            q_object(x.basepoints, OrbitSignature("c", ()))


class TestIdentifications:
    """The attaching squares recomputed as composites."""

    @pytest.mark.parametrize("n", [2, 3])
    def test_skeleton_pushout(self, p, n):
        assert lq_n_pushout_check(p, n).passed

    def test_skeleton_pushout_without_top_cell(self, p):
        assert not lq_n_pushout_check(p, 2, drop_top_cell=True).passed

    @pytest.mark.parametrize("n", [2, 3])
    def test_relative_composite_matches_l(self, p, x, n):
        assert compute1_check(p, x, n, "c").passed

    def test_constant_q_map_detected(self, p, x):
        assert not compute1_check(p, x, 2, "c", corrupt_q_map=True).passed

    @pytest.mark.parametrize("n", [2, 3])
    def test_r_maps_as_cobase_change(self, p, x, n):
        assert compute2_check(p, x, n, "c").passed

    def test_wrong_cobase_detected(self, p, x):
        assert not compute2_check(p, x, 2, "c", corrupt_cobase=True).passed

    def test_attaching_starts_at_arity_two(self, p, x):
        with pytest.raises(StructureMismatch):
            compute1_check(p, x, 1, "c")
