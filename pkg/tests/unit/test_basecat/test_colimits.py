"""Unit tests for finite colimits."""

import pytest

from operadkit.basecat import (
    braiding,
    coequalizer,
    compose,
    finset,
    from_function,
    from_images,
    is_isomorphism,
    iterated_pushout_product,
    morphisms_equal,
    permute_factors,
    pushout,
    pushout_product,
    vectq,
)
from operadkit.errors import SourceMismatch, StructureMismatch


@pytest.fixture
def point_into_two():
    """The inclusion ``{0} -> {0, 1}``."""
    return from_function(finset([0]), finset([0, 1]), lambda label: label)


class TestPushout:
    """Pushouts of spans."""

    def test_gluing_along_a_point(self):
        a = finset(["a"])
        f = from_function(a, finset(["b1", "b2"]), lambda label: "b1")
        g = from_function(a, finset(["c"]), lambda label: "c")
        result = pushout(f, g)
        assert result.object.size == 2
        assert result.leg_b("b1") == result.leg_c("c")

    def test_sources_must_agree(self, point_into_two):
        other = from_function(finset(["z"]), finset(["z"]), lambda label: label)
        with pytest.raises(SourceMismatch):
            pushout(point_into_two, other)

    def test_induced_map_checks_factorization(self):
        a = finset(["a"])
        f = from_function(a, finset(["b"]), lambda label: "b")
        g = from_function(a, finset(["c"]), lambda label: "c")
        result = pushout(f, g)
        target = finset(["t"])
        induced = result.induced(
            from_function(f.target, target, lambda label: "t"),
            from_function(g.target, target, lambda label: "t"),
            check=True,
        )
        assert induced.source.size == 1


class TestCoequalizer:
    """Quotients of linear and finite objects."""

    def test_linear_coequalizer_drops_a_dimension(self):
        v1, v2 = vectq(1), vectq(2)
        f = from_images(v1, v2, lambda label: {"e0": 1})
        g = from_images(v1, v2, lambda label: {"e1": 1})
        quotient = coequalizer(f, g)
        assert quotient.object.size == 1
        assert quotient.project({"e0": 1}) == quotient.project({"e1": 1})

    def test_scaled_relation(self):
        v1, v2 = vectq(1), vectq(2)
        f = from_images(v1, v2, lambda label: {"e0": 2})
        g = from_images(v1, v2, lambda label: {"e1": 1})
        quotient = coequalizer(f, g)
        assert quotient.object.size == 1

    def test_finset_coequalizer_merges_classes(self):
        source, target = finset(["s"]), finset(["x", "y", "z"])
        quotient = coequalizer(
            from_function(source, target, lambda label: "x"), from_function(source, target, lambda label: "y")
        )
        assert quotient.object.size == 2


class TestPushoutProduct:
    """Pushout-products of monomorphisms."""

    def test_corner_of_a_square(self, point_into_two):
        result = pushout_product(point_into_two, point_into_two)
        assert result.object.size == 3
        assert result.map.target.size == 4
        assert len(set(result.map.table.values())) == 3

    def test_iterated_of_one_map_is_the_map(self, point_into_two):
        assert iterated_pushout_product([point_into_two]).map is point_into_two

    def test_iterated_cube(self, point_into_two):
        result = iterated_pushout_product([point_into_two] * 3)
        assert result.object.size == 7
        assert is_isomorphism(result.flatten())

    def test_iterated_needs_a_map(self):
        with pytest.raises(StructureMismatch):
            iterated_pushout_product([])

    def test_braiding_lies_over_the_symmetry(self, point_into_two):
        point_into_three = from_function(finset([0]), finset([0, 1, 2]), lambda label: label)
        first = pushout_product(point_into_two, point_into_three)
        second = pushout_product(point_into_three, point_into_two)
        assert first.object.size == 4
        beta = braiding(first, second)
        assert is_isomorphism(beta)
        swap = permute_factors([point_into_two.target, point_into_three.target], (1, 0))
        assert morphisms_equal(compose(second.map, beta), compose(swap, first.map)) is None

    def test_linear_braiding(self):
        f = from_images(vectq(1), vectq(2), lambda label: {"e0": 1, "e1": 1})
        g = from_images(vectq(1), vectq(3), lambda label: {"e2": 1})
        first, second = pushout_product(f, g), pushout_product(g, f)
        beta = braiding(first, second)
        assert is_isomorphism(beta)
        swap = permute_factors([f.target, g.target], (1, 0))
        assert morphisms_equal(compose(second.map, beta), compose(swap, first.map)) is None

    def test_braiding_needs_the_swapped_product(self, point_into_two):
        first = pushout_product(point_into_two, from_function(finset([0]), finset([0, 1, 2]), lambda label: label))
        with pytest.raises(StructureMismatch):
            braiding(first, first)
