"""Unit tests for base objects and morphisms."""

import pytest
from sympy import Matrix

from operadkit.basecat import (
    BaseObject,
    chainq,
    compose,
    coproduct,
    distribute,
    finset,
    from_function,
    from_images,
    identity,
    inverse,
    is_isomorphism,
    linearize,
    morphisms_equal,
    section_of_surjection,
    tensor_many,
    unit_object,
    vectq,
    zero_morphism,
)
from operadkit.config.constants import Variant
from operadkit.errors import MixedVariant, NotParallel, StructureMismatch, WrongVariant


@pytest.fixture
def two():
    return finset(["a", "b"])


@pytest.fixture
def swap(two):
    return from_function(two, two, {"a": "b", "b": "a"}.__getitem__)


class TestBaseObject:
    """Construction and validation of objects."""

    def test_finset_size_and_labels(self, two):
        assert two.size == 2
        assert two.labels == ("a", "b")
        assert two.has("a") and not two.has("c")

    def test_vectq_from_dimension(self):
        v = vectq(3)
        assert v.labels == ("e0", "e1", "e2")
        assert v.variant == Variant.VECTQ

    def test_duplicate_label_rejected(self):
        with pytest.raises(StructureMismatch):
            finset(["a", "a"])

    def test_finset_outside_degree_zero_rejected(self):
        with pytest.raises(WrongVariant):
            BaseObject(Variant.FINSET, {1: ("a",)})

    def test_differential_shape_checked(self):
        with pytest.raises(StructureMismatch):
            chainq({0: ["a"], 1: ["b"]}, {1: Matrix([[1, 0]])})

    def test_d_squared_must_vanish(self):
        with pytest.raises(StructureMismatch):
            chainq({0: ["a"], 1: ["b"], 2: ["c"]}, {1: Matrix([[1]]), 2: Matrix([[1]])})

    def test_boundary_of_basis_element(self):
        x = chainq({0: ["a0", "a1"], 1: ["b"]}, {1: Matrix([[1], [-1]])})
        assert x.boundary("b") == {"a0": 1, "a1": -1}
        assert x.boundary("a0") == {}

    def test_empty_object_is_initial(self):
        assert finset([]).is_initial


class TestMorphisms:
    """Composition, comparison and inverses."""

    def test_finset_image_must_be_single_element(self, two):
        with pytest.raises(StructureMismatch):
            from_images(two, two, lambda label: {})

    def test_swap_is_its_own_inverse(self, swap, two):
        assert is_isomorphism(swap)
        assert morphisms_equal(inverse(swap), swap) is None
        assert morphisms_equal(compose(swap, swap), identity(two)) is None

    def test_morphisms_equal_reports_witness(self, swap, two):
        label, left, right = morphisms_equal(swap, identity(two))
        assert label == "a"
        assert left == {"b": 1} and right == {"a": 1}

    def test_compose_requires_matching_objects(self, swap):
        other = finset(["x"])
        with pytest.raises(NotParallel):
            compose(swap, identity(other))

    def test_zero_morphism_only_from_empty_finset(self, two):
        with pytest.raises(WrongVariant):
            zero_morphism(two, two)
        assert zero_morphism(vectq(2), vectq(1)).image_vector("e0") == {}

    def test_section_of_surjection(self):
        source, target = finset(["a", "b", "c"]), finset(["x", "y"])
        f = from_function(source, target, {"a": "x", "b": "y", "c": "y"}.__getitem__)
        s = section_of_surjection(f)
        assert morphisms_equal(compose(f, s), identity(target)) is None

    def test_section_of_non_surjection_fails(self):
        f = from_function(finset(["a"]), finset(["x", "y"]), lambda label: "x")
        with pytest.raises(StructureMismatch):
            section_of_surjection(f)

    def test_chain_map_must_commute_with_differential(self):
        x = chainq({0: ["a"], 1: ["b"]}, {1: Matrix([[1]])})
        with pytest.raises(StructureMismatch):
            from_images(x, x, lambda label: {"a": 1} if label == "a" else {})


class TestMonoidalStructure:
    """Coproducts and tensor products."""

    def test_coproduct_tags_labels(self, two):
        summed = coproduct([two, finset(["a"])])
        assert summed.object.labels == ((0, "a"), (0, "b"), (1, "a"))
        assert summed.injections[1]("a") == (1, "a")

    def test_coproduct_rejects_mixed_variants(self, two):
        with pytest.raises(MixedVariant):
            coproduct([two, vectq(1)])

    def test_tensor_has_tuple_labels(self, two):
        product = tensor_many([two, finset(["x", "y", "z"])])
        assert product.size == 6
        assert ("b", "z") in product.labels

    def test_unit_object(self):
        assert unit_object(Variant.FINSET).labels == ((),)

    def test_tensor_of_chain_complexes_keeps_degrees(self):
        x = chainq({0: ["a"], 1: ["b"]}, {1: Matrix([[1]])})
        square = tensor_many([x, x])
        assert square.dim(0) == 1 and square.dim(1) == 2 and square.dim(2) == 1

    def test_distributivity(self, two):
        d = distribute(two, [finset(["p"]), finset(["q", "r"])])
        assert is_isomorphism(d)
        assert d(("a", (1, "q"))) == (1, ("a", "q"))
        assert d.target.size == 6

    def test_distributivity_of_chain_complexes(self):
        x = chainq({0: ["a"], 1: ["b"]}, {1: Matrix([[1]])})
        d = distribute(x, [x, chainq({2: ["c"]})])
        assert is_isomorphism(d)
        assert d.image_vector(("b", (0, "b"))) == {(0, ("b", "b")): 1}

    def test_distributivity_over_nothing(self, two):
        assert distribute(two, [], Variant.FINSET).source.size == 0

    def test_linearize(self, two):
        assert linearize(two).variant == Variant.VECTQ
        assert linearize(two).labels == two.labels
        with pytest.raises(WrongVariant):
            linearize(vectq(1))
