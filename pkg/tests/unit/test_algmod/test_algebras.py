"""Unit tests for algebras, modules and the library algebras."""

import random

import pytest

from operadkit.algmod import (
    algebra_maps,
    algebras_agree,
    check_algebra,
    check_module,
    colored_cyclic_monoid,
    corrupted_module,
    cyclic_monoid,
    dual_numbers,
    enumerate_algebras,
    initial_algebra,
    matrix_algebra,
    module_from_algebra,
    monoid_algebra,
    restrict_algebra,
    truncated_word_monoid,
)
from operadkit.basecat import finset
from operadkit.config.constants import Variant
from operadkit.errors import MultiColoredInput, StructureMismatch, WrongVariant
from operadkit.operads import (
    ass,
    com,
    compose_operad_maps,
    free_on_nullary,
    identity_map,
    linearize_operad,
    mcom,
    mp,
    nullary_operad,
    one_skeleton,
    phi,
    psi,
    random_profile_operad,
    rho,
)
from operadkit.symseq import ColorSet


@pytest.fixture
def com3():
    return com(3)


class TestLibraryAlgebras:
    """Library algebras satisfy the algebra laws."""

    def test_cyclic_monoid(self, com3):
        alg = cyclic_monoid(com3, 3)
        assert alg.carrier("c").labels == (0, 1, 2)
        assert check_algebra(alg).passed

    def test_word_monoid_over_ass(self):
        assert check_algebra(truncated_word_monoid(ass(3), 2)).passed

    def test_dual_numbers(self):
        q = linearize_operad(ass(3))
        assert check_algebra(dual_numbers(q)).passed
        assert check_algebra(dual_numbers(linearize_operad(ass(3, unital=False)), unital=False)).passed

    def test_matrix_algebra(self):
        alg = matrix_algebra(linearize_operad(ass(2)), 2)
        assert alg.carrier("c").size == 4
        assert check_algebra(alg).passed

    def test_matrices_are_not_commutative(self):
        alg = matrix_algebra(linearize_operad(com(2)), 2)
        report = check_algebra(alg)
        assert not report.passed

    def test_subtraction_is_not_a_monoid(self, com3):
        table = {(a, b): (a - b) % 3 for a in range(3) for b in range(3)}
        assert not check_algebra(monoid_algebra(com3, range(3), table, unit=0)).passed

    def test_monoid_needs_unit_when_operad_has_nullaries(self, com3):
        with pytest.raises(StructureMismatch):
            monoid_algebra(com3, [0], {(0, 0): 0})

    def test_structure_constants_need_vectq(self):
        with pytest.raises(WrongVariant):
            dual_numbers(ass(2))

    def test_single_colored_operads_only(self):
        with pytest.raises(MultiColoredInput):
            cyclic_monoid(mcom(2), 2)

    @pytest.mark.parametrize("order", [1, 2, 3])
    def test_colored_cyclic_monoid_over_module_operads(self, order):
        for p in (mcom(3), mp(ass(3))):
            alg = colored_cyclic_monoid(p, order)
            assert alg.carrier("m").labels == tuple(range(order))
            assert check_algebra(alg).passed

    @pytest.mark.parametrize("seed", range(5))
    def test_colored_cyclic_monoid_over_random_profiles(self, seed):
        rng = random.Random(seed)
        base = rng.choice([com, ass])(3)
        p = random_profile_operad(rng, ColorSet(("c", "d")), 3, base=base)
        assert check_algebra(colored_cyclic_monoid(p, 2)).passed

    def test_colored_cyclic_monoid_needs_com_or_ass_labels(self):
        p = free_on_nullary(ColorSet(("c", "d")), Variant.FINSET, {"c": finset(["a"])})
        with pytest.raises(StructureMismatch):
            colored_cyclic_monoid(p, 2)
        with pytest.raises(WrongVariant):
            colored_cyclic_monoid(linearize_operad(mcom(2)), 2)

    def test_initial_algebra(self, com3):
        assert initial_algebra(com3).carrier("c").size == 1
        assert initial_algebra(com(3, unital=False)).carrier("c").is_initial
        assert check_algebra(initial_algebra(ass(3))).passed


class TestRestriction:
    """Restriction of algebras along operad maps."""

    @pytest.mark.parametrize("build", [com, ass])
    def test_restriction_is_functorial(self, build):
        p = build(3)
        o, skeleton_operad = nullary_operad(p), one_skeleton(p)
        inclusion, first = phi(p, skeleton_operad), psi(p, o, skeleton_operad)
        alg = cyclic_monoid(p, 3)
        in_steps = restrict_algebra(restrict_algebra(alg, inclusion), first)
        at_once = restrict_algebra(alg, compose_operad_maps(inclusion, first))
        assert algebras_agree(in_steps, at_once) is None
        assert algebras_agree(at_once, restrict_algebra(alg, rho(p, o))) is None
        assert check_algebra(in_steps).passed

    def test_restriction_along_the_identity(self, com3):
        alg = cyclic_monoid(com3, 2)
        assert algebras_agree(restrict_algebra(alg, identity_map(com3)), alg) is None

    def test_restriction_needs_the_right_target(self, com3):
        with pytest.raises(StructureMismatch):
            restrict_algebra(cyclic_monoid(com(3), 2), identity_map(com3))


class TestEnumeration:
    """Exhaustive search on tiny carriers."""

    def test_maps_between_cyclic_monoids(self):
        p = com(2)
        z2 = cyclic_monoid(p, 2)
        assert len(algebra_maps(z2, z2)) == 2

    def test_commutative_monoids_on_two_elements(self):
        p = com(2)
        found = enumerate_algebras(p, {"c": finset([0, 1])}, 2)
        assert found
        assert all(check_algebra(alg, 2).passed for alg in found)


class TestModules:
    """Modules over algebras."""

    def test_regular_module(self, com3):
        module = module_from_algebra(cyclic_monoid(com3, 2))
        assert check_module(module).passed

    def test_corrupted_module_fails(self, com3):
        module = corrupted_module(module_from_algebra(cyclic_monoid(com3, 2)))
        report = check_module(module)
        assert not report.passed
        assert report.first_witness()
