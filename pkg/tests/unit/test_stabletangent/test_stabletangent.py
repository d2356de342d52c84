"""Unit tests for over-under complexes, prespectra and stable homology."""

import pytest
from sympy import Matrix

from operadkit.basecat import (
    chainq,
    finset,
    from_images,
    homology_table,
    identity,
    is_isomorphism,
    is_quasi_iso,
    mapping_cone,
    zero_morphism,
)
from operadkit.errors import StructureMismatch, TruncationTooSmall, WrongVariant
from operadkit.stabletangent import (
    Prespectrum,
    band_indices,
    constant_prespectrum,
    corrupt_square,
    counit_map,
    homotopy_pushout,
    include_coprod,
    kernel_functor,
    levelwise_cofiber,
    loop,
    omega_spectrum_check,
    shift_prespectrum,
    sigma_infty_plus,
    sigma_infty_plus_check,
    spectrify,
    stable_equiv_check,
    suspension_map,
    unit_map,
)


@pytest.fixture
def interval():
    return chainq({0: ["a0", "a1"], 1: ["b"]}, {1: Matrix([[1], [-1]])})


@pytest.fixture
def circle():
    return chainq({0: ["v"], 1: ["e"]})


class TestOverUnder:
    """Split objects over and under a base complex."""

    def test_kernel_of_coproduct(self, interval, circle):
        x = include_coprod(interval, circle)
        assert kernel_functor(x).size == circle.size
        assert homology_table(kernel_functor(x)) == {0: 1, 1: 1}

    def test_unit_and_counit(self, interval, circle):
        assert is_isomorphism(unit_map(interval, circle))
        assert is_quasi_iso(counit_map(include_coprod(interval, circle)))

    def test_chain_complexes_only(self, interval):
        with pytest.raises(WrongVariant):
            include_coprod(interval, finset(["p"]))


class TestPrespectra:
    """Band prespectra and the Omega-spectrum test."""

    def test_suspension_spectrum_is_omega(self, interval):
        assert omega_spectrum_check(sigma_infty_plus(interval, 2)).passed

    def test_corrupted_square_detected(self, interval):
        report = omega_spectrum_check(corrupt_square(sigma_infty_plus(interval, 2), 0))
        assert not report.passed
        assert report.first_witness().startswith("homotopy cartesian")

    def test_no_squares_at_level_zero(self, interval):
        with pytest.raises(TruncationTooSmall):
            omega_spectrum_check(sigma_infty_plus(interval, 0))

    def test_missing_entries(self):
        with pytest.raises(StructureMismatch):
            Prespectrum(1, {}, {})

    @pytest.mark.parametrize("k", [-1, 1, 2])
    def test_shifted_spectrum_is_omega(self, interval, k):
        spectrum = sigma_infty_plus(interval, 2)
        shifted = shift_prespectrum(spectrum, k)
        assert omega_spectrum_check(shifted).passed
        assert not omega_spectrum_check(shift_prespectrum(corrupt_square(spectrum, 0), k)).passed

    def test_looping_is_a_levelwise_loop(self, interval):
        spectrum = sigma_infty_plus(interval, 2)
        looped = shift_prespectrum(spectrum, -1)
        for index in band_indices(2):
            assert homology_table(looped.fiber(index)) == homology_table(loop(spectrum.fiber(index)))

    def test_negative_truncation(self):
        with pytest.raises(TruncationTooSmall):
            Prespectrum(-1, {}, {})


class TestStableHomology:
    """Stable values read off the diagonal."""

    def test_suspension_of_a_plus_a(self, interval):
        report, stable = sigma_infty_plus_check(interval, 3)
        assert report.passed
        assert stable.table() == {0: 1}
        assert stable.to_dict()["stable_homology"] == {"0": 1}

    def test_circle(self, circle):
        report, stable = sigma_infty_plus_check(circle, 2)
        assert report.passed
        assert stable.table() == {0: 1, 1: 1}
        assert stable.value(5) == 0

    def test_window_longer_than_levels(self, interval):
        with pytest.raises(TruncationTooSmall):
            spectrify(sigma_infty_plus(interval, 0), window=2)

    def test_acyclic_constant_spectrum_is_trivial(self, interval):
        cone, _ = mapping_cone(identity(interval))
        assert spectrify(constant_prespectrum(interval, cone, 2)).is_trivial


class TestStableMaps:
    """Maps of suspension prespectra."""

    def test_identity_is_a_stable_equivalence(self, interval):
        f = suspension_map(identity(interval), interval, 2)
        assert stable_equiv_check(f)
        assert spectrify(levelwise_cofiber(f)).is_trivial

    def test_zero_map_is_not(self, interval):
        assert not stable_equiv_check(suspension_map(zero_morphism(interval, interval), interval, 2))


class TestLoopsAndPushouts:
    """Desuspension and double mapping cylinders."""

    def test_loop_lowers_degrees(self, circle):
        assert homology_table(loop(circle)) == {-1: 1, 0: 1}

    def test_two_points_glued_to_two_points_is_a_circle(self):
        two_points = chainq({0: ["p", "q"]})
        left, right = chainq({0: ["l"]}), chainq({0: ["r"]})
        f = from_images(two_points, left, lambda label: {"l": 1})
        g = from_images(two_points, right, lambda label: {"r": 1})
        assert homology_table(homotopy_pushout(f, g)) == {0: 1, 1: 1}

    def test_pushout_along_an_identity(self, interval):
        f = identity(interval)
        g = from_images(interval, chainq({0: ["pt"]}), lambda label: {"pt": 1} if label != "b" else {})
        assert homology_table(homotopy_pushout(f, g)) == {0: 1}
