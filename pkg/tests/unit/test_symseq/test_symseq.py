"""Unit tests for colors, orbit signatures and symmetric sequences."""

import pytest

from operadkit.basecat import finset, trivial_action, vectq
from operadkit.config.constants import Variant
from operadkit.errors import ColorMismatch, MixedVariant, NonFinitary, StructureMismatch, UnknownColor
from operadkit.symseq import (
    ColorSet,
    OrbitSignature,
    SymmetricSequence,
    arity_part,
    canonical_form,
    coproduct_sequences,
    entry_sizes,
    orbit,
    orbits_up_to,
    sequence_from_objects,
    sequences_isomorphic,
    skeleton,
    unit_seq,
)

BINARY = OrbitSignature("c", ("c", "c"))
UNARY = OrbitSignature("c", ("c",))


@pytest.fixture
def colors():
    return ColorSet(("c",))


@pytest.fixture
def binary(colors):
    """One commutative binary operation."""
    return sequence_from_objects(colors, Variant.FINSET, {BINARY: finset(["mu"])})


class TestColorSet:
    """Ordered color sets."""

    def test_empty_rejected(self):
        with pytest.raises(StructureMismatch):
            ColorSet(())

    def test_duplicates_rejected(self):
        with pytest.raises(StructureMismatch):
            ColorSet(("a", "a"))

    def test_unknown_color(self):
        with pytest.raises(UnknownColor):
            ColorSet(("a", "m")).index("z")

    def test_canonical_form_sorts_by_color_order(self):
        assert canonical_form(ColorSet(("a", "m")), ("m", "a")) == (("a", "m"), (1, 0))
        assert canonical_form(ColorSet(("m", "a")), ("a", "m")) == (("m", "a"), (1, 0))


class TestOrbitSignature:
    """Orbits of color tuples and their automorphisms."""

    def test_aut_is_young_subgroup(self):
        assert len(OrbitSignature("c", ("c", "c", "c")).aut) == 6
        assert len(OrbitSignature("m", ("a", "a", "m")).aut) == 2
        assert OrbitSignature("c", ()).aut == ((),)

    def test_text(self):
        assert str(BINARY) == "(c,c -> c)"
        assert str(OrbitSignature("c", ())) == "( -> c)"

    def test_orbit_of_labeled_tuple(self):
        colors = ColorSet(("a", "m"))
        assert orbit(colors, "m", ("m", "a")) == OrbitSignature("m", ("a", "m"))

    def test_orbits_up_to(self):
        found = orbits_up_to(ColorSet(("a", "m")), 2)
        assert len(found) == 12
        assert found[0].arity == 0
        assert found[-1] == OrbitSignature("m", ("m", "m"))


class TestSymmetricSequence:
    """Entries, bounds and comparison."""

    def test_absent_entry_is_initial(self, binary):
        assert binary.object(UNARY).is_initial
        assert binary.object(OrbitSignature("c", ("c",) * 5)).is_initial

    def test_truncated_sequence_refuses_unknown_arity(self, colors):
        x = sequence_from_objects(colors, Variant.FINSET, {BINARY: finset(["mu"])}, truncated=True)
        with pytest.raises(NonFinitary):
            x.entry(OrbitSignature("c", ("c",) * 3))

    def test_entry_above_bound_rejected(self, colors):
        with pytest.raises(StructureMismatch):
            sequence_from_objects(colors, Variant.FINSET, {BINARY: finset(["mu"])}, support_bound=1)

    def test_wrong_acting_group_rejected(self, colors):
        action = trivial_action(finset(["mu"]), UNARY.aut)
        with pytest.raises(StructureMismatch):
            SymmetricSequence(colors, Variant.FINSET, 2, {BINARY: action})

    def test_variant_must_match(self, colors):
        with pytest.raises(MixedVariant):
            sequence_from_objects(colors, Variant.FINSET, {BINARY: vectq(1)})

    def test_empty_entries_are_dropped(self, colors):
        x = sequence_from_objects(colors, Variant.FINSET, {BINARY: finset([]), UNARY: finset(["id"])})
        assert x.orbits() == [UNARY]

    def test_unit(self, colors):
        unit = unit_seq(colors)
        assert unit.orbits() == [UNARY]
        assert unit.object(UNARY).labels == ((),)

    def test_coproduct_adds_sizes(self, binary, colors):
        both = coproduct_sequences(binary, unit_seq(colors))
        assert entry_sizes(both) == {"(c -> c)": 1, "(c,c -> c)": 1}
        doubled = coproduct_sequences(binary, binary)
        assert doubled.object(BINARY).size == 2

    def test_coproduct_needs_same_colors(self, binary):
        with pytest.raises(ColorMismatch):
            coproduct_sequences(binary, unit_seq(ColorSet(("d",))))

    def test_isomorphism_witness(self, binary, colors):
        assert sequences_isomorphic(binary, binary) is None
        key, _, _ = sequences_isomorphic(binary, coproduct_sequences(binary, binary))
        assert key == BINARY

    def test_skeleton_and_arity_part(self, binary, colors):
        x = coproduct_sequences(binary, unit_seq(colors))
        assert skeleton(x, 1).orbits() == [UNARY]
        assert arity_part(x, 2).orbits() == [BINARY]
