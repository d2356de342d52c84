"""Unit tests for canonical text output and its round trip through the grammar."""

import pytest
from sympy import Matrix, Rational

from operadkit.algmod import cyclic_monoid
from operadkit.basecat import chainq, finset
from operadkit.cli.definitions import DefinitionFile
from operadkit.cli.serialize import (
    algebra_section,
    complex_section,
    format_label,
    format_matrix,
    format_orbit,
    format_rational,
    format_vector,
    operad_section,
    sequence_section,
)
from operadkit.config.constants import Variant
from operadkit.operads import ass, com, linearize_operad
from operadkit.symseq import ColorSet, OrbitSignature, sequence_from_objects


class TestFormatters:
    """Canonical forms of scalars."""

    @pytest.mark.parametrize(
        "label, expected",
        [("m", "m"), ("*", '"*"'), (3, "3"), ((0,), "(0,)"), ((0, 1), "(0, 1)"), ((), "()"), ('a"b', '"a\\"b"')],
    )
    def test_label(self, label, expected):
        assert format_label(label) == expected

    def test_rational(self):
        assert format_rational(Rational(-1, 2)) == "-1/2"
        assert format_rational(4) == "4"

    def test_vector(self):
        assert format_vector({"y": 1, "x": Rational(1, 2), "z": 0}) == "1/2*x + y"
        assert format_vector({}) == "{}"

    def test_matrix(self):
        assert format_matrix(Matrix([[1, 0], [0, Rational(-1, 2)]])) == "[1 0; 0 -1/2]"

    def test_orbit(self):
        assert format_orbit(OrbitSignature("c", ())) == "(c <-)"
        assert format_orbit(OrbitSignature("m", ("a", "m"))) == "(m <- a m)"


def round_trip(text: str, name: str) -> DefinitionFile:
    return DefinitionFile.from_text(text).get(name)


class TestRoundTrip:
    """Reading canonical text back gives the same canonical text."""

    def test_sequence(self):
        x = sequence_from_objects(
            ColorSet(("c",)), Variant.FINSET, {OrbitSignature("c", ("c", "c")): finset(["mu", "nu"])}
        )
        text = sequence_section("X", x)
        assert sequence_section("X", round_trip(text, "X")) == text

    @pytest.mark.parametrize("factory", [lambda: com(2), lambda: ass(2), lambda: linearize_operad(com(2))])
    def test_operad(self, factory):
        text = operad_section("P", factory())
        assert operad_section("P", round_trip(text, "P")) == text

    def test_complex(self):
        a = chainq({0: ["a0", "a1"], 1: ["b"]}, {1: Matrix([[1], [-1]])})
        text = complex_section("A", a)
        assert "d 1 = [1; -1]" in text
        assert complex_section("A", round_trip(text, "A")) == text

    def test_algebra(self):
        p = com(2)
        text = operad_section("P", p) + "\n" + algebra_section("A", cyclic_monoid(p, 2), "P")
        defs = DefinitionFile.from_text(text)
        assert operad_section("P", defs.get("P")) + "\n" + algebra_section("A", defs.get("A"), "P") == text
