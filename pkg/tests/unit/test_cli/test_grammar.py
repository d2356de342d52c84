"""Unit tests for the definition grammar and the entity builders."""

from pathlib import Path

import pytest
from sympy import Matrix, Rational

from operadkit.cli.definitions import DefinitionFile
from operadkit.cli.grammar import parse_definitions
from operadkit.errors import DefinitionParseError, UnknownEntity
from operadkit.operads import check_operad
from operadkit.symseq import OrbitSignature

FIXTURES = Path(__file__).parents[2] / "fixtures"


@pytest.fixture
def com_defs():
    return DefinitionFile.load(FIXTURES / "com.def")


class TestGrammar:
    """Line-level parsing."""

    def test_sections_and_settings(self):
        sections = parse_definitions("[kernel]\nvariant = finset\n\n[operad P]  # comment\nlibrary = com\nbound = 3\n")
        assert [(s.kind, s.name) for s in sections] == [("kernel", None), ("operad", "P")]
        items = {item.key: item.value for item in sections[1].items}
        assert items == {"library": "com", "bound": 3}

    def test_multi_word_setting(self):
        (section,) = parse_definitions("[algebra A]\nlibrary = cyclic 2\n")
        assert section.items[0].value == ("cyclic", 2)

    def test_entry_and_labels(self):
        text = '[sequence X]\nentry (c <- c c) = "*", (0, 1), (x,), m\n'
        item = parse_definitions(text)[0].items[0]
        assert item.args == (OrbitSignature("c", ("c", "c")),)
        assert item.value == ["*", (0, 1), ("x",), "m"]

    def test_vectors_and_matrices(self):
        text = "[complex A]\nd 1 = [1 0; 0 -1/2]\n[operad P]\nunit c = 1/2*x + y + x\n"
        sections = parse_definitions(text)
        assert sections[0].items[0].value == Matrix([[1, 0], [0, Rational(-1, 2)]])
        assert sections[1].items[0].value == {"x": Rational(3, 2), "y": 1}

    def test_zero_vector(self):
        (section,) = parse_definitions("[operad P]\nunit c = {}\n")
        assert section.items[0].value == {}

    def test_comment_inside_quotes(self):
        (section,) = parse_definitions('[sequence X]\nentry (c <-) = "#"  # trailing\n')
        assert section.items[0].value == ["#"]

    def test_parse_error_position(self):
        with pytest.raises(DefinitionParseError) as info:
            DefinitionFile.load(FIXTURES / "malformed.def")
        assert info.value.line == 3
        assert info.value.column >= 1
        assert str(info.value).startswith(str(FIXTURES / "malformed.def"))

    def test_item_outside_section(self):
        with pytest.raises(DefinitionParseError) as info:
            parse_definitions("bound = 3\n")
        assert info.value.line == 1

    def test_ragged_matrix(self):
        with pytest.raises(DefinitionParseError):
            parse_definitions("[complex A]\nd 1 = [1 0; 1]\n")


class TestDefinitionFile:
    """Building kernel values from sections."""

    def test_library_operad(self, com_defs):
        p = com_defs.get("P", "operad")
        assert p.name == "P"
        assert check_operad(p).passed

    def test_values_are_shared(self, com_defs):
        assert com_defs.get("X").operad is com_defs.get("P")
        assert com_defs.get("A").operad is com_defs.get("P")

    def test_library_algebra(self, com_defs):
        assert com_defs.get("A").carrier("c").labels == (0, 1)

    def test_unknown_entity(self, com_defs):
        with pytest.raises(UnknownEntity):
            com_defs.get("Q")

    def test_wrong_kind(self, com_defs):
        with pytest.raises(UnknownEntity):
            com_defs.get("A", "operad")

    def test_unknown_library(self):
        defs = DefinitionFile.from_text("[operad P]\nlibrary = lie\n")
        with pytest.raises(DefinitionParseError):
            defs.get("P")

    def test_non_canonical_inputs(self):
        defs = DefinitionFile.from_text("[sequence X]\ncolors = a m\nentry (m <- m a) = act\n")
        with pytest.raises(DefinitionParseError):
            defs.get("X")

    def test_differential_shape(self):
        defs = DefinitionFile.from_text("[complex A]\nbasis 0 = a\nbasis 1 = b\nd 1 = [1 1]\n")
        with pytest.raises(DefinitionParseError):
            defs.get("A")
