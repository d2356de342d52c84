"""
Grammar of definition files.

A definition file is a list of sections. Each section starts with a header
``[kind name]`` and holds one item per line; ``#`` starts a comment::

    [kernel]
    variant = finset
    colors = c

    [operad P]
    library = com
    bound = 3

    [oalgebra X]
    operad = P
    extra c = x

Values are built from these pieces:

* label: an integer, a bare word (``m``, ``x0.1``), a quoted string
  (``"*"``) or a parenthesized tuple of labels (``()``, ``(0, 1)``, ``(x,)``)
* orbit: ``(out <- in1 in2 ...)``, inputs in canonical color order
* permutation: one-line notation in brackets, ``[1 0 2]``
* rational: ``p`` or ``p/q``
* vector: ``{}`` or terms joined by ``+``; a term is ``label`` or
  ``rational*label``
* matrix: rows separated by ``;``, entries by spaces, ``[1 0; 0 -1/2]``

Items:

* ``name = value`` for scalar settings (``variant``, ``bound``, ``library``,
  ``operad``, ``truncated`` ...)
* ``entry ORBIT = label, label, ...``
* ``act ORBIT PERM = label -> vector; label -> vector``
* ``unit COLOR = vector``
* ``compose ORBIT label : ORBIT label, ORBIT label = vector``
* ``carrier COLOR = label, ...`` and ``extra COLOR = label, ...``
* ``action ORBIT label [@ slot] : label, ... = vector``
* ``basis DEGREE = label, ...`` and ``d DEGREE = MATRIX``
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy import Matrix, Rational

from operadkit.errors import DefinitionParseError
from operadkit.symseq import OrbitSignature

logger = logging.getLogger(__name__)

COMMENT = "#"
SECTION_KINDS = ("kernel", "sequence", "operad", "algebra", "oalgebra", "module", "complex", "prespectrum")

_TOKEN = re.compile(
    r"""
    (?P<space>\s+)
  | (?P<arrow><-|->)
  | (?P<rational>[+-]?\d+/\d+)
  | (?P<integer>[+-]?\d+)
  | (?P<quoted>"(?:[^"\\]|\\.)*")
  | (?P<word>[A-Za-z_](?:[A-Za-z0-9_.]|-(?!>))*)
  | (?P<punct>[\[\](){}=:;,*+@])
    """,
    re.VERBOSE,
)
_ESCAPE = re.compile(r"\\(.)")


@dataclass(frozen=True)
class Item:
    """One ``key args = value`` line."""

    key: str
    args: Tuple[Any, ...]
    value: Any
    line: int
    column: int = 1


@dataclass
class Section:
    kind: str
    name: Optional[str]
    line: int
    items: List[Item] = field(default_factory=list)

    def find(self, key: str) -> List[Item]:
        return [item for item in self.items if item.key == key]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


class _LineError(Exception):
    def __init__(self, message: str, column: int) -> None:
        super().__init__(message)
        self.message = message
        self.column = column


def tokenize(body: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    while pos < len(body):
        match = _TOKEN.match(body, pos)
        if match is None:
            raise _LineError(f"Unexpected character {body[pos]!r}", pos + 1)
        if match.lastgroup != "space":
            tokens.append(Token(str(match.lastgroup), match.group(), pos + 1))
        pos = match.end()
    return tokens


class _LineParser:
    """Recursive descent over the tokens of one line."""

    def __init__(self, body: str) -> None:
        self.tokens = tokenize(body)
        self.pos = 0
        self.end_column = len(body) + 1

    # Cursor

    def peek(self, offset: int = 0) -> Optional[Token]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token is not None and token.kind in ("punct", "arrow") and token.text == text

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def fail(self, expected: str) -> _LineError:
        token = self.peek()
        if token is None:
            return _LineError(f"Expected {expected}, found end of line", self.end_column)
        return _LineError(f"Expected {expected}, found {token.text!r}", token.column)

    def take(self, kind: str, expected: Optional[str] = None) -> Token:
        token = self.peek()
        if token is None or token.kind != kind:
            raise self.fail(expected or kind)
        self.pos += 1
        return token

    def expect(self, text: str) -> None:
        if not self.at(text):
            raise self.fail(repr(text))
        self.pos += 1

    def finish(self) -> None:
        if not self.at_end():
            raise self.fail("end of line")

    # Values

    def word(self) -> str:
        return self.take("word", "a name").text

    def integer(self) -> int:
        return int(self.take("integer", "an integer").text)

    def rational(self) -> Rational:
        token = self.peek()
        if token is None or token.kind not in ("integer", "rational"):
            raise self.fail("a rational")
        self.pos += 1
        return Rational(token.text)

    def label(self) -> Any:
        token = self.peek()
        if token is None:
            raise self.fail("a label")
        if token.kind == "integer":
            self.pos += 1
            return int(token.text)
        if token.kind == "word":
            self.pos += 1
            return token.text
        if token.kind == "quoted":
            self.pos += 1
            return _ESCAPE.sub(r"\1", token.text[1:-1])
        if self.at("("):
            self.pos += 1
            parts = []
            while not self.at(")"):
                parts.append(self.label())
                if not self.at(","):
                    break
                self.pos += 1
            self.expect(")")
            return tuple(parts)
        raise self.fail("a label")

    def label_list(self, stop: Optional[str] = None) -> List[Any]:
        if self.at_end() or (stop is not None and self.at(stop)):
            return []
        labels = [self.label()]
        while self.at(","):
            self.pos += 1
            labels.append(self.label())
        return labels

    def orbit(self) -> OrbitSignature:
        self.expect("(")
        out = self.word()
        self.expect("<-")
        inputs = []
        while not self.at(")"):
            inputs.append(self.word())
        self.expect(")")
        return OrbitSignature(out, tuple(inputs))

    def perm(self) -> Tuple[int, ...]:
        self.expect("[")
        images = []
        while not self.at("]"):
            images.append(self.integer())
        self.expect("]")
        return tuple(images)

    def term(self) -> Tuple[Rational, Any]:
        token = self.peek()
        if token is not None and token.kind in ("integer", "rational") and self.at("*", 1):
            coeff = self.rational()
            self.pos += 1
            return coeff, self.label()
        return Rational(1), self.label()

    def vector(self) -> Dict[Any, Rational]:
        if self.at("{"):
            self.pos += 1
            self.expect("}")
            return {}
        result: Dict[Any, Rational] = {}
        while True:
            coeff, basis_label = self.term()
            result[basis_label] = result.get(basis_label, 0) + coeff
            if not self.at("+"):
                break
            self.pos += 1
        return {k: v for k, v in result.items() if v != 0}

    def matrix(self) -> Matrix:
        column = self.end_column if self.at_end() else self.tokens[self.pos].column
        self.expect("[")
        rows: List[List[Rational]] = []
        if not self.at("]"):
            while True:
                row = [self.rational()]
                while not self.at(";") and not self.at("]"):
                    row.append(self.rational())
                rows.append(row)
                if not self.at(";"):
                    break
                self.pos += 1
        self.expect("]")
        if len({len(row) for row in rows}) > 1:
            raise _LineError("Matrix rows have different lengths", column)
        return Matrix(rows) if rows else Matrix(0, 0, [])

    def images(self) -> List[Tuple[Any, Dict[Any, Rational]]]:
        result = []
        while True:
            source = self.label()
            self.expect("->")
            result.append((source, self.vector()))
            if not self.at(";"):
                return result
            self.pos += 1

    def setting_value(self) -> Any:
        values: List[Any] = []
        while not self.at_end():
            token = self.tokens[self.pos]
            if token.kind == "integer":
                values.append(int(token.text))
            elif token.kind == "word":
                values.append({"true": True, "false": False}.get(token.text, token.text))
            else:
                raise self.fail("a name, integer or boolean")
            self.pos += 1
        if not values:
            raise self.fail("a value")
        return values[0] if len(values) == 1 else tuple(values)


# Items


def _entry(p: _LineParser):
    key = p.orbit()
    p.expect("=")
    return (key,), p.label_list()


def _act(p: _LineParser):
    key, sigma = p.orbit(), p.perm()
    p.expect("=")
    return (key, sigma), p.images()


def _unit(p: _LineParser):
    color = p.word()
    p.expect("=")
    return (color,), p.vector()


def _compose(p: _LineParser):
    outer, label = p.orbit(), p.label()
    p.expect(":")
    inner = []
    while not p.at("="):
        inner.append((p.orbit(), p.label()))
        if not p.at(","):
            break
        p.pos += 1
    p.expect("=")
    return (outer, label, inner), p.vector()


def _labeled(p: _LineParser):
    color = p.word()
    p.expect("=")
    return (color,), p.label_list()


def _action(p: _LineParser):
    key, label = p.orbit(), p.label()
    slot = None
    if p.at("@"):
        p.pos += 1
        slot = p.integer()
    p.expect(":")
    xs = p.label_list(stop="=")
    p.expect("=")
    return (key, label, slot, xs), p.vector()


def _basis(p: _LineParser):
    degree = p.integer()
    p.expect("=")
    return (degree,), p.label_list()


def _differential(p: _LineParser):
    degree = p.integer()
    p.expect("=")
    return (degree,), p.matrix()


def _colors(p: _LineParser):
    p.expect("=")
    colors = [p.word()]
    while not p.at_end():
        colors.append(p.word())
    return (), colors


ITEMS: Dict[str, Callable[[_LineParser], Tuple[Tuple[Any, ...], Any]]] = {
    "entry": _entry,
    "act": _act,
    "unit": _unit,
    "compose": _compose,
    "carrier": _labeled,
    "extra": _labeled,
    "action": _action,
    "basis": _basis,
    "d": _differential,
    "colors": _colors,
}


def _setting(p: _LineParser):
    p.expect("=")
    return (), p.setting_value()


def _header(p: _LineParser) -> Tuple[str, Optional[str]]:
    p.expect("[")
    token = p.peek()
    if token is None or token.kind != "word" or token.text not in SECTION_KINDS:
        raise p.fail("one of " + ", ".join(SECTION_KINDS))
    p.pos += 1
    name = p.word() if not p.at("]") else None
    p.expect("]")
    return token.text, name


def _strip_comment(text: str) -> str:
    """Drop a ``#`` comment that is not inside a quoted label."""
    in_quotes, escaped = False, False
    for pos, char in enumerate(text):
        if escaped:
            escaped = False
        elif char == "\\":
            escaped = True
        elif char == '"':
            in_quotes = not in_quotes
        elif char == COMMENT and not in_quotes:
            return text[:pos]
    return text


def parse_definitions(text: str, source: Optional[str] = None) -> List[Section]:
    """
    Parse definition text into sections.

    Raises:
        DefinitionParseError: At the first line that does not parse
    """
    sections: List[Section] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        try:
            p = _LineParser(body)
            if p.at("["):
                kind, name = _header(p)
                p.finish()
                sections.append(Section(kind, name, number))
                continue
            key_token = p.take("word", "a section header or an item")
            args, value = ITEMS.get(key_token.text, _setting)(p)
            p.finish()
        except _LineError as exc:
            raise DefinitionParseError(exc.message, number, exc.column, source) from None
        if not sections:
            raise DefinitionParseError("Item outside of any section", number, 1, source)
        sections[-1].items.append(Item(key_token.text, args, value, number, key_token.column))
    logger.debug(f"Parsed {len(sections)} sections from {source or 'text'}")
    return sections
