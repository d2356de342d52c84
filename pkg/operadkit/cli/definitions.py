"""Build kernel values from parsed definition files."""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from sympy import Matrix

from operadkit.algmod import (
    Algebra,
    ModuleOverAlgebra,
    OAlgebra,
    cyclic_monoid,
    dual_numbers,
    initial_algebra,
    matrix_algebra,
    module_from_algebra,
    pointed_oalgebra,
    truncated_word_monoid,
)
from operadkit.basecat import BaseObject, chainq, finset, linalg, vectq
from operadkit.cli.grammar import Item, Section, parse_definitions
from operadkit.config.constants import Variant
from operadkit.errors import DefinitionParseError, InvalidAlgebra, UnknownEntity
from operadkit.operads import (
    Operad,
    OperadTables,
    ass,
    basis,
    com,
    custom_from_tables,
    linearize_operad,
    mcom,
    sequence_from_tables,
)
from operadkit.stabletangent import (
    Prespectrum,
    corrupt_square,
    include_coprod,
    sigma_infty_plus,
    suspension_prespectrum,
)
from operadkit.symseq import ColorSet, OrbitSignature, SymmetricSequence, canonical_form

logger = logging.getLogger(__name__)

DEFAULT_COLORS = ("c",)
LIBRARY_OPERADS = {"com": com, "ass": ass, "mcom": mcom}

Entity = Union[SymmetricSequence, Operad, Algebra, OAlgebra, ModuleOverAlgebra, BaseObject, Prespectrum]


@dataclass
class DefinitionFile:
    """
    The sections of one definition file, built into kernel values on demand.

    Values are cached per name, so an algebra and the O-algebra that refer to
    the same operad share one ``Operad`` instance.
    """

    sections: List[Section]
    source: Optional[str] = None
    truncation: int = 6
    _built: Dict[str, Entity] = field(default_factory=dict, repr=False)

    @classmethod
    def from_text(cls, text: str, source: Optional[str] = None, truncation: int = 6) -> "DefinitionFile":
        return cls(parse_definitions(text, source), source, truncation)

    @classmethod
    def load(cls, path: Union[str, Path], truncation: int = 6) -> "DefinitionFile":
        path = Path(path)
        return cls.from_text(path.read_text(encoding="utf-8"), str(path), truncation)

    # Lookup

    @property
    def names(self) -> List[str]:
        return [s.name for s in self.sections if s.name]

    def section(self, name: str) -> Section:
        for s in self.sections:
            if s.name == name:
                return s
        raise UnknownEntity(f"No entity named {name!r} in {self.source or 'the definitions'}")

    def kind(self, name: str) -> str:
        return self.section(name).kind

    def get(self, name: str, kind: Optional[str] = None) -> Entity:
        """
        The value declared under ``name``.

        Raises:
            UnknownEntity: If nothing of that name (and kind) is declared
        """
        s = self.section(name)
        if kind is not None and s.kind != kind and not (kind == "sequence" and s.kind == "operad"):
            raise UnknownEntity(f"{name!r} is a {s.kind}, not a {kind}")
        if name not in self._built:
            self._built[name] = BUILDERS[s.kind](self, s)
            logger.debug(f"Built {s.kind} {name}")
        value = self._built[name]
        if kind == "sequence" and isinstance(value, Operad):
            return value.sequence
        return value

    # Kernel-wide settings

    def _kernel(self) -> Optional[Section]:
        return next((s for s in self.sections if s.kind == "kernel"), None)

    def setting(self, s: Section, key: str, default: Any = None, required: bool = False) -> Any:
        found = s.find(key)
        if found:
            return found[-1].value
        if required:
            raise self.error(f"[{s.kind} {s.name}] needs '{key} = ...'", s.line)
        return default

    def variant(self, s: Section) -> Variant:
        kernel = self._kernel()
        default = self.setting(kernel, "variant", Variant.FINSET.value) if kernel else Variant.FINSET.value
        value = self.setting(s, "variant", default)
        try:
            return Variant(value)
        except ValueError:
            raise self.error(f"Unknown variant {value!r}", s.line) from None

    def colors(self, s: Section) -> Tuple[str, ...]:
        kernel = self._kernel()
        fallback = self.setting(kernel, "colors", list(DEFAULT_COLORS)) if kernel else list(DEFAULT_COLORS)
        return tuple(self.setting(s, "colors", fallback))

    def error(self, message: str, line: int, column: int = 1) -> DefinitionParseError:
        return DefinitionParseError(message, line, column, self.source)

    def orbit(self, item: Item, colors: Tuple[str, ...]) -> OrbitSignature:
        key: OrbitSignature = item.args[0]
        unknown = [c for c in (key.out_color,) + key.inputs if c not in colors]
        if unknown:
            raise self.error(f"Unknown colors {unknown} in {key}", item.line, item.column)
        if canonical_form(ColorSet(colors), key.inputs)[0] != key.inputs:
            raise self.error(f"Inputs of {key} are not in canonical color order", item.line, item.column)
        return key


# Builders


def _object(variant: Variant, labels) -> BaseObject:
    return finset(labels) if variant == Variant.FINSET else vectq(list(labels))


def _tables(defs: DefinitionFile, s: Section, colors: Tuple[str, ...]):
    entries, actions = {}, {}
    for item in s.find("entry"):
        entries[defs.orbit(item, colors)] = tuple(item.value)
    for item in s.find("act"):
        key = defs.orbit(item, colors)
        if key not in entries:
            raise defs.error(f"'act' on {key} before its entry", item.line, item.column)
        actions.setdefault(key, {})[tuple(item.args[1])] = {label: vector for label, vector in item.value}
    return entries, actions


def _bound(defs: DefinitionFile, s: Section, entries) -> int:
    return int(defs.setting(s, "bound", max((key.arity for key in entries), default=0)))


def build_sequence(defs: DefinitionFile, s: Section) -> SymmetricSequence:
    colors, variant = defs.colors(s), defs.variant(s)
    entries, actions = _tables(defs, s, colors)
    truncated = bool(defs.setting(s, "truncated", False))
    return sequence_from_tables(colors, variant, _bound(defs, s, entries), entries, actions, truncated)


def build_operad(defs: DefinitionFile, s: Section) -> Operad:
    variant = defs.variant(s)
    library = defs.setting(s, "library")
    if library is not None:
        if library not in LIBRARY_OPERADS:
            raise defs.error(f"Unknown library operad {library!r}", s.line)
        bound = int(defs.setting(s, "bound", 3))
        if library == "mcom":
            p = mcom(bound)
        else:
            unital = bool(defs.setting(s, "unital", True))
            p = LIBRARY_OPERADS[library](bound, unital=unital, color=defs.colors(s)[0])
        p = linearize_operad(p) if variant == Variant.VECTQ else p
        return replace(p, name=s.name, _cache={}, _wider={})
    colors = defs.colors(s)
    entries, actions = _tables(defs, s, colors)
    units = {}
    for item in s.find("unit"):
        units[item.args[0]] = item.value
    compositions = {}
    for item in s.find("compose"):
        outer = defs.orbit(item, colors)
        inner = tuple((key, label) for key, label in item.args[2])
        compositions[(outer, item.args[1], inner)] = item.value
    tables = OperadTables(
        name=s.name,
        colors=colors,
        variant=variant,
        bound=_bound(defs, s, entries),
        truncated=bool(defs.setting(s, "truncated", False)),
        entries=entries,
        actions=actions,
        units=units,
        compositions=compositions,
    )
    return custom_from_tables(tables)


def _operad_of(defs: DefinitionFile, s: Section) -> Operad:
    return defs.get(defs.setting(s, "operad", required=True), "operad")


def _library_algebra(defs: DefinitionFile, s: Section, p: Operad, library) -> Algebra:
    name, *params = library if isinstance(library, tuple) else (library,)
    size = int(params[0]) if params else 2
    if name == "initial":
        return initial_algebra(p)
    if name == "cyclic":
        return cyclic_monoid(p, size, name=s.name)
    if name == "words":
        return truncated_word_monoid(p, size, name=s.name)
    if name == "dual":
        return dual_numbers(p, unital=bool(p.nullary(p.colors.labels[0]).size))
    if name == "matrix":
        return matrix_algebra(p, size)
    raise defs.error(f"Unknown library algebra {name!r}", s.line)


def _action_table(defs: DefinitionFile, s: Section, colors, with_slot: bool) -> Dict[tuple, Any]:
    table = {}
    for item in s.find("action"):
        key = defs.orbit(item, colors)
        _, label, slot, xs = item.args
        if (slot is not None) != with_slot:
            expected = "with" if with_slot else "without"
            raise defs.error(f"Actions of a [{s.kind}] are written {expected} '@ slot'", item.line, item.column)
        table[(key, label, slot, tuple(xs))] = item.value
    return table


def _lookup(p: Operad, table: Dict[tuple, Any], finite: bool, key, label, slot, xs, fallback: Callable[[], Any]):
    if (key, label, slot, xs) in table:
        return table[(key, label, slot, xs)]
    if key.arity == 1 and basis(label) == p.units[key.out_color]:
        return fallback()
    if finite:
        raise InvalidAlgebra(f"No action recorded for {label!r} at {key} on {xs}")
    return {}


def build_algebra(defs: DefinitionFile, s: Section) -> Algebra:
    p = _operad_of(defs, s)
    library = defs.setting(s, "library")
    if library is not None:
        return _library_algebra(defs, s, p, library)
    carriers = {item.args[0]: _object(p.variant, item.value) for item in s.find("carrier")}
    table = _action_table(defs, s, tuple(p.colors), with_slot=False)
    finite = p.variant == Variant.FINSET

    def action_fn(key, label, xs):
        return _lookup(p, table, finite, key, label, None, xs, lambda: {xs[0]: 1})

    return Algebra(p, carriers, action_fn, name=s.name)


def build_oalgebra(defs: DefinitionFile, s: Section) -> OAlgebra:
    p = _operad_of(defs, s)
    extra = {item.args[0]: tuple(item.value) for item in s.find("extra")}
    return pointed_oalgebra(p, extra, augmented=bool(defs.setting(s, "augmented", True)), name=s.name)


def build_module(defs: DefinitionFile, s: Section) -> ModuleOverAlgebra:
    alg = defs.get(defs.setting(s, "algebra", required=True), "algebra")
    if defs.setting(s, "library") == "regular":
        return module_from_algebra(alg)
    p = alg.operad
    carriers = {item.args[0]: _object(p.variant, item.value) for item in s.find("carrier")}
    table = _action_table(defs, s, tuple(p.colors), with_slot=True)
    finite = p.variant == Variant.FINSET

    def action_fn(key, k, label, xs):
        return _lookup(p, table, finite, key, label, k, xs, lambda: {xs[0]: 1})

    return ModuleOverAlgebra(alg, carriers, action_fn, name=s.name)


def build_complex(defs: DefinitionFile, s: Section) -> BaseObject:
    basis_of = {int(item.args[0]): tuple(item.value) for item in s.find("basis")}
    differential = {}
    for item in s.find("d"):
        deg, matrix = int(item.args[0]), item.value
        shape = (len(basis_of.get(deg - 1, ())), len(basis_of.get(deg, ())))
        if matrix.rows == 0:
            matrix = linalg.zero_matrix(*shape)
        if matrix.shape != shape:
            raise defs.error(f"d {deg} has shape {matrix.shape}, expected {shape}", item.line, item.column)
        differential[deg] = Matrix(matrix)
    return chainq(basis_of, differential)


def build_prespectrum(defs: DefinitionFile, s: Section) -> Prespectrum:
    kind = defs.setting(s, "kind", "sigma-infty")
    base = defs.get(defs.setting(s, "base", required=True), "complex")
    truncation = int(defs.setting(s, "truncation", defs.truncation))
    if kind == "sigma-infty":
        spectrum = sigma_infty_plus(base, truncation)
    elif kind == "suspension":
        fiber = defs.get(defs.setting(s, "fiber", required=True), "complex")
        spectrum = suspension_prespectrum(include_coprod(base, fiber, name=s.name), truncation)
    else:
        raise defs.error(f"Unknown prespectrum kind {kind!r}", s.line)
    corrupt = defs.setting(s, "corrupt")
    return spectrum if corrupt is None else corrupt_square(spectrum, int(corrupt))


def build_kernel(defs: DefinitionFile, s: Section) -> None:
    raise defs.error("The [kernel] section is not an entity", s.line)


BUILDERS: Dict[str, Callable[[DefinitionFile, Section], Any]] = {
    "kernel": build_kernel,
    "sequence": build_sequence,
    "operad": build_operad,
    "algebra": build_algebra,
    "oalgebra": build_oalgebra,
    "module": build_module,
    "complex": build_complex,
    "prespectrum": build_prespectrum,
}
