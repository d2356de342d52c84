"""Canonical text and JSON forms of kernel values."""

import numbers
import re
from itertools import product
from typing import Any, Dict, Iterable, List, Optional

from sympy import Matrix, Rational

from operadkit.algmod import Algebra
from operadkit.basecat import BaseObject, Label, Vector
from operadkit.config.constants import Variant
from operadkit.operads import Operad, basis, operad_to_tables, outer_elements, sequence_to_tables
from operadkit.symseq import OrbitSignature, SymmetricSequence

BARE_LABEL = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*")


def format_label(label: Label) -> str:
    """A label as the grammar reads it back."""
    if isinstance(label, tuple):
        inner = ", ".join(format_label(part) for part in label)
        return f"({inner},)" if len(label) == 1 else f"({inner})"
    if isinstance(label, numbers.Integral) and not isinstance(label, bool):
        return str(int(label))
    text = str(label)
    if isinstance(label, str) and BARE_LABEL.fullmatch(text):
        return text
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def format_rational(value) -> str:
    r = Rational(value)
    return str(r.p) if r.q == 1 else f"{r.p}/{r.q}"


def format_vector(vector: Vector) -> str:
    terms = []
    for label, coeff in sorted(vector.items(), key=lambda item: format_label(item[0])):
        if coeff == 0:
            continue
        text = format_label(label)
        terms.append(text if coeff == 1 else f"{format_rational(coeff)}*{text}")
    return " + ".join(terms) if terms else "{}"


def format_matrix(matrix: Matrix) -> str:
    rows = [" ".join(format_rational(matrix[r, c]) for c in range(matrix.cols)) for r in range(matrix.rows)]
    return "[" + "; ".join(rows) + "]"


def format_orbit(key: OrbitSignature) -> str:
    return "(" + key.out_color + " <-" + "".join(f" {c}" for c in key.inputs) + ")"


def format_perm(sigma) -> str:
    return "[" + " ".join(str(i) for i in sigma) + "]"


def _labels(labels: Iterable[Label]) -> str:
    return ", ".join(format_label(label) for label in labels)


def _flag(value: bool) -> str:
    return "true" if value else "false"


# Sections


def _table_lines(entries, actions) -> List[str]:
    lines = []
    for key, labels in entries.items():
        lines.append(f"entry {format_orbit(key)} = {_labels(labels)}")
        for sigma, images in sorted(actions.get(key, {}).items()):
            moved = "; ".join(f"{format_label(label)} -> {format_vector(v)}" for label, v in images.items())
            lines.append(f"act {format_orbit(key)} {format_perm(sigma)} = {moved}")
    return lines


def _header(kind: str, name: str, variant: Variant, colors: Iterable[str], bound: int, truncated: bool) -> List[str]:
    return [
        f"[{kind} {name}]",
        f"variant = {variant.value}",
        f"colors = {' '.join(colors)}",
        f"bound = {bound}",
        f"truncated = {_flag(truncated)}",
    ]


def sequence_section(name: str, x: SymmetricSequence) -> str:
    entries, actions = sequence_to_tables(x)
    lines = _header("sequence", name, x.variant, x.colors, x.support_bound, x.truncated)
    return "\n".join(lines + _table_lines(entries, actions)) + "\n"


def operad_section(name: str, p: Operad, bound: Optional[int] = None) -> str:
    tables = operad_to_tables(p, bound)
    lines = _header("operad", name, tables.variant, tables.colors, tables.bound, tables.truncated)
    lines += _table_lines(tables.entries, tables.actions)
    for color, unit in tables.units.items():
        lines.append(f"unit {color} = {format_vector(unit)}")
    composites = []
    for (outer, label, inner), result in tables.compositions.items():
        inputs = ", ".join(f"{format_orbit(o)} {format_label(q)}" for o, q in inner)
        head = f"compose {format_orbit(outer)} {format_label(label)} :"
        text = f"{head} {inputs}" if inputs else head
        composites.append(f"{text} = {format_vector(result)}")
    return "\n".join(lines + sorted(composites)) + "\n"


def algebra_section(name: str, alg: Algebra, operad_name: str, bound: Optional[int] = None) -> str:
    p = alg.operad
    bound = p.declared_bound if bound is None else min(bound, p.declared_bound)
    lines = [f"[algebra {name}]", f"operad = {operad_name}"]
    for color in p.colors:
        lines.append(f"carrier {color} = {_labels(alg.carrier(color).labels)}")
    actions = []
    for key, label in outer_elements(p, bound):
        if key.arity == 1 and basis(label) == p.units[key.out_color]:
            continue
        for xs in product(*[alg.carrier(c).labels for c in key.inputs]):
            value = format_vector(alg.act_basis(key, label, xs))
            actions.append(f"action {format_orbit(key)} {format_label(label)} : {_labels(xs)} = {value}")
    return "\n".join(lines + sorted(actions)) + "\n"


def complex_section(name: str, x: BaseObject) -> str:
    lines = [f"[complex {name}]"]
    for deg, labels in x.basis.items():
        lines.append(f"basis {deg} = {_labels(labels)}")
    for deg, matrix in x.differential.items():
        lines.append(f"d {deg} = {format_matrix(matrix)}")
    return "\n".join(lines) + "\n"


# JSON


def object_json(x: BaseObject) -> Dict[str, Any]:
    if x.variant == Variant.FINSET:
        return {"size": x.size, "labels": [format_label(label) for label in x.labels]}
    return {
        "dimensions": {str(deg): len(labels) for deg, labels in x.basis.items()},
        "basis": {str(deg): [format_label(label) for label in labels] for deg, labels in x.basis.items()},
    }


def sequence_json(x: SymmetricSequence) -> Dict[str, Any]:
    keys = sorted(x.orbits(), key=lambda k: k.sort_key(x.colors))
    return {
        "variant": x.variant.value,
        "colors": list(x.colors),
        "bound": x.support_bound,
        "entries": {format_orbit(key): x.object(key).size for key in keys},
    }
