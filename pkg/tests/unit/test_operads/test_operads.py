"""Unit tests for operads, their checks, tables and maps."""

from itertools import product

import pytest

from operadkit.algmod import cyclic_monoid, enveloping_operad
from operadkit.basecat import finset, from_function
from operadkit.config.constants import Variant
from operadkit.errors import MultiColoredInput, WrongVariant
from operadkit.operads import (
    OperadMap,
    ass,
    check_category,
    check_operad,
    check_operad_map,
    com,
    custom_from_tables,
    free_on_nullary,
    identity_map,
    linearize_operad,
    mcom,
    mp,
    operad_to_tables,
    phi,
    psi,
    rho,
    underlying_category,
)
from operadkit.symseq import OrbitSignature


def arity(n, color="c"):
    return OrbitSignature(color, (color,) * n)


@pytest.fixture
def corrupted_ass():
    """``ass(2)`` with one right-unit composite reversed."""
    tables = operad_to_tables(ass(2))
    unit = (arity(1), (0,))
    tables.compositions[(arity(2), (0, 1), (unit, unit))] = {(1, 0): 1}
    return custom_from_tables(tables)


class TestLibrary:
    """Library operads satisfy the operad laws."""

    @pytest.mark.parametrize(
        "factory",
        [
            lambda: com(3),
            lambda: com(3, unital=False),
            lambda: ass(3),
            lambda: mcom(2),
            lambda: linearize_operad(com(3)),
            lambda: linearize_operad(ass(2)),
            lambda: mp(com(2)),
        ],
    )
    def test_laws_hold(self, factory):
        report = check_operad(factory())
        assert report.passed, report.first_witness()
        assert report.checked["associativity"] > 0

    def test_sizes(self):
        assert ass(3).object(arity(3)).size == 6
        assert ass(3).units == {"c": {(0,): 1}}
        assert com(3).nullary("c").size == 1
        assert com(3, unital=False).nullary("c").is_initial
        assert com(3, unital=False).name == "com+"

    def test_linearized_name_and_variant(self):
        q = linearize_operad(com(2))
        assert q.name == "Qcom"
        assert q.variant == Variant.VECTQ
        with pytest.raises(WrongVariant):
            linearize_operad(q)

    def test_mp_needs_one_color(self):
        with pytest.raises(MultiColoredInput):
            mp(mcom(2))


class TestChecks:
    """Failures carry the first broken law."""

    def test_corrupted_unit_composite(self, corrupted_ass):
        report = check_operad(corrupted_ass)
        assert not report.passed
        assert report.failures[0].law == "right-unit"
        assert report.first_witness().startswith("right-unit: ")

    def test_report_dict(self, corrupted_ass):
        data = check_operad(corrupted_ass).to_dict()
        assert data["subject"] == "ass"
        assert data["bound"] == 2
        assert data["passed"] is False
        assert data["failures"][0]["law"] == "right-unit"

    def test_bound_is_capped_at_declared_bound(self):
        assert check_operad(com(2), 5).bound == 2


class TestTables:
    """Explicit tables rebuild the same operad."""

    @pytest.mark.parametrize("factory", [lambda: ass(2), lambda: mcom(2), lambda: linearize_operad(com(2))])
    def test_round_trip(self, factory):
        original = factory()
        tables = operad_to_tables(original)
        rebuilt = custom_from_tables(tables)
        assert check_operad(rebuilt).passed
        again = operad_to_tables(rebuilt)
        assert again.entries == tables.entries
        assert again.actions == tables.actions
        assert again.compositions == tables.compositions
        assert again.units == tables.units


class TestMapsAndCategories:
    """Operad maps and the underlying category."""

    def test_identity_map(self):
        assert check_operad_map(identity_map(com(3))).passed

    def test_skeleton_maps(self):
        p = com(3)
        for f in (psi(p), phi(p), rho(p)):
            assert check_operad_map(f).passed, f.name

    def test_maps_out_of_nullary_operads_are_nullary_families(self):
        base = com(3)
        target = enveloping_operad(base, cyclic_monoid(base, 2), bound=1).result
        o = free_on_nullary(target.colors, Variant.FINSET, {"c": finset(["s", "t"])})
        nullary, unary = OrbitSignature("c", ()), arity(1)
        families = list(product(target.labels(nullary), repeat=2))
        assert len(families) == 4 and len(target.labels(unary)) == 2
        found = []
        for images in families:
            table = dict(zip(("s", "t"), images))
            for u in target.labels(unary):
                components = {
                    nullary: from_function(o.object(nullary), target.object(nullary), table.__getitem__),
                    unary: from_function(o.object(unary), target.object(unary), lambda _, u=u: u),
                }
                if check_operad_map(OperadMap(o, target, components)).passed:
                    found.append(images)
        assert len(found) == len(families)
        assert set(found) == set(families)

    def test_underlying_category(self):
        category = underlying_category(mcom(2))
        assert category.hom_sizes() == {"a->a": 1, "m->m": 1}
        assert check_category(category).passed
