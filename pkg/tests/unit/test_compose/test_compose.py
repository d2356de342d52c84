"""Unit tests for the composition product."""

import pytest

from operadkit.basecat import compose as compose_maps
from operadkit.basecat import finset, from_function, identity, is_isomorphism, morphisms_equal
from operadkit.compose import (
    Associator,
    associator,
    compose,
    compose_morphisms,
    composite_bound,
    left_linearity_map,
    left_unit_map,
    oracle_comparison,
    oracle_composite,
    right_linearity_map,
    right_unit_map,
)
from operadkit.config.constants import Variant
from operadkit.errors import ColorMismatch, NonFinitary, StructureMismatch
from operadkit.operads import com
from operadkit.symseq import (
    ColorSet,
    OrbitSignature,
    coproduct_sequences,
    sequence_from_objects,
    sequences_isomorphic,
    unit_seq,
)


def arity(n, color="c"):
    return OrbitSignature(color, (color,) * n)


@pytest.fixture
def colors():
    return ColorSet(("c",))


@pytest.fixture
def binary(colors):
    return sequence_from_objects(colors, Variant.FINSET, {arity(2): finset(["mu"])})


@pytest.fixture
def nonunital_com():
    return com(3, unital=False).sequence


@pytest.fixture
def unary(colors):
    return sequence_from_objects(colors, Variant.FINSET, {arity(1): finset(["u", "v"])})

@pytest.fixture
def two_binaries(colors):
    return sequence_from_objects(colors, Variant.FINSET, {arity(2): finset(["mu", "nu"])})


def swapping(seq, pairs):
    return {key: from_function(seq.object(key), seq.object(key), pairs.__getitem__) for key in seq.orbits()}


def assert_equivariant_isomorphism(alpha, key):
    component = alpha.component(key)
    assert is_isomorphism(component)
    for g in key.aut_generators:
        left = compose_maps(component, alpha.left.result.entry(key)(g))
        right = compose_maps(alpha.right.result.entry(key)(g), component)
        assert morphisms_equal(left, right) is None


class TestCompose:
    """Closed form of ``X o Y``."""

    def test_partitions_of_nonunital_com(self, nonunital_com):
        result = compose(nonunital_com, nonunital_com, 3).result
        assert [result.object(arity(n)).size for n in (1, 2, 3)] == [1, 2, 5]
        assert result.truncated

    def test_binary_trees_of_depth_two(self, binary):
        result = compose(binary, binary).result
        assert result.orbits() == [arity(4)]
        assert result.object(arity(4)).size == 3
        assert not result.truncated
        assert result.support_bound == 4

    def test_unit_laws_up_to_isomorphism(self, binary, colors):
        unit = unit_seq(colors)
        left = compose(unit, binary)
        right = compose(binary, unit)
        assert sequences_isomorphic(left.result, binary) is None
        assert sequences_isomorphic(right.result, binary) is None
        assert is_isomorphism(left_unit_map(left, arity(2)))
        assert is_isomorphism(right_unit_map(right, arity(2)))

    def test_colors_must_agree(self, binary):
        with pytest.raises(ColorMismatch):
            compose(binary, unit_seq(ColorSet(("d",))))

    def test_truncated_left_with_nullary_right(self):
        unital = com(3).sequence
        with pytest.raises(NonFinitary):
            compose(unital, unital)

    def test_requested_bound_above_known_entries(self, nonunital_com):
        with pytest.raises(NonFinitary):
            composite_bound(nonunital_com, nonunital_com, 4)


class TestOracle:
    """The brute-force labeled composite agrees with the closed form."""

    def test_single_color(self, nonunital_com):
        witness = compose(nonunital_com, nonunital_com, 3)
        assert oracle_comparison(witness, oracle_composite(nonunital_com, nonunital_com, 3)) is None

    def test_binary(self, binary):
        witness = compose(binary, binary)
        oracle = oracle_composite(binary, binary)
        assert oracle_comparison(witness, oracle) is None
        assert oracle.result.object(arity(4)).size == 3

    def test_two_colors(self):
        y = sequence_from_objects(
            ColorSet(("a", "m")),
            Variant.FINSET,
            {OrbitSignature("a", ("a", "a")): finset(["mu"]), OrbitSignature("m", ("a", "m")): finset(["act"])},
        )
        witness = compose(y, y)
        assert oracle_comparison(witness, oracle_composite(y, y)) is None
        assert witness.result.object(OrbitSignature("a", ("a",) * 4)).size == 3
        assert witness.result.object(OrbitSignature("m", ("a", "a", "a", "m"))).size == 3


class TestMorphisms:
    """``f o g`` on orbitwise maps and the linearity maps."""

    def test_identities_give_the_identity(self, two_binaries, unary):
        witness = compose(two_binaries, unary)
        ids = {key: identity(two_binaries.object(key)) for key in two_binaries.orbits()}
        obj = witness.result.object(arity(2))
        assert morphisms_equal(compose_morphisms(witness, witness, arity(2)), identity(obj)) is None
        assert morphisms_equal(compose_morphisms(witness, witness, arity(2), left=ids), identity(obj)) is None

    def test_composites_compose(self, two_binaries):
        witness = compose(two_binaries, two_binaries)
        swap = swapping(two_binaries, {"mu": "nu", "nu": "mu"})
        key = arity(4)
        both = compose_morphisms(witness, witness, key, left=swap, right=swap)
        left_only = compose_morphisms(witness, witness, key, left=swap)
        right_only = compose_morphisms(witness, witness, key, right=swap)
        assert morphisms_equal(compose_maps(left_only, right_only), both) is None
        assert morphisms_equal(compose_maps(both, both), identity(witness.result.object(key))) is None
        assert is_isomorphism(both)

    def test_constant_map_is_not_an_isomorphism(self, two_binaries):
        witness = compose(two_binaries, two_binaries)
        collapse = swapping(two_binaries, {"mu": "mu", "nu": "mu"})
        image = compose_morphisms(witness, witness, arity(4), left=collapse, right=collapse)
        assert not is_isomorphism(image)

    def test_left_linearity(self, binary, two_binaries, unary):
        total = compose(coproduct_sequences(binary, two_binaries), unary)
        parts = [compose(binary, unary), compose(two_binaries, unary)]
        combined = coproduct_sequences(parts[0].result, parts[1].result)
        split = left_linearity_map(total, parts, combined, arity(2))
        assert split.source.size == 9
        assert is_isomorphism(split)

    def test_right_linearity(self, binary, two_binaries, unary):
        total = compose(unary, coproduct_sequences(binary, two_binaries))
        parts = [compose(unary, binary), compose(unary, two_binaries)]
        combined = coproduct_sequences(parts[0].result, parts[1].result)
        split = right_linearity_map(total, parts, combined, arity(2))
        assert split.source.size == 6
        assert is_isomorphism(split)


class TestAssociator:
    """``(X o Y) o Z -> X o (Y o Z)`` and its coherence."""

    def test_binary_unary_binary(self, binary, unary):
        alpha = associator(binary, unary, binary)
        assert alpha.keys() == [arity(4)]
        assert alpha.left.result.object(arity(4)).size == 12
        assert_equivariant_isomorphism(alpha, arity(4))

    def test_nonunital_com(self, nonunital_com):
        alpha = associator(nonunital_com, nonunital_com, nonunital_com, 3)
        assert [key.arity for key in alpha.keys()] == [1, 2, 3]
        for key in alpha.keys():
            assert_equivariant_isomorphism(alpha, key)

    def test_two_colors(self):
        y = sequence_from_objects(
            ColorSet(("a", "m")),
            Variant.FINSET,
            {OrbitSignature("a", ("a", "a")): finset(["mu"]), OrbitSignature("m", ("a", "m")): finset(["act"])},
        )
        alpha = associator(y, unit_seq(y.colors), y)
        for key in alpha.keys():
            assert_equivariant_isomorphism(alpha, key)

    def test_triangle(self, binary, two_binaries, colors):
        unit = unit_seq(colors)
        xi, iy, xy = compose(binary, unit), compose(unit, two_binaries), compose(binary, two_binaries)
        alpha = Associator(xi, compose(xi.result, two_binaries), iy, compose(binary, iy.result))
        rho = {key: right_unit_map(xi, key) for key in binary.orbits()}
        lam = {key: left_unit_map(iy, key) for key in two_binaries.orbits()}
        key = arity(4)
        via_left = compose_maps(alpha.component(key), compose_morphisms(xy, alpha.left, key, left=rho))
        assert morphisms_equal(via_left, compose_morphisms(xy, alpha.right, key, right=lam)) is None

    def test_pentagon(self, binary, two_binaries, unary):
        w, x, y, z = binary, unary, unary, two_binaries
        wx, xy, yz = compose(w, x), compose(x, y), compose(y, z)
        wx_y, w_xy = compose(wx.result, y), compose(w, xy.result)
        xy_z, x_yz = compose(xy.result, z), compose(x, yz.result)
        start, wx_yz = compose(wx_y.result, z), compose(wx.result, yz.result)
        middle, end, near = compose(w_xy.result, z), compose(w, x_yz.result), compose(w, xy_z.result)
        first, second = Associator(wx_y, start, yz, wx_yz), Associator(wx, wx_yz, x_yz, end)
        third, fourth = Associator(wx, wx_y, xy, w_xy), Associator(w_xy, middle, xy_z, near)
        fifth = Associator(xy, xy_z, yz, x_yz)
        key = arity(4)
        direct = compose_maps(second.component(key), first.component(key))
        around = compose_maps(
            compose_morphisms(near, end, key, right={k: fifth.component(k) for k in fifth.keys()}),
            compose_maps(
                fourth.component(key),
                compose_morphisms(start, middle, key, left={k: third.component(k) for k in third.keys()}),
            ),
        )
        assert morphisms_equal(direct, around) is None

    def test_witnesses_must_share_factors(self, binary, unary):
        xy, yz = compose(binary, unary), compose(unary, binary)
        left = compose(xy.result, binary)
        with pytest.raises(StructureMismatch):
            Associator(xy, left, yz, compose(unary, yz.result))
        with pytest.raises(StructureMismatch):
            Associator(xy, compose(binary, binary), yz, compose(binary, yz.result))
