"""Unit tests for homology and exact linear algebra."""

import pytest
from sympy import Matrix, Rational

from operadkit.basecat import (
    chainq,
    finset,
    homology,
    homology_table,
    identity,
    is_acyclic,
    is_quasi_iso,
    mapping_cone,
    shift,
)
from operadkit.basecat import linalg
from operadkit.errors import WrongVariant


@pytest.fixture
def interval():
    """Two points joined by an edge."""
    return chainq({0: ["a0", "a1"], 1: ["b"]}, {1: Matrix([[1], [-1]])})


class TestHomology:
    """Homology by exact rank."""

    def test_interval_is_connected(self, interval):
        assert homology(interval, 0) == 1
        assert homology(interval, 1) == 0
        assert homology_table(interval) == {0: 1}

    def test_circle(self):
        circle = chainq({0: ["v"], 1: ["e"]})
        assert homology_table(circle) == {0: 1, 1: 1}

    def test_identity_is_quasi_iso(self, interval):
        assert is_quasi_iso(identity(interval))

    def test_cone_of_identity_is_acyclic(self, interval):
        cone, inclusion = mapping_cone(identity(interval))
        assert is_acyclic(cone)
        assert inclusion.target is cone

    def test_shift_moves_homology(self, interval):
        assert homology_table(shift(interval, 2)) == {2: 1}
        assert shift(interval, 1).d(2) == Matrix([[-1], [1]])

    def test_homology_needs_chain_complex(self):
        with pytest.raises(WrongVariant):
            homology_table(finset(["a"]))


class TestLinalg:
    """Exact rational linear algebra helpers."""

    def test_rank(self):
        assert linalg.rank(Matrix([[1, 2], [2, 4]])) == 1
        assert linalg.rank(linalg.zero_matrix(0, 3)) == 0

    def test_right_inverse(self):
        m = Matrix([[1, 2, 0], [0, 1, 1]])
        assert m * linalg.right_inverse(m) == linalg.identity_matrix(2)

    def test_right_inverse_requires_surjection(self):
        with pytest.raises(ValueError):
            linalg.right_inverse(Matrix([[1], [0]]))

    def test_nullspace(self):
        basis, free = linalg.nullspace(Matrix([[1, 1]]))
        assert free == [1]
        assert Matrix([[1, 1]]) * basis == Matrix([[0]])

    def test_rationals(self):
        assert linalg.parse_rational("-3/6") == Rational(-1, 2)
        assert linalg.parse_rational(" 4 ") == Rational(4)
        assert linalg.format_rational(Rational(2, 4)) == "1/2"
        assert linalg.format_rational(Rational(-3)) == "-3"
