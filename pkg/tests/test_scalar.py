from fractions import Fraction

import pytest

from mfg.errors import ParseError
from mfg.scalar import Scalar, cyclotomic_poly, degree


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert degree(5) == 4


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 12])
def test_roots_of_unity(m):
    z = Scalar.root(m, 1)
    acc = Scalar.of(m, 1)
    for k in range(1, m + 1):
        acc = acc * z
        assert acc == Scalar.root(m, k)
        assert acc.root_exponent() == k % m
        assert acc.is_unimodular()
        assert acc * acc.conj() == 1
    assert acc.is_one()
    # the primitive roots sum to the Moebius function value; all M-th roots sum to 0 for M > 1
    total = sum((Scalar.root(m, k) for k in range(m)), Scalar.of(m, 0))
    assert total.is_zero() == (m > 1)


def test_field_arithmetic():
    i = Scalar.root(4, 1)
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert Scalar.of(4, Fraction(1, 2)) * 2 == 1
    assert not Scalar.of(4, 2).is_unimodular()
    assert str(2 - i) == "2 - z"


def test_json_round_trip():
    x = Scalar(4, [Fraction(1, 3), Fraction(-2)])
    assert Scalar.from_json(4, x.to_json()) == x
    assert Scalar.from_json(4, 1) == 1
    assert Scalar.from_json(4, ["0", "0", "1"]) == -1  # z^2 reduced
    with pytest.raises(ParseError):
        Scalar.from_json(4, ["x"])


def test_hash_matches_rational_equality():
    assert hash(Scalar.of(4, 3)) == hash(Scalar.of(4, 3))
    assert len({Scalar.of(4, 1), Scalar.root(4, 0)}) == 1
