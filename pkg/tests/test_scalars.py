from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from loopbrauer.scalars import (BiLaurent, EvalAtZero, LaurentPoly, lp_add, lp_eval, lp_mul,
                                parse_rational, rational_str)

X = LaurentPoly.x()
ONE = LaurentPoly.one()

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 20))
nonzero = rationals.filter(lambda q: q != 0)
polys = st.dictionaries(st.integers(-4, 4), rationals, max_size=4).map(LaurentPoly)


def test_add_examples():
    assert lp_add(X, -X) == LaurentPoly.zero()
    assert lp_add(X * X + 1, X) == X * X + X + 1
    half_inv = LaurentPoly({-1: Fraction(1, 2)})
    assert lp_add(half_inv, half_inv) == LaurentPoly.x(-1)


def test_mul_examples():
    assert lp_mul(X, LaurentPoly.x(-1)) == ONE
    assert lp_mul(X + 1, X - 1) == X * X - 1
    assert lp_mul(LaurentPoly({2: 2}), LaurentPoly({3: 3})) == LaurentPoly({5: 6})


def test_eval_examples():
    assert lp_eval(X * X, 3) == 9
    assert lp_eval(LaurentPoly.x(-1), Fraction(1, 2)) == 2
    assert lp_eval(X * X - X, "1/2") == Fraction(-1, 4)


def test_eval_at_zero():
    with pytest.raises(EvalAtZero):
        lp_eval(LaurentPoly.x(-2) + 1, 0)
    assert lp_eval(X + 3, 0) == 3


def test_zero_terms_dropped():
    p = LaurentPoly({1: 0, 2: 1, 3: Fraction(0, 5)})
    assert p.terms == {2: 1}
    assert LaurentPoly() == LaurentPoly.zero()
    assert not LaurentPoly({0: 0})


def test_parse_rational_rejects_inexact():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == -4
    for bad in ("0.5", "1e3"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    with pytest.raises(TypeError):
        parse_rational(0.5)
    assert rational_str(Fraction(6, 4)) == "3/2"
    assert rational_str(Fraction(0)) == "0"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero()


@given(polys, polys, nonzero)
def test_eval_is_homomorphism(a, b, x0):
    assert lp_eval(a * b, x0) == lp_eval(a, x0) * lp_eval(b, x0)
    assert lp_eval(a + b, x0) == lp_eval(a, x0) + lp_eval(b, x0)


@given(polys)
def test_json_round_trip(a):
    data = a.to_json()
    assert all(isinstance(p, str) and isinstance(q, str) for _, p, q in data)
    assert [e for e, _, _ in data] == sorted(e for e, _, _ in data)
    assert LaurentPoly.from_json(data) == a


def test_bilaurent_specialize():
    x1 = BiLaurent.monomial((1, 0))
    x2 = BiLaurent.monomial((0, 1))
    p = x1 * x2 + x1 * x1 - 2
    assert p.specialize() == LaurentPoly({2: 2, 0: -2})
    assert BiLaurent.from_json(p.to_json()) == p


def test_hashable_and_immutable():
    assert hash(X + 1) == hash(1 + X)
    assert len({X, X + 0, LaurentPoly.x()}) == 1
