import pytest
from hypothesis import given
from hypothesis import strategies as st

from heckecat.errors import CoefficientOverflow, NegativeQExponent
from heckecat.laurent import (
    ONE,
    QUAD,
    V,
    V_INV,
    ZERO,
    LaurentPoly,
    from_q_coeffs,
    lp_bar,
    lp_coeff,
    lp_eval_at_one,
    lp_mul,
    lp_subst_q,
)

polys = st.dictionaries(st.integers(-6, 6), st.integers(-50, 50), max_size=5).map(LaurentPoly)


def test_add_and_square():
    assert V + V_INV == LaurentPoly({1: 1, -1: 1})
    assert QUAD * QUAD == LaurentPoly({-2: 1, 0: -2, 2: 1})


def test_q_substitution():
    assert lp_mul(ONE, lp_subst_q([1, 1], 2)) == LaurentPoly({0: 1, 2: 1})
    assert lp_subst_q([1], -2) == ONE
    assert lp_subst_q([1, 1], -2) == LaurentPoly({0: 1, -2: 1})
    assert lp_subst_q({0: 1, 2: 3}, 2) == LaurentPoly({0: 1, 4: 3})
    assert from_q_coeffs((1, 0, 2), -2) == LaurentPoly({0: 1, -4: 2})
    with pytest.raises(NegativeQExponent):
        lp_subst_q({-1: 1}, 2)


def test_bar_examples():
    assert lp_bar(V) == V_INV
    assert lp_bar(3) == LaurentPoly.const(3)
    assert lp_bar(QUAD) == -QUAD


def test_coeff_and_eval():
    assert lp_coeff(LaurentPoly({1: 1, 3: 2}), 3) == 2
    assert lp_coeff(1, 5) == 0
    assert lp_eval_at_one(QUAD) == 0


def test_normalized_zero():
    assert LaurentPoly({2: 0}) == ZERO
    assert not (V - V)
    assert len(V - V) == 0


def test_overflow_is_an_error():
    big = LaurentPoly.const(2**62)
    with pytest.raises(CoefficientOverflow):
        big + big
    with pytest.raises(CoefficientOverflow):
        big * 4


def test_str():
    assert str(ZERO) == "0"
    assert str(QUAD) == "v^-1 - v"
    assert str(LaurentPoly({0: 1, 2: 1})) == "1 + v^2"


def test_json_roundtrip():
    p = LaurentPoly({-3: 2, 0: -1, 4: 7})
    assert LaurentPoly.from_json(p.to_json()) == p


def test_negative_power():
    assert V ** -2 == LaurentPoly({-2: 1})


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys, polys)
def test_eval_at_one_is_homomorphism(a, b):
    assert (a * b).eval_at_one() == a.eval_at_one() * b.eval_at_one()
    assert (a + b).eval_at_one() == a.eval_at_one() + b.eval_at_one()


@given(polys)
def test_hash_consistent(a):
    b = LaurentPoly(dict(a.items()))
    assert a == b and hash(a) == hash(b)
