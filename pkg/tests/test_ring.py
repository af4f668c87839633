"""Exact-ring tests: arithmetic axioms, evaluation, canonical text form."""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bureshall.ring import (
    GAMMA,
    LN2,
    ZETA2,
    ZETA3,
    ConstPoly,
    poly_combine,
    poly_eval,
    poly_is_zero,
)


class TestCombineExamples:
    def test_additive_inverse(self):
        assert poly_combine(GAMMA, GAMMA, "sub").is_zero()

    def test_scalar_distribution(self):
        p = poly_combine(GAMMA + Fraction(1, 2), ConstPoly.const(2), "mul")
        assert p == 2 * GAMMA + 1

    def test_hand_expansion(self):
        one_minus_g = ConstPoly.const(1) - GAMMA
        assert poly_combine(one_minus_g, one_minus_g, "mul") == 1 - 2 * GAMMA + GAMMA ** 2

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            poly_combine(GAMMA, GAMMA, "div")


class TestIsZero:
    def test_zero(self):
        assert poly_is_zero(ConstPoly())

    def test_gamma_minus_gamma(self):
        assert poly_is_zero(GAMMA - GAMMA)

    def test_structural_not_numeric(self):
        # 822/500 = 1.644 is numerically close to zeta(2) but structurally distinct
        assert not poly_is_zero(ZETA2 - Fraction(822, 500))


class TestEval:
    def test_gamma(self):
        assert float(poly_eval(GAMMA, 15)) == pytest.approx(0.5772157, abs=5e-8)

    def test_zeta2(self):
        assert float(poly_eval(ZETA2, 20)) == pytest.approx(1.6449341, abs=5e-8)

    def test_linear_combination(self):
        # 2 ln 2 - 7/6
        value = float(poly_eval(2 * LN2 - Fraction(7, 6), 30))
        assert value == pytest.approx(0.2196276944532239, abs=1e-14)

    def test_precision_floor(self):
        with pytest.raises(ValueError):
            poly_eval(GAMMA, 14)

    def test_zeta3(self):
        assert float(poly_eval(ZETA3, 30)) == pytest.approx(1.2020569031595943, abs=1e-14)


# -- randomized ring properties -------------------------------------------------

coeffs = st.fractions(
    min_value=Fraction(-10 ** 6), max_value=Fraction(10 ** 6), max_denominator=1000
)
monomials = st.tuples(*(st.integers(min_value=0, max_value=1) for _ in range(4)))


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(monomials, coeffs, max_size=5))
    return ConstPoly(terms)


@settings(max_examples=150, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), st.sampled_from(["add", "sub", "mul"]))
def test_eval_is_homomorphism(a, b, op):
    combined = poly_eval(poly_combine(a, b, op), 30)
    fa, fb = poly_eval(a, 30), poly_eval(b, 30)
    direct = {"add": fa + fb, "sub": fa - fb, "mul": fa * fb}[op]
    scale = max(1.0, abs(float(fa)), abs(float(fb)), abs(float(combined)))
    assert abs(float(combined - direct)) <= 1e-12 * scale


@settings(max_examples=150, deadline=None)
@given(polys())
def test_text_round_trip(p):
    assert ConstPoly.from_text(p.to_text()) == p


def test_canonical_text_examples():
    p = Fraction(75, 8) * ZETA3 - Fraction(33, 160) * ZETA2 - Fraction(295, 27)
    assert p.to_text() == "75/8*z3 - 33/160*z2 - 295/27"
    assert ConstPoly().to_text() == "0"
    assert (-GAMMA).to_text() == "-g"
    assert (2 * LN2 - Fraction(7, 6)).to_text() == "2*l2 - 7/6"
    assert (GAMMA ** 2 * LN2).to_text() == "g^2*l2"


def test_graded_lex_order():
    # higher total degree first; within a degree z3 > z2 > l2 > g
    p = GAMMA + ZETA3 + GAMMA * GAMMA
    assert p.to_text() == "g^2 + z3 + g"


def test_immutability_of_views():
    p = GAMMA + 1
    view = p.terms
    view.clear()
    assert p == GAMMA + 1


def test_pow_and_degree():
    p = (GAMMA + LN2) ** 3
    assert p.total_degree() == 3
    with pytest.raises(ValueError):
        GAMMA ** -1


def test_eval_high_precision_consistency():
    p = Fraction(75, 8) * ZETA3 - Fraction(33, 160) * ZETA2 - Fraction(295, 27)
    v30 = poly_eval(p, 30)
    v60 = poly_eval(p, 60)
    assert abs(float(v30 - v60)) < 1e-25
    with mpmath.workdps(40):
        assert float(v60) == pytest.approx(0.004089889907823797, abs=1e-16)
