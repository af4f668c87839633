"""Polygamma tests: exact finite sums, shift recurrence, float path accuracy."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from bureshall.polygamma import HalfInteger, psi_exact, psi_float
from bureshall.ring import GAMMA, LN2, ZETA2, ZETA3, ConstPoly


class TestHalfInteger:
    def test_of_int(self):
        assert HalfInteger.of(3).twice == 6
        assert HalfInteger.of(3).is_integer

    def test_of_fraction(self):
        h = HalfInteger.of(Fraction(5, 2))
        assert h.twice == 5 and not h.is_integer

    def test_rejects_thirds(self):
        with pytest.raises(ValueError):
            HalfInteger.of(Fraction(1, 3))

    def test_arithmetic(self):
        h = HalfInteger.of(Fraction(5, 2))
        assert (h + 1).as_fraction() == Fraction(7, 2)
        assert (h - Fraction(1, 2)).as_fraction() == 2
        assert float(h) == 2.5
        assert HalfInteger.of(2) < h


class TestPsiExactExamples:
    def test_psi0_at_1(self):
        assert psi_exact(0, 1) == -GAMMA

    def test_psi0_at_5_halves(self):
        assert psi_exact(0, Fraction(5, 2)) == -GAMMA - 2 * LN2 + Fraction(8, 3)

    def test_psi1_at_1(self):
        assert psi_exact(1, 1) == ZETA2

    def test_psi2_at_half(self):
        assert psi_exact(2, Fraction(1, 2)) == -14 * ZETA3

    def test_psi1_at_half(self):
        assert psi_exact(1, Fraction(1, 2)) == 3 * ZETA2

    def test_degree_is_one(self):
        for order in (0, 1, 2):
            for twice in (1, 2, 5, 17):
                assert psi_exact(order, HalfInteger(twice)).total_degree() <= 1

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            psi_exact(0, 0)
        with pytest.raises(ValueError):
            psi_exact(1, Fraction(-1, 2))

    def test_order_rejected(self):
        with pytest.raises(ValueError):
            psi_exact(3, 1)


@settings(max_examples=200, deadline=None)
@given(
    k=st.integers(min_value=0, max_value=2),
    twice_z=st.integers(min_value=1, max_value=40),
    n=st.integers(min_value=1, max_value=50),
)
def test_shift_recurrence_exact(k, twice_z, n):
    """psi_k(z+n) - psi_k(z) == (-1)^k k! sum_{i<n} (z+i)^-(k+1), exactly."""
    z = HalfInteger(twice_z)
    lhs = psi_exact(k, z + n) - psi_exact(k, z)
    zf = z.as_fraction()
    total = sum(
        (Fraction(1) / (zf + i) ** (k + 1) for i in range(n)), Fraction(0)
    )
    rhs = ConstPoly.const((-1) ** k * math.factorial(k) * total)
    assert (lhs - rhs).is_zero()


def test_exact_vs_float_consistency():
    """poly_eval(psi_exact) agrees with psi_float on half-integers in (0, 200]."""
    args = [HalfInteger(t) for t in range(1, 61)] + [
        HalfInteger(t) for t in range(61, 401, 20)
    ]
    for k in (0, 1, 2):
        for h in args:
            exact = float(psi_exact(k, h).evalf(30))
            approx = psi_float(k, float(h))
            assert abs(approx - exact) <= 1e-12 * max(1.0, abs(exact)), (k, h)


class TestPsiFloat:
    def test_digamma_at_1(self):
        assert psi_float(0, 1.0) == pytest.approx(-0.5772156649015329, abs=1e-13)

    def test_trigamma_at_3(self):
        # zeta(2) - 5/4
        assert psi_float(1, 3.0) == pytest.approx(0.39493406684822645, abs=1e-13)

    def test_large_argument_matches_raw_asymptotic(self):
        # direct Bernoulli series at x = 10^6, no recurrence involved
        x = 1e6
        bern = [1 / 6, -1 / 30, 1 / 42, -1 / 30]
        ref = math.log(x) - 0.5 / x
        for j, b in enumerate(bern, start=1):
            ref -= b / (2 * j) / x ** (2 * j)
        assert psi_float(0, x) == pytest.approx(ref, rel=1e-13)

    def test_against_mpmath_grid(self):
        mpmath.mp.dps = 30
        for k in (0, 1, 2):
            for x in (0.07, 0.5, 1.0, 2.7, 5.5, 11.99, 12.0, 37.3, 444.4, 1e5, 1e6):
                ref = float(mpmath.polygamma(k, x))
                assert psi_float(k, x) == pytest.approx(ref, rel=1e-13), (k, x)

    def test_against_scipy_grid(self):
        for k in (0, 1, 2):
            for x in (0.3, 1.5, 9.0, 123.456):
                assert psi_float(k, x) == pytest.approx(
                    float(special.polygamma(k, x)), rel=1e-12
                )

    def test_monotonicity_signs(self):
        for x in (0.25, 1.0, 3.5, 10.0, 100.0, 1e4):
            assert psi_float(1, x) > 0
            assert psi_float(2, x) < 0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            psi_float(0, 0.0)
        with pytest.raises(ValueError):
            psi_float(2, -3.0)
        with pytest.raises(ValueError):
            psi_float(5, 1.0)
