"""Closed-form entropy cumulants over the Bures-Hall ensemble.

For subsystem dimensions m <= n, with alpha = n - m - 1/2 and
d = m(m + 2*alpha + 1)/2 = m*n - m^2/2, the first three cumulants of the von
Neumann entropy S are

    kappa1 = psi0(d + 1) - psi0(n + 1/2)
    kappa2 = -psi1(d + 1) + (2n(2n+m) - m^2 + 1) / (2n(2mn - m^2 + 2))
             * psi1(n + 1/2)
    kappa3 = psi2(d + 1) + a1 * psi2(n + 1/2) + a2 * psi1(n + 1/2)

with a1, a2 rational in (m, n).  The companion unconstrained ensemble (trace
not fixed to 1) has entropy T = sum x_i ln x_i whose third cumulant kappa3_T
is also in closed form.  All rational coefficients are evaluated exactly, so
every cumulant is an element of the constant ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .polygamma import HalfInteger, psi_exact
from .ring import ConstPoly


class DegenerateEnsembleError(ValueError):
    """Raised for m = 1, where S is identically zero."""


@dataclass(frozen=True)
class EnsembleDims:
    """Subsystem dimensions (m, n) with m <= n."""

    m: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("dimensions must be integers")
        if not 1 <= self.m <= self.n:
            raise ValueError(f"need 1 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def alpha(self) -> HalfInteger:
        return HalfInteger(2 * (self.n - self.m) - 1)

    @property
    def d(self) -> HalfInteger:
        # m*n - m^2/2, the shape of the Gamma law of the unconstrained trace
        return HalfInteger(self.m * (2 * self.n - self.m))

    @property
    def n_half(self) -> HalfInteger:
        return HalfInteger(2 * self.n + 1)


def kappa1(dims: EnsembleDims) -> ConstPoly:
    """Mean of S: psi0(d+1) - psi0(n + 1/2)."""
    return psi_exact(0, dims.d + 1) - psi_exact(0, dims.n_half)


def kappa2(dims: EnsembleDims) -> ConstPoly:
    """Variance of S."""
    m, n = dims.m, dims.n
    coef = Fraction(2 * n * (2 * n + m) - m * m + 1, 2 * n * (2 * m * n - m * m + 2))
    return -psi_exact(1, dims.d + 1) + ConstPoly.const(coef) * psi_exact(1, dims.n_half)


def _kappa3_coeffs(m: int, n: int) -> tuple[Fraction, Fraction]:
    q = 2 * m * n - m * m
    a1 = Fraction(4 * m * m - 8 * m * n - 4 * n * n - 7, (q + 2) * (q + 4))
    a2 = Fraction(
        2 * (m * m - 1) * ((m - 2 * n) ** 2 - 1) * (-2 * m * m + 4 * m * n - 12 * n * n + 7),
        n * (q + 2) ** 2 * (q + 4) * (4 * n * n - 1),
    )
    return a1, a2


def kappa3(dims: EnsembleDims) -> ConstPoly:
    """Third cumulant of S."""
    a1, a2 = _kappa3_coeffs(dims.m, dims.n)
    return (
        psi_exact(2, dims.d + 1)
        + ConstPoly.const(a1) * psi_exact(2, dims.n_half)
        + ConstPoly.const(a2) * psi_exact(1, dims.n_half)
    )


def skewness(dims: EnsembleDims, dps: int = 40) -> float:
    """kappa3 / kappa2^(3/2), evaluated at high precision before dividing."""
    if dims.m < 2:
        raise DegenerateEnsembleError("S is identically 0 for m = 1; skewness undefined")
    with mpmath.workdps(dps):
        k2 = kappa2(dims).evalf(dps)
        k3 = kappa3(dims).evalf(dps)
        return float(k3 / k2 ** mpmath.mpf("1.5"))


def kappa3_unconstrained(dims: EnsembleDims) -> ConstPoly:
    """Third cumulant of T = sum x_i ln x_i over the unconstrained ensemble."""
    m, n = dims.m, dims.n
    b1 = Fraction(-4 * m * m + 8 * m * n + 4 * n * n + 7, 8)
    b2 = Fraction(3 * (-m * m + 2 * m * n + 4 * n * n + 1), 4 * n)
    b3 = Fraction(
        -(m ** 4)
        - 16 * m * m * n * n
        + 4 * m * m * n
        + 5 * m * m
        + 24 * m * n ** 3
        - 10 * m * n
        + 24 * n ** 4
        + 10 * n * n
        - 4,
        2 * n * (2 * n - 1) * (2 * n + 1),
    )
    p0 = psi_exact(0, dims.n_half)
    p1 = psi_exact(1, dims.n_half)
    p2 = psi_exact(2, dims.n_half)
    inner = (
        ConstPoly.const(b1) * p2
        + ConstPoly.const(b2) * p0 * p1
        + ConstPoly.const(b3) * p1
        + p0 ** 3
        + ConstPoly.const(Fraction(9, 2)) * p0 ** 2
        + 3 * p0
    )
    return m * (2 * n - m) * inner


@dataclass(frozen=True)
class CumulantSet:
    """Exact and floating forms of the first three cumulants of S."""

    kappa1: ConstPoly
    kappa2: ConstPoly
    kappa3: ConstPoly
    kappa1_f: float
    kappa2_f: float
    kappa3_f: float
    skewness: Optional[float]


def cumulant_set(dims: EnsembleDims) -> CumulantSet:
    k1, k2, k3 = kappa1(dims), kappa2(dims), kappa3(dims)
    return CumulantSet(
        kappa1=k1,
        kappa2=k2,
        kappa3=k3,
        kappa1_f=float(k1),
        kappa2_f=float(k2),
        kappa3_f=float(k3),
        skewness=skewness(dims) if dims.m >= 2 else None,
    )


def moments_cumulants_convert(values: Sequence, direction: str) -> tuple:
    """Convert between raw moments (mu1, mu2, mu3) and cumulants (k1, k2, k3).

    Works on anything with ring arithmetic (floats, Fractions, ConstPoly).
    direction is 'moments_to_cumulants' or 'cumulants_to_moments'.
    """
    if len(values) != 3:
        raise ValueError("expected exactly three values")
    a, b, c = values
    if direction == "moments_to_cumulants":
        return (a, b - a * a, c - 3 * b * a + 2 * a * a * a)
    if direction == "cumulants_to_moments":
        return (a, b + a * a, c + 3 * b * a + a * a * a)
    raise ValueError(f"unknown direction {direction!r}")


def entropy_moments(dims: EnsembleDims) -> tuple[ConstPoly, ConstPoly, ConstPoly]:
    """Exact raw moments E[S], E[S^2], E[S^3] from the closed-form cumulants."""
    return moments_cumulants_convert(
        (kappa1(dims), kappa2(dims), kappa3(dims)), "cumulants_to_moments"
    )


def third_moment_conversion(e_h_t3: float, dims: EnsembleDims, dps: int = 40) -> float:
    """Map E_h[T^3] over the unconstrained ensemble to E_f[S^3].

    E_f[S^3] = -E_h[T^3]/(d)_3 + 3 psi0(d+3) E_f[S^2]
               - 3 (psi1(d+3) + psi0^2(d+3)) E_f[S]
               + psi2(d+3) + 3 psi1(d+3) psi0(d+3) + psi0^3(d+3)

    with (d)_3 = d(d+1)(d+2).  E_f[S], E_f[S^2] come from the closed forms.
    """
    d = dims.d.as_fraction()
    poch3 = d * (d + 1) * (d + 2)
    arg = dims.d + 3
    p0 = psi_exact(0, arg)
    p1 = psi_exact(1, arg)
    p2 = psi_exact(2, arg)
    es1, es2, _ = entropy_moments(dims)
    with mpmath.workdps(dps):
        value = (
            -mpmath.mpf(e_h_t3) * poch3.denominator / poch3.numerator
            + 3 * p0.evalf(dps) * es2.evalf(dps)
            - 3 * (p1.evalf(dps) + p0.evalf(dps) ** 2) * es1.evalf(dps)
            + (p2 + 3 * p1 * p0 + p0 ** 3).evalf(dps)
        )
        return float(value)


def single_eigenvalue_entropy_moments(dims: EnsembleDims) -> tuple[ConstPoly, ConstPoly, ConstPoly]:
    """Exact E_h[T], E_h[T^2], E_h[T^3] for m = 1.

    At m = 1 the unconstrained ensemble is a Gamma(d) law for the single
    eigenvalue x, and E[(x ln x)^k] is the k-th derivative of
    Gamma(d + k + t)/Gamma(d) at t = 0:

        E[T]   = (d)_1 psi0(d+1)
        E[T^2] = (d)_2 (psi0^2 + psi1)(d+2)
        E[T^3] = (d)_3 (psi0^3 + 3 psi0 psi1 + psi2)(d+3)
    """
    if dims.m != 1:
        raise ValueError("the Gamma-law moment oracle applies only to m = 1")
    d = dims.d.as_fraction()
    out = []
    poch = Fraction(1)
    for k in (1, 2, 3):
        poch *= d + k - 1
        arg = dims.d + k
        p0 = psi_exact(0, arg)
        if k == 1:
            core = p0
        elif k == 2:
            core = p0 ** 2 + psi_exact(1, arg)
        else:
            core = p0 ** 3 + 3 * p0 * psi_exact(1, arg) + psi_exact(2, arg)
        out.append(ConstPoly.const(poch) * core)
    return tuple(out)
