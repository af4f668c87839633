"""Deterministic quadrature oracle for m = 2 and m = 3.

Integrates the eigenvalue density directly (after eliminating the trace
constraint) to produce entropy moments and cumulants that are independent of
both the closed-form cumulant expressions and the Monte Carlo sampler.

The density on the simplex is

    f(lambda) = (1/C) delta(1 - sum lambda_i)
                prod_{i<j} (lambda_i - lambda_j)^2 / (lambda_i + lambda_j)
                prod_i lambda_i^alpha

with normalization

    C = 2^(-m(m+2 alpha)) pi^(m/2) / Gamma(m(m+2 alpha+1)/2)
        * prod_{i=1..m} Gamma(i+1) Gamma(i+2 alpha+1) / Gamma(i+alpha+1/2).

For m = 2 the delta collapses the integral to one dimension; for m = 3 to a
two-dimensional integral over the triangle.  The substitution lambda = sin^2 u
absorbs the (lambda (1-lambda))^alpha endpoint behaviour analytically, so the
alpha = -1/2 case (n = m) has a smooth integrand.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from .cumulants import EnsembleDims, moments_cumulants_convert


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool = True


def normalization_constant(dims: EnsembleDims, dps: int = 30) -> float:
    """The constant C of the eigenvalue density, via Gamma functions."""
    m = dims.m
    two_alpha = dims.alpha.twice  # 2*alpha, an odd integer
    with mpmath.workdps(dps):
        a = mpmath.mpf(two_alpha) / 2
        c = mpmath.mpf(2) ** (-m * (m + two_alpha)) * mpmath.pi ** (mpmath.mpf(m) / 2)
        c /= mpmath.gamma(mpmath.mpf(m * (m + two_alpha + 1)) / 2)
        for i in range(1, m + 1):
            c *= mpmath.gamma(i + 1) * mpmath.gamma(i + 2 * a + 1) / mpmath.gamma(i + a + 0.5)
        return float(c)


def _entropy2(lam1: float) -> float:
    lam2 = 1.0 - lam1
    s = 0.0
    if lam1 > 0.0:
        s -= lam1 * math.log(lam1)
    if lam2 > 0.0:
        s -= lam2 * math.log(lam2)
    return s


def _moments_m2(dims: EnsembleDims, powers: list[int], tol: float):
    """E[S^k] for m = 2 as 1-D integrals over u with lambda1 = sin^2 u."""
    c = normalization_constant(dims)
    two_alpha = dims.alpha.twice
    counter = [0]

    def make_integrand(k: int):
        def f(u: float) -> float:
            counter[0] += 1
            su, cu = math.sin(u), math.cos(u)
            lam1 = su * su
            # (2 lam1 - 1)^2 (lam1 (1-lam1))^alpha * dlam1, ordered x2
            w = (2.0 * lam1 - 1.0) ** 2 * (su * cu) ** (two_alpha + 1) * 2.0
            w *= 2.0 / c
            return w * _entropy2(lam1) ** k if k else w

        return f

    out = []
    for k in powers:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", integrate.IntegrationWarning)
            val, err = integrate.quad(
                make_integrand(k), math.pi / 4, math.pi / 2,
                epsabs=tol / 10, epsrel=1e-13, limit=400,
            )
            converged = not any(
                issubclass(w.category, integrate.IntegrationWarning) for w in caught
            )
        out.append(QuadratureResult(val, max(err, 1e-16), counter[0], converged))
        counter[0] = 0
    return out


def _moments_m3(dims: EnsembleDims, powers: list[int], tol: float):
    """E[S^k] for m = 3 as nested integrals over the full triangle.

    Parametrization: lambda1 = sin^2 u, lambda2 = cos^2 u sin^2 v,
    lambda3 = cos^2 u cos^2 v with u, v in (0, pi/2).  Density weight times
    Jacobian is 4 sin^(2a+1) u cos^(4a+3) u (sin v cos v)^(2a+1) times the
    pair-interaction factor; all exponents are nonnegative integers.
    """
    c = normalization_constant(dims)
    two_alpha = dims.alpha.twice
    p_u_sin = two_alpha + 1
    p_u_cos = 2 * two_alpha + 3
    p_v = two_alpha + 1
    counter = [0]
    inner_err_max = [0.0]
    half_pi = math.pi / 2

    def make_integrand(k: int):
        def inner(v: float, lam1: float, su_cu_pow: float) -> float:
            counter[0] += 1
            sv, cv = math.sin(v), math.cos(v)
            rest = 1.0 - lam1
            lam2 = rest * sv * sv
            lam3 = rest * cv * cv
            pair = (
                (lam1 - lam2) ** 2 / (lam1 + lam2)
                * (lam1 - lam3) ** 2 / (lam1 + lam3)
                * (lam2 - lam3) ** 2 / (lam2 + lam3)
            )
            w = 4.0 / c * su_cu_pow * (sv * cv) ** p_v * pair
            if k:
                s = 0.0
                for lam in (lam1, lam2, lam3):
                    if lam > 0.0:
                        s -= lam * math.log(lam)
                w *= s ** k
            return w

        def outer(u: float) -> float:
            su, cu = math.sin(u), math.cos(u)
            lam1 = su * su
            su_cu_pow = su ** p_u_sin * cu ** p_u_cos
            val, err = integrate.quad(
                inner, 0.0, half_pi, args=(lam1, su_cu_pow),
                epsabs=tol / 100, epsrel=1e-12, limit=200,
            )
            inner_err_max[0] = max(inner_err_max[0], err)
            return val

        return outer

    out = []
    for k in powers:
        counter[0] = 0
        inner_err_max[0] = 0.0
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", integrate.IntegrationWarning)
            val, err = integrate.quad(
                make_integrand(k), 0.0, half_pi,
                epsabs=tol / 10, epsrel=1e-11, limit=200,
            )
            converged = not any(
                issubclass(w.category, integrate.IntegrationWarning) for w in caught
            )
        total_err = err + half_pi * inner_err_max[0]
        out.append(QuadratureResult(val, max(total_err, 1e-16), counter[0], converged))
    return out


_TOL = {2: 1e-10, 3: 1e-7}


def moment_oracle(dims: EnsembleDims, powers: list[int], tol: float | None = None):
    """Raw entropy moments E[S^k] for the requested powers (m in {2, 3})."""
    if dims.m == 2:
        return _moments_m2(dims, powers, tol or _TOL[2])
    if dims.m == 3:
        return _moments_m3(dims, powers, tol or _TOL[3])
    raise ValueError(f"quadrature oracle supports m in {{2, 3}}, got m={dims.m}")


def normalization_check(dims: EnsembleDims, tol: float | None = None) -> QuadratureResult:
    """Total mass of the density with the exact constant C; should be 1."""
    return moment_oracle(dims, [0], tol)[0]


def oracle_cumulants(dims: EnsembleDims, max_order: int = 3, tol: float | None = None):
    """kappa_1..kappa_max_order by quadrature moments plus moment-cumulant
    conversion, with first-order error propagation."""
    if not 1 <= max_order <= 3:
        raise ValueError("max_order must be 1, 2 or 3")
    moments = moment_oracle(dims, [1, 2, 3][:max_order], tol)
    mu = [r.value for r in moments]
    err = [r.error_estimate for r in moments]
    evals = sum(r.evaluations for r in moments)
    converged = all(r.converged for r in moments)
    while len(mu) < 3:
        mu.append(0.0)
        err.append(0.0)
    k1, k2, k3 = moments_cumulants_convert(tuple(mu), "moments_to_cumulants")
    e1 = err[0]
    e2 = err[1] + 2 * abs(mu[0]) * err[0]
    e3 = err[2] + 3 * (abs(mu[0]) * err[1] + abs(mu[1]) * err[0]) + 6 * mu[0] ** 2 * err[0]
    results = [
        QuadratureResult(k1, e1, evals, converged),
        QuadratureResult(k2, e2, evals, converged),
        QuadratureResult(k3, e3, evals, converged),
    ]
    return results[:max_order]
