"""Exact verification of the summation apparatus behind the cumulant formulas.

Three families of objects live here:

* the anomaly catalog Omega_1 .. Omega_18: finite single sums of rational
  functions times polygamma values that admit no closed form individually but
  cancel when cumulants are assembled;

* a declarative catalog of summation identities relating those anomalies (and
  in a few cases collapsing them to closed forms).  Each identity stores an
  admissibility predicate plus builders for its two sides; the residual
  LHS - RHS is an element of the constant ring and must be the zero
  polynomial;

* telescoping fixtures: re-summation functions G with their one-step
  differences written via the shift recurrence psi_k(z+1) - psi_k(z)
  = (-1)^k k! / z^(k+1); the check sums the differences back up to G.

All evaluation is exact.  Inadmissible parameters raise, never skip silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .polygamma import psi_exact
from .ring import ConstPoly, ZERO


class AnomalyDomainError(ValueError):
    """Parameter set makes an anomaly ill-defined (zero denominator or
    nonpositive polygamma argument)."""


class IdentityDomainError(ValueError):
    """Parameter set outside an identity's admissible domain."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"parameter must be int or Fraction, got {type(x).__name__}")


def _inv(x: Fraction, what: str, k: Optional[int] = None) -> Fraction:
    if x == 0:
        where = f" at k={k}" if k is not None else ""
        raise AnomalyDomainError(f"zero denominator in {what}{where}")
    return Fraction(1) / x


def _psi(order: int, x: Fraction, what: str, k: Optional[int] = None) -> ConstPoly:
    if x <= 0:
        where = f" at k={k}" if k is not None else ""
        raise AnomalyDomainError(f"nonpositive polygamma argument {x} in {what}{where}")
    return psi_exact(order, x)


def _sum_poly(m: int, term: Callable[[int], ConstPoly]) -> ConstPoly:
    total = ZERO
    for k in range(1, m + 1):
        total = total + term(k)
    return total


# ---------------------------------------------------------------------------
# anomalies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AnomalySpec:
    """One anomaly instance: Omega_index at summation length m with whichever
    of the parameters a, b, c it uses."""

    index: int
    m: int
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None

    def __post_init__(self):
        if self.index not in _OMEGA_PARAMS:
            raise ValueError(f"anomaly index must be 1..18, got {self.index}")
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        needed = _OMEGA_PARAMS[self.index]
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if name in needed and value is None:
                raise ValueError(f"Omega_{self.index} requires parameter {name!r}")
            if name not in needed and value is not None:
                raise ValueError(f"Omega_{self.index} does not take parameter {name!r}")


def anomaly(index: int, m: int, **params) -> AnomalySpec:
    coerced = {k: _frac(v) for k, v in params.items()}
    return AnomalySpec(index, m, **coerced)


_OMEGA_PARAMS = {
    1: ("a",), 2: ("a",),
    3: ("b", "c"), 4: ("b", "c"), 5: ("b", "c"), 6: ("b", "c"),
    7: ("a",), 8: ("a",), 9: ("a",), 10: ("a",),
    11: ("a",), 12: ("a",), 13: ("a",), 14: ("a",),
    15: ("b",), 16: ("b",),
    17: ("a",), 18: ("a",),
}


def omega(spec: AnomalySpec) -> ConstPoly:
    """Exact value of the anomaly as a polynomial in the constant ring."""
    m, a, b, c = spec.m, spec.a, spec.b, spec.c
    i = spec.index
    w = f"Omega_{i}"

    if i == 1:
        return _sum_poly(m, lambda k: _inv(a + 1 - k, w, k) * _psi(0, Fraction(k), w, k))
    if i == 2:
        return _sum_poly(m, lambda k: Fraction(1, k) * _psi(0, a + 1 - k, w, k))
    if i == 3:
        return _sum_poly(m, lambda k: _inv(k + c, w, k) ** 2 * _psi(0, k + b, w, k))
    if i == 4:
        return _sum_poly(m, lambda k: _inv(k + c, w, k) * _psi(0, k + b, w, k) ** 2)
    if i == 5:
        return _sum_poly(m, lambda k: _inv(k + c, w, k) * _psi(1, k + b, w, k))
    if i == 6:
        return _sum_poly(m, lambda k: _inv(k + c, w, k) * _psi(0, k + b, w, k))
    if i == 7:
        return _sum_poly(m, lambda k: _inv(a + 1 - k, w, k) ** 2 * _psi(0, Fraction(k), w, k))
    if i == 8:
        return _sum_poly(m, lambda k: _inv(a + 1 - k, w, k) * _psi(0, Fraction(k), w, k) ** 2)
    if i == 9:
        return _sum_poly(m, lambda k: Fraction(1, k * k) * _psi(0, a + 1 - k, w, k))
    if i == 10:
        return _sum_poly(m, lambda k: Fraction(1, k) * _psi(0, a + 1 - k, w, k) ** 2)
    if i == 11:
        return _sum_poly(
            m,
            lambda k: Fraction(1, m + 1 - k)
            * _psi(0, Fraction(k), w, k) * _psi(0, k + a - m, w, k),
        )
    if i == 12:
        return _sum_poly(
            m,
            lambda k: Fraction(1, m + 1 - k)
            * _psi(0, Fraction(k), w, k) * _psi(0, a + 1 - k, w, k),
        )
    if i == 13:
        return _sum_poly(
            m,
            lambda k: _inv(a + 1 - k, w, k)
            * _psi(0, Fraction(k), w, k) * _psi(0, a + 1 - k, w, k),
        )
    if i == 14:
        return _sum_poly(
            m,
            lambda k: Fraction(1, k)
            * _psi(0, Fraction(k), w, k) * _psi(0, a + 1 - k, w, k),
        )
    if i == 15:
        return _sum_poly(
            m,
            lambda k: _inv(k + b, w, k)
            * _psi(0, Fraction(k), w, k) * _psi(0, k + b, w, k),
        )
    if i == 16:
        return _sum_poly(
            m,
            lambda k: Fraction(1, k)
            * _psi(0, Fraction(k), w, k) * _psi(0, k + b, w, k),
        )
    if i == 17:
        return _sum_poly(m, lambda k: _inv(a + 1 - k, w, k) * _psi(1, Fraction(k), w, k))
    if i == 18:
        return _sum_poly(m, lambda k: Fraction(1, k) * _psi(1, a + 1 - k, w, k))
    raise AssertionError(i)


@dataclass(frozen=True)
class DegeneracyRelation:
    name: str
    passed: bool
    residual_text: str


def degenerate_anomaly_check(m: int) -> list[DegeneracyRelation]:
    """At a = m the two-sided anomalies collapse pairwise onto single-sum
    anomalies: Omega7 = Omega9, Omega8 = Omega10, Omega11 = Omega10."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    am = Fraction(m)
    pairs = [
        ("omega7_equals_omega9", omega(anomaly(7, m, a=am)) - omega(anomaly(9, m, a=am))),
        ("omega8_equals_omega10", omega(anomaly(8, m, a=am)) - omega(anomaly(10, m, a=am))),
        ("omega11_equals_omega10", omega(anomaly(11, m, a=am)) - omega(anomaly(10, m, a=am))),
    ]
    return [
        DegeneracyRelation(name, res.is_zero(), "0" if res.is_zero() else res.to_text())
        for name, res in pairs
    ]


# ---------------------------------------------------------------------------
# identity catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCase:
    identity_id: str
    m: int
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None
    alpha: Optional[Fraction] = None


def case(identity_id: str, m: int, **params) -> IdentityCase:
    coerced = {k: _frac(v) for k, v in params.items()}
    return IdentityCase(identity_id, m, **coerced)


@dataclass(frozen=True)
class IdentityDef:
    identity_id: str
    params: tuple[str, ...]
    check: Callable[[IdentityCase], None]
    lhs: Callable[[IdentityCase], ConstPoly]
    rhs: Callable[[IdentityCase], ConstPoly]


def _p0(x):
    return psi_exact(0, x)


def _p1(x):
    return psi_exact(1, x)


def _p2(x):
    return psi_exact(2, x)


def _need(cond: bool, msg: str):
    if not cond:
        raise IdentityDomainError(msg)


def _check_m_only(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")


def _check_a_gt_m(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    # a = m is a removable-singularity boundary of the written closed form
    # (psi values at a - m = 0 appear); recorded as inadmissible, not guessed.
    _need(cs.a is not None and cs.a > cs.m, f"need a > m, got a={cs.a}, m={cs.m}")


def _check_b_pos(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    _need(cs.b is not None and cs.b > 0, f"need b > 0, got b={cs.b}")


def _check_b_nonneg(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    _need(cs.b is not None and cs.b >= 0, f"need b >= 0, got b={cs.b}")


def _check_bc_distinct_nonneg(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    _need(cs.b is not None and cs.b >= 0, f"need b >= 0, got b={cs.b}")
    _need(cs.c is not None and cs.c >= 0, f"need c >= 0, got c={cs.c}")
    _need(cs.b != cs.c, "need b != c")


def _check_ab_pos(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    _need(cs.a is not None and cs.a > 0, f"need a > 0, got a={cs.a}")
    _need(cs.b is not None and cs.b > 0, f"need b > 0, got b={cs.b}")


def _check_abc_distinct_pos_int(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    for name in ("a", "b", "c"):
        v = getattr(cs, name)
        _need(v is not None and v > 0 and v.denominator == 1,
              f"need positive integer {name}, got {v}")
    _need(len({cs.a, cs.b, cs.c}) == 3, "need a, b, c pairwise distinct")


def _check_alpha(cs: IdentityCase):
    _need(cs.m >= 1, "m must be a positive integer")
    _need(cs.alpha is not None and 2 * cs.alpha > 0,
          f"need alpha > 0 so every argument stays positive, got alpha={cs.alpha}")


_IDENTITIES: dict[str, IdentityDef] = {}


def _register(identity_id, params, check, lhs, rhs):
    _IDENTITIES[identity_id] = IdentityDef(identity_id, params, check, lhs, rhs)


# -- closed forms in m alone -------------------------------------------------

def _lhs_psi0_over_mk(cs):
    m = cs.m
    return _sum_poly(m, lambda k: Fraction(1, m + 1 - k) * _p0(Fraction(k)))


def _rhs_psi0_over_mk(cs):
    m1 = Fraction(cs.m + 1)
    return _p0(m1) ** 2 - _p0(Fraction(1)) * _p0(m1) + _p1(m1) - _p1(Fraction(1))


_register("psi0_over_mk", ("m",), _check_m_only, _lhs_psi0_over_mk, _rhs_psi0_over_mk)

_register(
    "psi0_mk_over_k", ("m",), _check_m_only,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k) * _p0(Fraction(cs.m + 1 - k))),
    _rhs_psi0_over_mk,
)


def _rhs_psi0_over_k2(cs):
    m1 = Fraction(cs.m + 1)
    one = Fraction(1)
    return (
        _sum_poly(cs.m, lambda k: Fraction(1, k) * _p1(Fraction(k)))
        - _p0(m1) * _p1(m1) - Fraction(1, 2) * _p2(m1)
        + _p0(one) * _p1(one) + Fraction(1, 2) * _p2(one)
    )


_register(
    "psi0_over_k2", ("m",), _check_m_only,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k * k) * _p0(Fraction(k))),
    _rhs_psi0_over_k2,
)


def _rhs_psi0_mk_over_k2(cs):
    m1 = Fraction(cs.m + 1)
    one = Fraction(1)
    return (
        _sum_poly(cs.m, lambda k: Fraction(1, k) * _p1(Fraction(k)))
        + _p0(one) * _p1(m1) + _p0(m1) * (_p1(one) - 2 * _p1(m1))
        - _p2(m1) + _p2(one)
    )


_register(
    "psi0_mk_over_k2", ("m",), _check_m_only,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k * k) * _p0(Fraction(cs.m + 1 - k))),
    _rhs_psi0_mk_over_k2,
)


def _rhs_psi0sq_mk_over_k(cs):
    m1 = Fraction(cs.m + 1)
    one = Fraction(1)
    return (
        _sum_poly(cs.m, lambda k: Fraction(1, k) * _p1(Fraction(k)))
        + _p0(m1) ** 3 - _p0(one) * _p0(m1) ** 2 - 2 * _p1(one) * _p0(m1)
        + _p1(m1) * _p0(m1) + _p0(one) * _p1(m1)
    )


_register(
    "psi0sq_mk_over_k", ("m",), _check_m_only,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k) * _p0(Fraction(cs.m + 1 - k)) ** 2),
    _rhs_psi0sq_mk_over_k,
)


# -- shifted-index identities with parameter b (or b, c) ----------------------

def _rhs_psi0_kb_over_kb2(cs):
    b, m = cs.b, cs.m
    bm1, b1 = b + m + 1, b + 1
    return (
        _sum_poly(m, lambda k: _inv(k + b, "psi0_kb_over_kb2", k) * _p1(k + b))
        - _p0(bm1) * _p1(bm1) - Fraction(1, 2) * _p2(bm1)
        + _p0(b1) * _p1(b1) + Fraction(1, 2) * _p2(b1)
    )


_register(
    "psi0_kb_over_kb2", ("m", "b"), _check_b_nonneg,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(k + cs.b, "w", k) ** 2 * _p0(k + cs.b)),
    _rhs_psi0_kb_over_kb2,
)


def _rhs_psi0_kb_over_k2(cs):
    b, m = cs.b, cs.m
    bm1, b1, m1, one = b + m + 1, b + 1, Fraction(m + 1), Fraction(1)
    return (
        _sum_poly(m, lambda k: _inv(k + b, "psi0_kb_over_k2", k) * _p1(Fraction(k)))
        - _inv(b * b, "1/b^2") * (_p0(bm1) - _p0(b1) - _p0(m1) + _p0(one))
        - _p1(m1) * _p0(bm1)
        - _inv(b, "1/b") * (_p1(one) - _p1(m1))
        + _p1(one) * _p0(b1)
    )


_register(
    "psi0_kb_over_k2", ("m", "b"), _check_b_pos,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k * k) * _p0(k + cs.b)),
    _rhs_psi0_kb_over_k2,
)


def _rhs_psi0_over_kb2(cs):
    b, m = cs.b, cs.m
    bm1, b1, m1, one = b + m + 1, b + 1, Fraction(m + 1), Fraction(1)
    return (
        _sum_poly(m, lambda k: Fraction(1, k) * _p1(k + b))
        + _inv(b * b, "1/b^2") * (_p0(bm1) - _p0(b1) - _p0(m1) + _p0(one))
        - _p0(m1) * _p1(bm1)
        - _inv(b, "1/b") * (_p1(bm1) - _p1(b1))
        + _p0(one) * _p1(b1)
    )


_register(
    "psi0_over_kb2", ("m", "b"), _check_b_pos,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(k + cs.b, "psi0_over_kb2", k) ** 2 * _p0(Fraction(k))),
    _rhs_psi0_over_kb2,
)


def _rhs_psi0_kb_over_kc_swap(cs):
    b, c, m = cs.b, cs.c, cs.m
    return (
        -_sum_poly(m, lambda k: _inv(k + b, "swap", k) * _p0(k + c))
        + _p0(m + c + 1) * _p0(m + b + 1) - _p0(b + 1) * _p0(c + 1)
        + _inv(c - b, "1/(c-b)")
        * (_p0(m + c + 1) - _p0(m + b + 1) - _p0(c + 1) + _p0(b + 1))
    )


_register(
    "psi0_kb_over_kc_swap", ("m", "b", "c"), _check_bc_distinct_nonneg,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(k + cs.c, "swap", k) * _p0(k + cs.b)),
    _rhs_psi0_kb_over_kc_swap,
)


def _rhs_psi0_kb_over_kc2(cs):
    b, c, m = cs.b, cs.c, cs.m
    cm1, c1, bm1, b1 = c + m + 1, c + 1, b + m + 1, b + 1
    return (
        _sum_poly(m, lambda k: _inv(k + b, "pair", k) * _p1(k + c))
        + _inv((c - b) ** 2, "1/(c-b)^2") * (_p0(cm1) - _p0(c1) - _p0(bm1) + _p0(b1))
        + _inv(c - b, "1/(c-b)") * (_p1(c1) - _p1(cm1))
        - _p1(cm1) * _p0(bm1) + _p1(c1) * _p0(b1)
    )


_register(
    "psi0_kb_over_kc2", ("m", "b", "c"), _check_bc_distinct_nonneg,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(k + cs.c, "pair", k) ** 2 * _p0(k + cs.b)),
    _rhs_psi0_kb_over_kc2,
)


def _rhs_psi0_psi0kb_over_k(cs):
    b, m = cs.b, cs.m
    bm1, b1, m1, one = b + m + 1, b + 1, Fraction(m + 1), Fraction(1)
    return (
        -Fraction(1, 2) * _sum_poly(
            m, lambda k: _inv(k + b, "w", k) * (_p1(Fraction(k)) + _p0(Fraction(k)) ** 2)
        )
        - _inv(b, "1/b") * _sum_poly(m, lambda k: Fraction(1, k) * _p0(k + b))
        + _inv(b * b, "1/b^2") * (_p0(bm1) - _p0(b1) - _p0(m1) + _p0(one))
        + Fraction(1, 2) * _inv(b, "1/b") * (
            2 * _p0(m1) * _p0(bm1) - 2 * _p0(one) * _p0(b1)
            - _p0(m1) ** 2 - _p1(m1) + _p0(one) ** 2 + _p1(one)
        )
        + Fraction(1, 2) * (
            (_p0(m1) ** 2 + _p1(m1)) * _p0(bm1) - (_p0(one) ** 2 + _p1(one)) * _p0(b1)
        )
    )


_register(
    "psi0_psi0kb_over_k", ("m", "b"), _check_b_pos,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k) * _p0(Fraction(k)) * _p0(k + cs.b)),
    _rhs_psi0_psi0kb_over_k,
)


def _rhs_psi0_psi0kb_over_kb(cs):
    b, m = cs.b, cs.m
    bm1, b1, m1, one = b + m + 1, b + 1, Fraction(m + 1), Fraction(1)
    return (
        -Fraction(1, 2) * _sum_poly(
            m, lambda k: Fraction(1, k) * (_p0(k + b) ** 2 + _p1(k + b))
        )
        - _inv(b, "1/b") * _sum_poly(m, lambda k: Fraction(1, k) * _p0(k + b))
        + Fraction(1, 2) * _inv(b, "1/b") * (
            _p0(bm1) ** 2 + _p1(bm1) - _p0(b1) ** 2 - _p1(b1)
        )
        + Fraction(1, 2) * (
            _p0(m1) * (_p0(bm1) ** 2 + _p1(bm1))
            - _p0(one) * _p0(b1) ** 2 - _p0(one) * _p1(b1)
        )
    )


_register(
    "psi0_psi0kb_over_kb", ("m", "b"), _check_b_pos,
    lambda cs: _sum_poly(
        cs.m, lambda k: _inv(k + cs.b, "w", k) * _p0(Fraction(k)) * _p0(k + cs.b)
    ),
    _rhs_psi0_psi0kb_over_kb,
)


# -- identities with the reversed index a + 1 - k ------------------------------

def _rhs_psi0_ak_over_k(cs):
    a, m = cs.a, cs.m
    am, a1, m1, one = a - m, a + 1, Fraction(m + 1), Fraction(1)
    return (
        -_sum_poly(m, lambda k: Fraction(1, k) * _p0(k + am))
        + Fraction(1, 2) * (
            -2 * _p0(a1) * (_p0(am) - _p0(m1) + _p0(one))
            + (_p0(am) + 2 * _p0(m1) - 2 * _p0(one)) * _p0(am)
            - _p1(am) + _p0(a1) ** 2 + _p1(a1)
        )
    )


_register(
    "psi0_ak_over_k", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k) * _p0(cs.a + 1 - k)),
    _rhs_psi0_ak_over_k,
)


def _rhs_psi0_over_ak(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        -_sum_poly(m, lambda k: Fraction(1, k) * _p0(k + am))
        + Fraction(1, 2) * (
            (_p0(a1) - _p0(am)) ** 2
            + 2 * _p0(m1) * (-_p0(am1) + _p0(am) + _p0(a1))
            - 2 * _p0(one) * _p0(am)
            - _p1(am) + _p1(a1)
        )
    )


_register(
    "psi0_over_ak", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(cs.a + 1 - k, "w", k) * _p0(Fraction(k))),
    _rhs_psi0_over_ak,
)


def _rhs_psi0_over_ak2(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        _sum_poly(m, lambda k: Fraction(1, k) * _p1(k + am))
        + _inv(am * am, "1/(a-m)^2") * (-_p0(am1) + _p0(a1) - _p0(m1) + _p0(one))
        - _p1(a1) * _p0(m1)
        + _p0(a1) * (_p1(am1) - _p1(a1))
        + _inv(am, "1/(a-m)") * (_p1(am1) - _p1(a1))
        + _p0(am1) * (_p1(a1) - _p1(am1))
        + _p0(one) * _p1(am1)
        + Fraction(1, 2) * _p2(am1) - Fraction(1, 2) * _p2(a1)
    )


_register(
    "psi0_over_ak2", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(cs.a + 1 - k, "w", k) ** 2 * _p0(Fraction(k))),
    _rhs_psi0_over_ak2,
)


def _rhs_psi0sq_over_ak(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        _sum_poly(
            m,
            lambda k: Fraction(1, k) * _p0(k + am) ** 2
            + _inv(k + am, "w", k) * _p0(Fraction(k)) ** 2
            + _inv(k + am, "w", k) * _p1(k + am),
        )
        + (2 * _inv(am, "1/(a-m)") * ConstPoly.const(1) - 2 * _p0(a1))
        * _sum_poly(m, lambda k: Fraction(1, k) * _p0(k + am))
        + _inv(am * am, "1/(a-m)^2") * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one))
        + _inv(am, "1/(a-m)") * (
            2 * _p0(a1) * (-_p0(am1) - _p0(m1) + _p0(one))
            + _p0(am1) ** 2 + _p0(a1) ** 2
        )
        + Fraction(1, 6) * (
            -6 * _p0(a1) ** 2 * (_p0(am1) - _p0(m1))
            - 6 * _p0(a1) * (-_p0(am1) ** 2 + 2 * _p0(one) * _p0(am1) + _p1(am1))
            - 2 * _p0(am1) ** 3
            + 6 * _p0(one) * _p0(am1) ** 2
            - 6 * _p0(one) * _p1(am1)
            + 6 * _p0(am1) * _p1(am1)
            + _p2(am1)
            + 2 * _p0(a1) ** 3
            + 6 * _p0(one) * _p1(a1)
            - _p2(a1)
        )
    )


_register(
    "psi0sq_over_ak", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(cs.a + 1 - k, "w", k) * _p0(Fraction(k)) ** 2),
    _rhs_psi0sq_over_ak,
)


def _rhs_psi1_ak_over_k(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        -_sum_poly(m, lambda k: Fraction(1, k) * _p1(k + am))
        + _inv(am * am, "1/(a-m)^2") * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one))
        + _p1(a1) * (-_p0(am1) + _p0(a1) + _p0(m1) - _p0(one))
        + _inv(am, "1/(a-m)") * (_p1(a1) - _p1(am1))
        + Fraction(1, 2) * (
            2 * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one)) * _p1(am1)
            - _p2(am1) + _p2(a1)
        )
    )


_register(
    "psi1_ak_over_k", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k) * _p1(cs.a + 1 - k)),
    _rhs_psi1_ak_over_k,
)


def _rhs_psi1_over_ak(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        _sum_poly(
            m,
            lambda k: -Fraction(1, k) * _p1(k + am)
            + _inv(k + am, "w", k) * _p1(Fraction(k))
            - _inv(k + am, "w", k) * _p1(k + am),
        )
        - _p1(m1) * _p0(am1)
        + _inv(am * am, "1/(a-m)^2") * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one))
        + _inv(am, "1/(a-m)") * (_p1(a1) - _p1(am1))
        + Fraction(1, 2) * (
            -2 * _p1(a1) * (_p0(am1) - _p0(m1) + _p0(one))
            + 2 * _p1(m1) * _p0(am1)
            - _p2(am1) + _p2(a1)
        )
        + _p0(a1) * (_p1(a1) - _p1(one))
        + _p1(one) * _p0(a1)
    )


_register(
    "psi1_over_ak", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: _inv(cs.a + 1 - k, "w", k) * _p1(Fraction(k))),
    _rhs_psi1_over_ak,
)


def _rhs_psi0_ak_over_k2(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        _sum_poly(
            m,
            lambda k: Fraction(1, k) * _p1(k + am)
            - _inv(k + am, "w", k) * _p1(Fraction(k))
            + _inv(k + am, "w", k) * _p1(k + am),
        )
        + _inv(am * am, "1/(a-m)^2") * (-_p0(am1) + _p0(a1) - _p0(m1) + _p0(one))
        + _inv(am, "1/(a-m)") * (_p1(am1) - _p1(a1))
        + Fraction(1, 2) * (
            2 * _p1(a1) * (_p0(am1) - _p0(m1) + _p0(one))
            - 2 * _p1(m1) * _p0(am1)
            + _p2(am1) - _p2(a1)
        )
        + _p0(a1) * (_p1(one) - _p1(a1))
    )


_register(
    "psi0_ak_over_k2", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(cs.m, lambda k: Fraction(1, k * k) * _p0(cs.a + 1 - k)),
    _rhs_psi0_ak_over_k2,
)


def _rhs_psi0_psi0ak_over_ak(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        Fraction(1, 2) * _sum_poly(
            m,
            lambda k: Fraction(1, k) * (_p0(a + 1 - k) ** 2 - _p1(k + am)),
        )
        + Fraction(1, 2) * _inv(am * am, "w") * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one))
        + Fraction(1, 2) * _inv(am, "w") * (_p1(a1) - _p1(am1))
        + Fraction(1, 4) * (
            2 * _p0(m1) * (_p1(a1) - _p0(am1) ** 2)
            + 2 * (_p0(a1) - _p0(am1)) * (_p1(a1) - _p1(am1))
            - 2 * _p0(one) * _p1(am1)
            - _p2(am1)
            + 2 * _p0(one) * _p0(a1) ** 2
            + _p2(a1)
        )
    )


_register(
    "psi0_psi0ak_over_ak", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(
        cs.m, lambda k: _inv(cs.a + 1 - k, "w", k) * _p0(Fraction(k)) * _p0(cs.a + 1 - k)
    ),
    _rhs_psi0_psi0ak_over_ak,
)


def _rhs_psi0_psi0ak_over_k(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        Fraction(1, 2) * _sum_poly(
            m,
            lambda k: Fraction(1, k) * _p0(k + am) ** 2
            + _inv(k + am, "w", k) * _p0(Fraction(k)) ** 2
            - Fraction(1, k) * _p1(k + am)
            + _inv(k + am, "w", k) * _p1(Fraction(k)),
        )
        + (_inv(am, "w") * ConstPoly.const(1) - _p0(a1))
        * _sum_poly(m, lambda k: Fraction(1, k) * _p0(k + am))
        + _inv(am * am, "w") * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one))
        - Fraction(1, 2) * _inv(am, "w") * (
            2 * _p0(a1) * (_p0(am1) + _p0(m1) - _p0(one))
            - _p0(am1) ** 2 + _p1(am1) - _p0(a1) ** 2 - _p1(a1)
        )
        + Fraction(1, 6) * (
            3 * _p0(a1) ** 2 * (_p0(m1) - _p0(am1))
            - 3 * _p0(a1) * (
                2 * _p0(one) * _p0(am1) - _p0(am1) ** 2 + _p1(am1) - _p1(a1)
                + _p0(one) ** 2 + _p1(one)
            )
            - _p0(am1) ** 3
            + 3 * _p0(one) * _p0(am1) ** 2
            + 3 * _p1(a1) * _p0(m1)
            - 3 * _p0(one) * _p1(am1)
            + 3 * _p0(am1) * (_p1(am1) - _p1(a1) + _p0(m1) ** 2 + _p1(m1))
            - _p2(am1)
            + _p0(a1) ** 3
            + _p2(a1)
        )
    )


_register(
    "psi0_psi0ak_over_k", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(
        cs.m, lambda k: Fraction(1, k) * _p0(Fraction(k)) * _p0(cs.a + 1 - k)
    ),
    _rhs_psi0_psi0ak_over_k,
)


def _rhs_psi0_psi0ak_over_mk(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        Fraction(1, 2) * _sum_poly(
            m,
            lambda k: Fraction(1, k) * _p0(a + 1 - k) ** 2
            - _inv(k + am, "w", k) * _p0(Fraction(k)) ** 2
            + Fraction(1, k) * _p1(k + am)
            - _inv(k + am, "w", k) * _p1(Fraction(k)),
        )
        - (_inv(am, "w") * ConstPoly.const(1) - _p0(a1))
        * _sum_poly(m, lambda k: Fraction(1, k) * _p0(k + am))
        + Fraction(1, 2) * _inv(am * am, "w")
        * (3 * (_p0(a1) - _p0(am1) - _p0(m1) + _p0(one)))
        - Fraction(1, 2) * _inv(am, "w") * (
            _p0(a1) ** 2
            + 2 * (_p0(one) - 2 * _p0(m1)) * _p0(a1)
            - _p0(am1) ** 2
            + 2 * _p0(one) * _p0(am1)
            + 2 * (_p0(m1) - _p0(one)) * _p0(m1)
            + 2 * _p1(m1) - 2 * _p1(one)
        )
        + Fraction(1, 12) * (
            6 * _p0(am1) * (
                (-_p0(a1) + _p0(m1) - 2 * _p0(one)) * (_p0(m1) - _p0(a1))
                + _p1(m1) - 2 * _p1(one)
            )
            - 4 * _p0(a1) ** 3
            + 6 * _p0(one) * _p0(a1) ** 2
            + 6 * _p0(m1) ** 2 * _p0(a1)
            + 6 * _p1(am1) * _p0(a1)
            - 6 * _p0(m1) * (_p0(a1) ** 2 + _p1(am1))
            + 6 * _p1(m1) * _p0(a1)
            - 6 * _p0(a1) * _p1(a1)
            - _p2(a1)
            - 2 * _p0(am1) ** 3
            + 6 * _p0(one) * _p1(am1)
            + _p2(am1)
        )
    )


_register(
    "psi0_psi0ak_over_mk", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(
        cs.m,
        lambda k: Fraction(1, cs.m + 1 - k) * _p0(Fraction(k)) * _p0(cs.a + 1 - k),
    ),
    _rhs_psi0_psi0ak_over_mk,
)


def _rhs_psi0_psi0shift_over_mk(cs):
    a, m = cs.a, cs.m
    am, am1, a1, m1, one = a - m, a - m + 1, a + 1, Fraction(m + 1), Fraction(1)
    return (
        Fraction(1, 2) * _sum_poly(
            m,
            lambda k: Fraction(1, k) * _p0(a + 1 - k) ** 2
            + Fraction(1, k) * _p0(k + am) ** 2
            + _inv(k + am, "w", k) * _p0(Fraction(k)) ** 2
            + _inv(k + am, "w", k) * _p1(Fraction(k)),
        )
        + _inv(am, "w") * _sum_poly(m, lambda k: Fraction(1, k) * _p0(k + am))
        + Fraction(1, 2) * _inv(am * am, "w") * (_p0(am1) - _p0(a1) + _p0(m1) - _p0(one))
        + Fraction(1, 2) * _inv(am, "w") * (_p0(am1) ** 2 - _p0(a1) ** 2)
        + Fraction(1, 12) * (
            6 * _p0(a1) ** 2 * (_p0(am1) + _p0(one))
            + 6 * _p0(a1) * (
                -2 * _p0(m1) * (_p0(am1) + _p0(one))
                + _p1(am1) - _p1(a1) + _p0(m1) ** 2 + _p1(m1) - 2 * _p1(one)
            )
            - 2 * _p0(am1) ** 3
            + 6 * _p0(one) * _p0(am1) ** 2
            + 6 * _p0(m1) * (_p1(a1) - _p1(am1))
            + 6 * (_p0(m1) ** 2 + _p1(m1)) * _p0(am1)
            + _p2(am1)
            - 4 * _p0(a1) ** 3
            - _p2(a1)
        )
    )


_register(
    "psi0_psi0shift_over_mk", ("m", "a"), _check_a_gt_m,
    lambda cs: _sum_poly(
        cs.m,
        lambda k: Fraction(1, cs.m + 1 - k) * _p0(Fraction(k)) * _p0(k + cs.a - cs.m),
    ),
    _rhs_psi0_psi0shift_over_mk,
)


# -- three-term cyclic relation ------------------------------------------------

def _lhs_three_term(cs):
    a, b, c, m = cs.a, cs.b, cs.c, cs.m
    return _sum_poly(
        m,
        lambda k: _inv(k + a, "w", k) * _p0(k + b) * _p0(k + c)
        + _inv(k + b, "w", k) * _p0(k + a) * _p0(k + c)
        + _inv(k + c, "w", k) * _p0(k + a) * _p0(k + b),
    )


def _rhs_three_term(cs):
    a, b, c, m = cs.a, cs.b, cs.c, cs.m

    def s(num, den):
        return _sum_poly(m, lambda k: _inv(k + den, "w", k) * _p0(k + num))

    iv = lambda x: _inv(x, "three_term")
    return (
        (iv(b - a) * ConstPoly.const(1) + _p0(a)) * s(c, b)
        + (iv(c - a) * ConstPoly.const(1) + _p0(a)) * s(b, c)
        + (iv(a - b) * ConstPoly.const(1) + _p0(b)) * s(c, a)
        + (iv(c - b) * ConstPoly.const(1) + _p0(b)) * s(a, c)
        + (iv(a - c) * ConstPoly.const(1) + _p0(c + m)) * s(b, a)
        + (iv(b - c) * ConstPoly.const(1) + _p0(c + m)) * s(a, b)
        + (iv(c - b) - iv(c + m)) * _p0(a) * _p0(b + m)
        + (iv(c - a) - iv(c + m)) * _p0(a + m) * _p0(b)
        + _p0(a) * _p0(b) * _p0(c + m)
        - _p0(a) * _p0(b + m) * _p0(c + m)
        + _p0(a) * _p0(b) * _p0(c)
        - _p0(b) * _p0(a + m) * _p0(c + m)
        + Fraction((a + m) * (a - b - c - m), (a - b) * (a - c) * (b + m) * (c + m)) * _p0(a + m)
        + iv(b - a) * _p0(a + m) * _p0(c + m)
        + Fraction((b + m) * (a - b + c + m), (a - b) * (a + m) * (b - c) * (c + m)) * _p0(b + m)
        + iv(a - b) * _p0(b + m) * _p0(c + m)
        + Fraction((c + m) * (a + b - c + m), (a - c) * (a + m) * (c - b) * (b + m)) * _p0(c + m)
        + iv(c + m) * _p0(a + m) * _p0(b + m)
        + (iv(a - c) + iv(b - c) + iv(c)) * _p0(a) * _p0(b)
        + (iv(b - a) + iv(a - c) - iv(a + m) + iv(a)) * _p0(b) * _p0(c + m)
        + iv(c - b) * _p0(a) * _p0(c)
        + (iv(a - b) + iv(b - c) - iv(b + m) + iv(b)) * _p0(a) * _p0(c + m)
        + iv(c - a) * _p0(b) * _p0(c)
        + Fraction(a * (-a + b + c), b * c * (a - b) * (a - c)) * _p0(a)
        - Fraction(b * (a - b + c), a * c * (a - b) * (b - c)) * _p0(b)
        + Fraction(c * (a + b - c), a * b * (a - c) * (b - c)) * _p0(c)
    )


_register(
    "three_term_cycle", ("m", "a", "b", "c"), _check_abc_distinct_pos_int,
    _lhs_three_term, _rhs_three_term,
)


# -- closed-form block-difference and trigamma identities ----------------------

def _lhs_block_diff(cs):
    a, b, m = cs.a, cs.b, cs.m
    return _sum_poly(
        m,
        lambda k: (_inv(k + a, "w", k) + _inv(k + b, "w", k))
        * (_p0(k + a + b + m) - _p0(k + a + b)),
    )


def _rhs_block_diff(cs):
    a, b, m = cs.a, cs.b, cs.m
    iv = lambda x: _inv(x, "block_diff")
    return (
        Fraction(m, 1) * iv(a * (a + m)) * (_p0(b + m + 1) - _p0(b + 1))
        + Fraction(m, 1) * iv(b * (b + m)) * (_p0(a + m + 1) - _p0(a + 1))
        - _p0(b + 1) * _p0(a + m + 1)
        - _p0(a + 1) * _p0(b + m + 1)
        + _p0(a + m + 1) * _p0(b + m + 1)
        - (iv(a + m) + iv(a) + iv(b + m) + iv(b)) * _p0(a + b + m + 1)
        + (a + b + 2 * m) * iv((a + m) * (b + m)) * _p0(a + b + 2 * m + 1)
        + _p0(a + 1) * _p0(b + 1)
        + (iv(a) + iv(b)) * _p0(a + b + 1)
    )


_register("psi0_block_difference_pair", ("m", "a", "b"), _check_ab_pos,
          _lhs_block_diff, _rhs_block_diff)


def _lhs_trigamma_closed_1(cs):
    t, m = 2 * cs.alpha, cs.m
    return _sum_poly(
        m,
        lambda k: Fraction(1, k) * (_p1(k + t + m) - _p1(k + t))
        - _inv(k + t + m, "w", k) * _p1(k + t)
        + _inv(k + t, "w", k) * _p1(k + t + m),
    )


def _rhs_trigamma_closed_1(cs):
    t, mf = 2 * cs.alpha, Fraction(cs.m)
    iv = lambda x: _inv(x, "trigamma_closed_1")
    t1, tm1, t2m1 = t + 1, t + mf + 1, t + 2 * mf + 1
    m1, one = mf + 1, Fraction(1)
    return (
        _p0(one) * _p1(t1)
        + iv(t) * _p1(t1)
        - _p0(t1) * _p1(t1)
        + Fraction(1, 2) * _p2(t1)
        - (t * t + mf * mf + 3 * t * mf) * iv(t * mf * (t + mf)) * _p1(tm1)
        - (iv(mf * mf) + iv((t + mf) ** 2)) * _p0(t2m1)
        + iv(t * t * mf * mf * (t + mf) ** 2) * (
            t * t * mf * (t * t + 2 * mf * mf + 3 * t * mf) * _p1(t2m1)
            - (t * t + mf * mf) * (t + mf) ** 2 * _p0(t1)
            + (2 * t ** 4 + mf ** 4 + 2 * t * mf ** 3 + 4 * t * t * mf * mf + 4 * t ** 3 * mf)
            * _p0(tm1)
        )
        + (iv(t * t) - iv((t + mf) ** 2)) * (_p0(one) - _p0(m1))
        - _p0(one) * _p1(tm1)
        - _p1(t1) * _p0(m1)
        - Fraction(1, 2) * _p2(tm1)
        + _p0(m1) * _p1(tm1)
        + _p0(tm1) * _p1(tm1)
        - _p0(t2m1) * _p1(tm1)
        + _p1(t1) * _p0(tm1)
    )


_register("trigamma_alpha_closed_1", ("m", "alpha"), _check_alpha,
          _lhs_trigamma_closed_1, _rhs_trigamma_closed_1)


def _lhs_trigamma_closed_2(cs):
    t, m = 2 * cs.alpha, cs.m
    return _sum_poly(
        m,
        lambda k: _inv(t + k, "w", k) * (_p1(Fraction(k)) - _p1(t + k))
        - _inv(t + k + m, "w", k) * (_p1(Fraction(k)) - _p1(t + k)),
    )


def _rhs_trigamma_closed_2(cs):
    t, mf = 2 * cs.alpha, Fraction(cs.m)
    t1, tm1, t2m1 = t + 1, t + mf + 1, t + 2 * mf + 1
    m1, one = mf + 1, Fraction(1)
    return (
        -_p0(one) * _p1(t1)
        - _p1(m1) * (_p0(t1) - 2 * _p0(tm1))
        - _p1(m1) * _p0(t2m1)
        + _p0(one) * _p1(tm1)
        - _p0(m1) * _p1(tm1)
        - _p0(tm1) * _p1(tm1)
        + _p0(t2m1) * _p1(tm1)
        + _p1(t1) * _p0(m1)
        + _p1(t1) * (_p0(t1) - _p0(tm1))
    )


_register("trigamma_alpha_closed_2", ("m", "alpha"), _check_alpha,
          _lhs_trigamma_closed_2, _rhs_trigamma_closed_2)


# ---------------------------------------------------------------------------
# residual evaluation and grid enumeration
# ---------------------------------------------------------------------------

def identity_catalog() -> dict[str, IdentityDef]:
    return dict(_IDENTITIES)


def identity_residual(cs: IdentityCase) -> ConstPoly:
    """LHS - RHS as an exact polynomial; zero iff the identity holds."""
    spec = _IDENTITIES.get(cs.identity_id)
    if spec is None:
        raise KeyError(f"unknown identity {cs.identity_id!r}")
    spec.check(cs)
    return spec.lhs(cs) - spec.rhs(cs)


def default_grid(max_m: int = 8):
    """Admissible parameter grid used by the verification suite.

    Integer spans: a in (m, m+6], b, c in [0, 6] subject to each identity's
    constraints; half-integer a and b values exercise the ln2 sector; alpha
    runs over the positive half-odd values up to 7/2.
    """
    halves = [Fraction(1, 2), Fraction(3, 2)]
    cases: list[IdentityCase] = []
    for m in range(1, max_m + 1):
        a_vals = [Fraction(a) for a in range(m + 1, m + 7)]
        a_vals += [m + h for h in halves]
        b_pos = [Fraction(b) for b in range(1, 7)] + halves
        b_nonneg = [Fraction(b) for b in range(0, 7)]
        for ident in _IDENTITIES.values():
            p = set(ident.params)
            if p == {"m"}:
                cases.append(case(ident.identity_id, m))
            elif p == {"m", "a"}:
                cases += [case(ident.identity_id, m, a=a) for a in a_vals]
            elif p == {"m", "b"}:
                vals = b_pos if ident.check is _check_b_pos else b_nonneg + halves
                cases += [case(ident.identity_id, m, b=b) for b in vals]
            elif p == {"m", "b", "c"}:
                for b in range(0, 7):
                    for c in range(0, 7):
                        if b != c:
                            cases.append(case(ident.identity_id, m, b=b, c=c))
            elif p == {"m", "a", "b"}:
                for a in range(1, 5):
                    for b in range(1, 5):
                        cases.append(case(ident.identity_id, m, a=a, b=b))
            elif p == {"m", "a", "b", "c"}:
                from itertools import permutations
                for trip in permutations(range(1, 5), 3):
                    cases.append(case(ident.identity_id, m, a=trip[0], b=trip[1], c=trip[2]))
            elif p == {"m", "alpha"}:
                for twice in (1, 3, 5, 7):
                    cases.append(case(ident.identity_id, m, alpha=Fraction(twice, 2)))
            else:  # pragma: no cover
                raise AssertionError(ident.identity_id)
    return cases


# ---------------------------------------------------------------------------
# telescoping re-summation fixtures
# ---------------------------------------------------------------------------

def _tele_requires_b(m: int, b) -> Fraction:
    b = _frac(b)
    if m < 1:
        raise IdentityDomainError("m must be a positive integer")
    if b <= 0:
        raise IdentityDomainError(f"telescope fixtures need b > 0, got b={b}")
    return b


# Each fixture: (G(j, b), delta(i, b)) with delta the step G(i) - G(i-1)
# rewritten through the one-step shift recurrence.  The check below verifies
# sum_{i=1..m} delta(i) == G(m) exactly.

def _g_psi0_ak_over_k(j, b):
    return _sum_poly(j, lambda k: Fraction(1, k) * _p0(b + j + 1 - k))


def _d_psi0_ak_over_k(i, b):
    acc = Fraction(1, i) * _p0(b + 1)
    rat = sum((Fraction(1, k) * _inv(b + i - k, "tele") for k in range(1, i)), Fraction(0))
    return acc + ConstPoly.const(rat)


def _g_psi0_over_ak(j, b):
    return _sum_poly(j, lambda k: _inv(k + b, "tele", k) * _p0(Fraction(j + 1 - k)))


def _d_psi0_over_ak(i, b):
    acc = _inv(i + b, "tele") * _p0(Fraction(1))
    rat = sum((_inv(k + b, "tele") * Fraction(1, i - k) for k in range(1, i)), Fraction(0))
    return acc + ConstPoly.const(rat)


def _g_psi0_over_ak2(j, b):
    return _sum_poly(j, lambda k: _inv(k + b, "tele", k) ** 2 * _p0(Fraction(j + 1 - k)))


def _d_psi0_over_ak2(i, b):
    acc = _inv(i + b, "tele") ** 2 * _p0(Fraction(1))
    rat = sum((_inv(k + b, "tele") ** 2 * Fraction(1, i - k) for k in range(1, i)), Fraction(0))
    return acc + ConstPoly.const(rat)


def _g_psi0sq_over_ak(j, b):
    return _sum_poly(j, lambda k: _inv(k + b, "tele", k) * _p0(Fraction(j + 1 - k)) ** 2)


def _d_psi0sq_over_ak(i, b):
    # psi0^2(x+1) - psi0^2(x) = 2 psi0(x)/x + 1/x^2 with x = i - k
    acc = _inv(i + b, "tele") * _p0(Fraction(1)) ** 2
    total = acc
    for k in range(1, i):
        x = Fraction(i - k)
        total = total + _inv(k + b, "tele") * (
            2 * Fraction(1, x) * _p0(x) + ConstPoly.const(Fraction(1, x * x))
        )
    return total


def _g_psi1_ak_over_k(j, b):
    return _sum_poly(j, lambda k: Fraction(1, k) * _p1(b + j + 1 - k))


def _d_psi1_ak_over_k(i, b):
    acc = Fraction(1, i) * _p1(b + 1)
    rat = sum((-Fraction(1, k) * _inv((b + i - k) ** 2, "tele") for k in range(1, i)), Fraction(0))
    return acc + ConstPoly.const(rat)


def _g_psi1_over_ak(j, b):
    return _sum_poly(j, lambda k: _inv(k + b, "tele", k) * _p1(Fraction(j + 1 - k)))


def _d_psi1_over_ak(i, b):
    acc = _inv(i + b, "tele") * _p1(Fraction(1))
    rat = sum((-_inv(k + b, "tele") * Fraction(1, (i - k) ** 2) for k in range(1, i)), Fraction(0))
    return acc + ConstPoly.const(rat)


def _g_psi0_ak_over_k2(j, b):
    return _sum_poly(j, lambda k: Fraction(1, k * k) * _p0(b + j + 1 - k))


def _d_psi0_ak_over_k2(i, b):
    acc = Fraction(1, i * i) * _p0(b + 1)
    rat = sum((Fraction(1, k * k) * _inv(b + i - k, "tele") for k in range(1, i)), Fraction(0))
    return acc + ConstPoly.const(rat)


def _g_psi0_psi0ak_over_ak(j, b):
    return _sum_poly(
        j, lambda k: _inv(k + b, "tele", k) * _p0(Fraction(j + 1 - k)) * _p0(k + b)
    )


def _d_psi0_psi0ak_over_ak(i, b):
    total = _inv(i + b, "tele") * _p0(Fraction(1)) * _p0(i + b)
    for k in range(1, i):
        total = total + _inv(k + b, "tele") * Fraction(1, i - k) * _p0(k + b)
    return total


def _g_psi0_psi0ak_over_k(j, b):
    return _sum_poly(j, lambda k: Fraction(1, k) * _p0(Fraction(k)) * _p0(b + j + 1 - k))


def _d_psi0_psi0ak_over_k(i, b):
    total = Fraction(1, i) * _p0(Fraction(i)) * _p0(b + 1)
    for k in range(1, i):
        total = total + Fraction(1, k) * _inv(b + i - k, "tele") * _p0(Fraction(k))
    return total


def _g_psi0_psi0ak_over_mk(j, b):
    return _sum_poly(j, lambda k: Fraction(1, k) * _p0(Fraction(j + 1 - k)) * _p0(k + b))


def _d_psi0_psi0ak_over_mk(i, b):
    total = Fraction(1, i) * _p0(Fraction(1)) * _p0(i + b)
    for k in range(1, i):
        total = total + Fraction(1, k) * Fraction(1, i - k) * _p0(k + b)
    return total


def _g_psi0_psi0shift_over_mk(j, b):
    return _sum_poly(
        j, lambda k: Fraction(1, j + 1 - k) * _p0(Fraction(k)) * _p0(k + b)
    )


def _d_psi0_psi0shift_over_mk(i, b):
    # psi0(k+1) psi0(k+b+1) - psi0(k) psi0(k+b) = psi0(k+b+1)/k + psi0(k)/(k+b)
    total = Fraction(1, i) * _p0(Fraction(1)) * _p0(b + 1)
    for k in range(1, i):
        total = total + Fraction(1, i - k) * (
            Fraction(1, k) * _p0(k + b + 1) + _inv(k + b, "tele") * _p0(Fraction(k))
        )
    return total


_FIXTURES = {
    "tele_psi0_ak_over_k": (_g_psi0_ak_over_k, _d_psi0_ak_over_k),
    "tele_psi0_over_ak": (_g_psi0_over_ak, _d_psi0_over_ak),
    "tele_psi0_over_ak2": (_g_psi0_over_ak2, _d_psi0_over_ak2),
    "tele_psi0sq_over_ak": (_g_psi0sq_over_ak, _d_psi0sq_over_ak),
    "tele_psi1_ak_over_k": (_g_psi1_ak_over_k, _d_psi1_ak_over_k),
    "tele_psi1_over_ak": (_g_psi1_over_ak, _d_psi1_over_ak),
    "tele_psi0_ak_over_k2": (_g_psi0_ak_over_k2, _d_psi0_ak_over_k2),
    "tele_psi0_psi0ak_over_ak": (_g_psi0_psi0ak_over_ak, _d_psi0_psi0ak_over_ak),
    "tele_psi0_psi0ak_over_k": (_g_psi0_psi0ak_over_k, _d_psi0_psi0ak_over_k),
    "tele_psi0_psi0ak_over_mk": (_g_psi0_psi0ak_over_mk, _d_psi0_psi0ak_over_mk),
    "tele_psi0_psi0shift_over_mk": (_g_psi0_psi0shift_over_mk, _d_psi0_psi0shift_over_mk),
}


def telescope_fixture_ids() -> tuple[str, ...]:
    return tuple(_FIXTURES)


def resummation_telescope_check(fixture_id: str, m: int, b) -> ConstPoly:
    """Residual G(m) - sum_{i=1..m} (G(i) - G(i-1)); must be zero."""
    if fixture_id not in _FIXTURES:
        raise KeyError(f"unknown telescope fixture {fixture_id!r}")
    b = _tele_requires_b(m, b)
    g, delta = _FIXTURES[fixture_id]
    total = ZERO
    for i in range(1, m + 1):
        total = total + delta(i, b)
    return g(m, b) - total
