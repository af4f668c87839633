"""Exact cumulants and skewness of von Neumann entropy over the Bures-Hall
ensemble of random bipartite quantum states, together with independent
numerical oracles (quadrature, Monte Carlo) and an exact verifier for the
summation-identity apparatus behind the closed forms."""

from .ring import ConstPoly, GAMMA, LN2, ZETA2, ZETA3, poly_combine, poly_eval, poly_is_zero
from .polygamma import HalfInteger, psi_exact, psi_float
from .cumulants import (
    CumulantSet,
    EnsembleDims,
    cumulant_set,
    kappa1,
    kappa2,
    kappa3,
    kappa3_unconstrained,
    moments_cumulants_convert,
    skewness,
    third_moment_conversion,
)

__all__ = [
    "ConstPoly",
    "GAMMA",
    "LN2",
    "ZETA2",
    "ZETA3",
    "poly_combine",
    "poly_eval",
    "poly_is_zero",
    "HalfInteger",
    "psi_exact",
    "psi_float",
    "EnsembleDims",
    "CumulantSet",
    "cumulant_set",
    "kappa1",
    "kappa2",
    "kappa3",
    "kappa3_unconstrained",
    "skewness",
    "moments_cumulants_convert",
    "third_moment_conversion",
]

__version__ = "0.1.0"
