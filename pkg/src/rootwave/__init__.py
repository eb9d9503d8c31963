"""Exponential sums over normalized roots of factored polynomials:

    S(f, x, h) = sum_{n <= x} sum_{f(r) = 0 mod n} e(h r / n),

with exact arithmetic backends, a segmented parallel sieve, main-term
constants, equidistribution diagnostics, and a CLI (`rootwave`).
"""

from .arith import Factorization, crt, factor, inv_mod, mult_functions
from .charsums import (
    RationalFunctionModP,
    kloosterman,
    kloosterman_bound,
    ramanujan,
    weil_check,
)
from .constants import (
    EulerProduct,
    HypothesisError,
    c_f1_quadratic,
    c_general,
    theorem2_constant,
    theorem3_constant,
)
from .expsums import SumSeries, incomplete_inverse_sum, s_naive, s_sieve, s_sieve_multi
from .gauss import PrimitiveRep, check_gauss_bijection, primitive_reps, verify_k1k2
from .roots import FactoredPoly, RootSet, roots_brute, roots_mod_n
from .analysis import collect_fractions, star_discrepancy, weyl_profile

__all__ = [
    "Factorization",
    "crt",
    "factor",
    "inv_mod",
    "mult_functions",
    "RationalFunctionModP",
    "kloosterman",
    "kloosterman_bound",
    "ramanujan",
    "weil_check",
    "EulerProduct",
    "HypothesisError",
    "c_f1_quadratic",
    "c_general",
    "theorem2_constant",
    "theorem3_constant",
    "SumSeries",
    "incomplete_inverse_sum",
    "s_naive",
    "s_sieve",
    "s_sieve_multi",
    "PrimitiveRep",
    "check_gauss_bijection",
    "primitive_reps",
    "verify_k1k2",
    "FactoredPoly",
    "RootSet",
    "roots_brute",
    "roots_mod_n",
    "collect_fractions",
    "star_discrepancy",
    "weyl_profile",
]

__version__ = "0.1.0"
