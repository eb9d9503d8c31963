import math
from fractions import Fraction

import pytest

from rootwave.arith import factor
from rootwave.constants import (
    SIX_OVER_PI2,
    HypothesisError,
    c1,
    c_f1_quadratic,
    c_general,
    delta_root_series,
    euler_factor_identity,
    lambda_h,
    theorem2_constant,
    theorem3_constant,
    theorem3_constant_alt,
)
from rootwave.roots import FactoredPoly


def test_quadratic_constant_reference_values():
    # f = n(n+1): (1 + 1) * 6/pi^2 / (1 - 1/4)^... -> 12/pi^2
    assert abs(c_f1_quadratic(1, 1) - 12 / math.pi**2) < 1e-12
    # f = (2n+1)(3n+1): (-1/2 - 1/3) / ((1-1/4)(1-1/9)) * 6/pi^2 = -7.5/pi^2
    want = float(Fraction(-5, 6) / Fraction(2, 3)) * SIX_OVER_PI2
    assert abs(c_f1_quadratic(2, 3) - want) < 1e-12


def test_lambda_h_sum_matches_closed_form():
    # sum over k coprime to M of lambda_h(k), direct to K, vs the product
    # form folded into c1; the direct tail is O(h/K)
    for h, m_excl in [(1, 1), (2, 1), (6, 5), (4, 3), (12, 1)]:
        big_k = 20000
        direct = Fraction(0)
        for k in range(1, big_k + 1):
            if math.gcd(k, m_excl) == 1:
                direct += lambda_h(factor(k), h)
        closed = Fraction(1)
        for p in set(factor(m_excl).primes):
            closed /= 1 - Fraction(1, p * p)
        for p, v in factor(h).factors:
            if m_excl % p == 0:
                continue
            local = Fraction(1)
            for e in range(1, v + 1):
                local += Fraction((p - 1) * p ** (e - 1), p ** (2 * e))
            local -= Fraction(1, p ** (v + 2))
            closed *= local / (1 - Fraction(1, p * p))
        assert abs(float(direct) - float(closed) * 6 / math.pi**2) < 5e-4, (h, m_excl)


def test_c1_symmetric_sum_equals_quadratic_at_h1():
    # h = 1, unit resultant: c1 halves add up to the quadratic constant
    for a, c in [(1, 2), (2, 3), (4, 9), (3, 5)]:
        f = FactoredPoly(((a, 1), (c, 1)))
        (a1, b1), (c1v, d1) = f.linear
        delta = a1 * d1 - b1 * c1v
        if delta == 0:
            continue
        total = c1(1, a, c, delta).value + c1(1, c, a, delta).value
        ep = c_general(f, 1)
        assert abs(total - ep.value) < 1e-12


def test_c_general_h1_reduces_to_quadratic_for_unit_resultant():
    f = FactoredPoly(((1, 0), (1, 1)))
    assert abs(c_general(f, 1).value - c_f1_quadratic(1, 1)) < 1e-12


def test_c_general_rejects_shared_h():
    f = FactoredPoly(((2, 1), (1, 1)))
    with pytest.raises(HypothesisError):
        c_general(f, 2)
    with pytest.raises(HypothesisError):
        c1(2, 2, 1, 1, 100)


def test_delta_root_series_h1_trivial():
    f = FactoredPoly(((1, 0), (1, 1)))
    value, tail = delta_root_series(f, 1)
    assert value == 1.0 and tail == 0.0


def test_euler_factor_identity_primes():
    for p in (2, 3, 5, 7, 97, 9973):
        assert euler_factor_identity(p)


def test_theorem_constants_and_two_routes():
    t2 = theorem2_constant(10**5)
    assert 0.6 < t2.value < 0.7
    t3 = theorem3_constant(10**5)
    t3b = theorem3_constant_alt(10**5)
    assert abs(t3.value - t3b.value) <= t3.tail_bound + t3b.tail_bound
    # tails shrink with pmax
    assert theorem3_constant(10**6).tail_bound < t3.tail_bound


def test_constant_monotone_in_pmax():
    a = theorem2_constant(10**4).value
    b = theorem2_constant(10**6).value
    assert abs(a - b) < 3e-4
