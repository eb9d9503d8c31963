"""Main-term constants for the root-equidistribution sums, evaluated as
exact rationals times 6/pi^2 where a closed form exists, and as truncated
Euler products / finite delta-sums with certified tails otherwise.

pi^2 always comes from math.pi; none of these routines sums a zeta series.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import Factorization, euler_phi, factor, mobius
from .charsums import ramanujan
from .roots import FactoredPoly, roots_mod_n

SIX_OVER_PI2 = 6.0 / (math.pi * math.pi)


class HypothesisError(ValueError):
    """A coprimality hypothesis required by a closed form does not hold."""


@dataclass(frozen=True)
class EulerProduct:
    """A truncated product/sum value with its truncation point and a bound
    on the change from extending the truncation to infinity."""

    value: float
    pmax: int
    tail_bound: float


def _primes_of(n: int) -> tuple[int, ...]:
    return factor(abs(n)).primes if n not in (0, 1, -1) else ()


def c_f1_quadratic(a: int, c: int) -> float:
    """(mu(a)/a + mu(c)/c) * (6/pi^2) * prod_{p | ac} (1 - 1/p^2)^(-1),
    the h = 1 constant for f = (a n + b)(c n + d)."""
    if a == 0 or c == 0:
        raise ValueError("need a, c nonzero")
    rational = Fraction(mobius(factor(abs(a))), a) + Fraction(mobius(factor(abs(c))), c)
    for p in _primes_of(a * c):
        rational /= 1 - Fraction(1, p * p)
    return float(rational) * SIX_OVER_PI2


def _lambda_local_sum(p: int, v: int) -> Fraction:
    """sum over e >= 0 of lambda_h(p^e) for p not dividing the excluded
    modulus, where v = v_p(h):

        lambda_h(p^e) = phi(p^e)/p^(2e)   for e <= v,
                      = -1/p^(e+1)        for e = v + 1,
                      = 0                 for e > v + 1.
    """
    s = Fraction(1)
    for e in range(1, v + 1):
        s += Fraction((p - 1) * p ** (e - 1), p ** (2 * e))
    s -= Fraction(1, p ** (v + 2))
    return s


def lambda_h(k: Factorization, h: int) -> Fraction:
    """The multiplicative coefficient lambda_h(k) of the k-expansion behind
    c1(); satisfies |lambda_h(k)| <= h/k^2.  Exposed for direct-summation
    cross-checks of the closed-form k-sum."""
    out = Fraction(1)
    habs = abs(h)
    for p, e in k.factors:
        v = 0
        m = habs
        while m % p == 0:
            m //= p
            v += 1
        if e <= v:
            out *= Fraction((p - 1) * p ** (e - 1), p ** (2 * e))
        elif e == v + 1:
            out *= Fraction(-1, p ** (e + 1))
        else:
            return Fraction(0)
    return out


def c1(h: int, a: int, c: int, delta: int, pmax: int = 1000) -> EulerProduct:
    """One of the two symmetric halves of C(f, h) in the coprime case
    (h, a*c*delta) = 1:

        mu(c/(c,h)) phi(c*|delta|) / (c*|delta| * phi(c/(c,h)))
        * prod_{p | delta, p coprime to ac} (1 + 1/p)
        * sum_{(k, ac*delta) = 1} lambda_h(k).

    The k-sum has the exact value (6/pi^2) * prod_{p | ac*delta}
    (1 - 1/p^2)^(-1) * prod_{p | h} (1 + 1/p)(1 - 1/p^(v_p(h)+1))
    (1 - 1/p^2)^(-1), so the only floating-point ingredient is pi^2 and the
    tail bound is zero; pmax is recorded for interface uniformity.
    """
    if h == 0 or a == 0 or c == 0 or delta == 0:
        raise ValueError("h, a, c, delta must be nonzero")
    if math.gcd(abs(h), abs(a * c * delta)) != 1:
        raise HypothesisError(f"need (h, a*c*delta) = 1, got h={h}, acD={a*c*delta}")
    d = abs(delta)
    cq = abs(c) // math.gcd(abs(c), abs(h))
    pre = Fraction(
        mobius(factor(cq)) * euler_phi(factor(abs(c) * d)),
        abs(c) * d * euler_phi(factor(cq)),
    )
    if c < 0:
        pre = -pre
    gsum = Fraction(1)
    for p in _primes_of(delta):
        if (a * c) % p != 0:
            gsum *= 1 + Fraction(1, p)
    lam = Fraction(1)
    for p in _primes_of(a * c * delta):
        lam /= 1 - Fraction(1, p * p)
    hf = factor(abs(h))
    for p, v in hf.factors:
        # replace the generic local factor (1 - 1/p^2) folded into 6/pi^2
        # by the true local sum at a prime dividing h
        lam *= _lambda_local_sum(p, v)
        lam /= 1 - Fraction(1, p * p)
    value = float(pre * gsum * lam) * SIX_OVER_PI2
    return EulerProduct(value=value, pmax=pmax, tail_bound=0.0)


def _semigroup_upto(primes: tuple[int, ...], limit: int) -> list[int]:
    """All products of the given primes (with repetition) up to limit,
    ascending, including 1."""
    if not primes:
        return [1]
    out = []
    seen = {1}
    heap = [1]
    while heap:
        n = heapq.heappop(heap)
        out.append(n)
        for p in primes:
            m = n * p
            if m <= limit and m not in seen:
                seen.add(m)
                heapq.heappush(heap, m)
    return out


def c_general(
    f: FactoredPoly, h: int, delta_max: int = 10**4, pmax: int = 1000
) -> EulerProduct:
    """C(f, h) for f = (a n + b)(c n + d) and any nonzero h coprime to ac:

        C1(h, a, c, D1) + C1(h, c, a, D1),

    where D1 is the part of |a d - b c| coprime to h.  The second term is
    the image of the first under swapping the two linear factors, exactly as
    in the h = 1 decomposition; the primes shared by h and the resultant
    enter only through the lambda_h local factors inside c1 (they are
    coprime to a*c*D1 by construction).

    This closed form matches sieve measurements of S(f, x, h)/x at x = 10^6
    to a few parts in 10^4 across resultants with mixed shared/unshared
    prime structure; composing it with the delta-semigroup Ramanujan series
    (delta_root_series) instead overshoots, so that series is exposed only
    as a diagnostic.  delta_max is accepted for interface stability and
    passed to nothing; the closed form has no truncation, so the tail bound
    is zero.
    """
    if len(f.linear) != 2 or f.has_x2p1:
        raise ValueError("c_general needs exactly two linear factors")
    if h == 0:
        raise ValueError("h must be nonzero")
    (a, b), (c, d) = f.linear
    if math.gcd(abs(h), abs(a * c)) != 1:
        raise HypothesisError("c_general needs gcd(h, ac) = 1")
    delta = a * d - b * c
    d1 = abs(delta)
    g = math.gcd(abs(h), d1)
    while g > 1:
        d1 //= g
        g = math.gcd(abs(h), d1)
    base = c1(h, a, c, d1, pmax).value + c1(h, c, a, d1, pmax).value
    return EulerProduct(value=base, pmax=pmax, tail_bound=0.0)


def delta_root_series(f: FactoredPoly, h: int, delta_max: int = 10**4) -> tuple[float, float]:
    """The Ramanujan-weighted root series over the semigroup of primes
    shared by h and a*c*(ad - bc):

        sum_{delta | g^inf, delta <= delta_max} (1/delta^2)
            sum_{f(r0) = 0 mod delta} c_delta(h * r0).

    Returned as (value, tail_bound) with the tail estimated from the
    per-term bound #roots(delta)/delta^2.  Diagnostic companion to
    c_general; not part of its value.
    """
    if len(f.linear) != 2 or f.has_x2p1:
        raise ValueError("needs exactly two linear factors")
    (a, b), (c, d) = f.linear
    sg_primes = _primes_of(math.gcd(abs(h), abs(a * c * (a * d - b * c))))
    dsum = 0.0
    max_roots = 1
    for dl in _semigroup_upto(sg_primes, delta_max):
        if dl == 1:
            dsum += 1.0
            continue
        fac = factor(dl)
        rs = roots_mod_n(f, fac)
        max_roots = max(max_roots, len(rs))
        term = sum(ramanujan(fac, h * r0) for r0 in rs.residues)
        dsum += term / (dl * dl)
    tail = (max_roots * (len(sg_primes) + 2)) / delta_max if sg_primes else 0.0
    return dsum, tail


def _product_over_primes(pmax: int, include, log_factor) -> float:
    """exp(sum of log_factor(p)) over primes p <= pmax with include(p)."""
    from .arith import primes_up_to

    acc = 0.0
    comp = 0.0
    for p in primes_up_to(pmax):
        p = int(p)
        if not include(p):
            continue
        y = log_factor(p) - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return math.exp(acc)


def theorem2_constant(pmax: int = 10**6) -> EulerProduct:
    """(3/4) * prod over primes p = 1 (mod 4), p <= pmax, of (1 - 2/p^2)."""
    v = 0.75 * _product_over_primes(
        pmax, lambda p: p % 4 == 1, lambda p: math.log1p(-2.0 / (p * p))
    )
    return EulerProduct(value=v, pmax=pmax, tail_bound=v * 2.0 / max(pmax - 1, 1))


def theorem3_constant(pmax: int = 10**6) -> EulerProduct:
    """prod over odd primes p <= pmax of (1 - 2/p^2)."""
    v = _product_over_primes(
        pmax, lambda p: p >= 3, lambda p: math.log1p(-2.0 / (p * p))
    )
    return EulerProduct(value=v, pmax=pmax, tail_bound=v * 2.0 / max(pmax - 1, 1))


def theorem3_constant_alt(pmax: int = 10**6) -> EulerProduct:
    """Second route to the same limit: (8/pi^2) * prod over odd primes of
    (1 - 1/(p^2 - 1)), using the factor identity
    (1 - 2/p^2) = (1 - 1/p^2)(1 - 1/(p^2 - 1))."""
    v = (8.0 / (math.pi * math.pi)) * _product_over_primes(
        pmax, lambda p: p >= 3, lambda p: math.log1p(-1.0 / (p * p - 1))
    )
    return EulerProduct(value=v, pmax=pmax, tail_bound=v * 2.0 / max(pmax - 1, 1))


def euler_factor_identity(p: int) -> bool:
    """Exact rational check of (1 - 2/p^2) = (1 - 1/p^2)(1 - 1/(p^2-1))."""
    p2 = Fraction(p * p)
    return 1 - 2 / p2 == (1 - 1 / p2) * (1 - 1 / (p2 - 1))
