"""Complete character and exponential sums over residues: Ramanujan sums,
Kloosterman sums, and sums of rational functions over F_p with certification
against the Weil/Deligne bound.

The convention throughout: a term e(t) whose argument contains an inverse
that does not exist contributes 0 to the sum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .arith import Factorization, euler_phi, factor, inv_mod, mobius, mult_functions

TWO_PI = 2.0 * math.pi

DIRECT_SUM_LIMIT = 10**7
RAMANUJAN_DIRECT_LIMIT = 10**5

INFINITY_POINT = -1  # marker for the point at infinity on P^1


class ScaleError(ValueError):
    pass


class ConstantFunctionError(ValueError):
    pass


def _e(num: int, den: int) -> complex:
    """e(num/den) with the numerator reduced modulo the denominator first."""
    return cmath.exp(2j * math.pi * ((num % den) / den))


def ramanujan(q: Factorization, t: int) -> int:
    """Ramanujan sum c_q(t) by the classical closed form
    mu(q/(q,t)) * phi(q) / phi(q/(q,t)); always an exact integer.
    """
    g = math.gcd(t, q.value)
    m = factor(q.value // g)
    mu = mobius(m)
    if mu == 0:
        return 0
    return mu * euler_phi(q) // euler_phi(m)


def ramanujan_direct(q: int, t: int) -> complex:
    """Oracle for ramanujan(): direct summation over residues coprime to q."""
    if q > RAMANUJAN_DIRECT_LIMIT:
        raise ScaleError(f"direct Ramanujan sum capped at {RAMANUJAN_DIRECT_LIMIT}")
    total = 0.0 + 0.0j
    for a in range(q):
        if math.gcd(a, q) == 1:
            total += _e(t * a, q)
    if q == 1:
        total = 1.0 + 0.0j
    return total


def kloosterman(a: int, b: int, q: int) -> complex:
    """K(a, b; q) = sum over invertible x mod q of e((a*xbar + b*x)/q)."""
    if q > DIRECT_SUM_LIMIT:
        raise ScaleError(f"direct Kloosterman sum capped at {DIRECT_SUM_LIMIT}")
    if q == 1:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    c = 0.0 + 0.0j  # Kahan compensation
    for x in range(1, q):
        xb = inv_mod(x, q)
        if xb is None:
            continue
        term = _e(a * xb + b * x, q)
        y = term - c
        t = total + y
        c = (t - total) - y
        total = t
    return total


def kloosterman_bound(a: int, b: int, q: Factorization) -> float:
    """Hooley's Weil-based bound shape sqrt(q * (a, q)) * tau(q)."""
    tau = mult_functions(q)[2]
    return math.sqrt(q.value * math.gcd(a, q.value)) * tau


@dataclass(frozen=True)
class RationalFunctionModP:
    """num/den with coefficient lists over F_p, low degree first, reduced."""

    p: int
    num: tuple[int, ...]
    den: tuple[int, ...]

    def __post_init__(self) -> None:
        num = _trim([c % self.p for c in self.num], self.p)
        den = _trim([c % self.p for c in self.den], self.p)
        if not den:
            raise ValueError("denominator is identically zero")
        g = _poly_gcd(num, den, self.p)
        if len(g) > 1:
            num = _poly_div(num, g, self.p)[0]
            den = _poly_div(den, g, self.p)[0]
        # normalize the denominator to be monic
        lead_inv = pow(den[-1], -1, self.p)
        den = tuple(c * lead_inv % self.p for c in den)
        num = tuple(c * lead_inv % self.p for c in num)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", tuple(den))

    @property
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def eval(self, u: int) -> int | None:
        """Value at u in F_p, or None when u is a pole."""
        dv = _poly_eval(self.den, u, self.p)
        if dv == 0:
            return None
        nv = _poly_eval(self.num, u, self.p)
        return nv * pow(dv, -1, self.p) % self.p

    def value_at_infinity(self) -> int | None:
        """f(inf) in F_p, or None when infinity is a pole."""
        dn, dd = len(self.num) - 1, len(self.den) - 1
        if dn > dd:
            return None
        if dn < dd:
            return 0
        return self.num[-1] * pow(self.den[-1], -1, self.p) % self.p


@dataclass(frozen=True)
class PoleDivisor:
    """Poles of a rational function on P^1(F_p) with their orders."""

    poles: tuple[tuple[int, int], ...]  # (point, order); INFINITY_POINT = inf

    def total_weight(self) -> int:
        return sum(1 + order for _, order in self.poles)


def _trim(coeffs, p) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] % p == 0:
        c.pop()
    return tuple(x % p for x in c)


def _poly_eval(coeffs, u, p) -> int:
    v = 0
    for c in reversed(coeffs):
        v = (v * u + c) % p
    return v


def _poly_div(a, b, p):
    """(quotient, remainder) of polynomial division over F_p."""
    a = list(a)
    b = list(b)
    if not b:
        raise ZeroDivisionError
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        if a[-1] % p == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        while a and a[-1] % p == 0:
            a.pop()
    return _trim(q, p), _trim(a, p)


def _poly_gcd(a, b, p):
    a, b = _trim(a, p), _trim(b, p)
    while b:
        _, r = _poly_div(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def pole_divisor(f: RationalFunctionModP) -> PoleDivisor:
    """Poles of f with multiplicity: roots of the denominator, plus the pole
    at infinity of order deg(num) - deg(den) when that is positive.
    """
    if f.is_constant:
        raise ConstantFunctionError("constant function has no pole divisor here")
    p = f.p
    poles: list[tuple[int, int]] = []
    den = f.den
    for u in range(p):
        if _poly_eval(den, u, p) == 0:
            order = 0
            rem = list(den)
            while True:
                quo, r = _poly_div(rem, (-u % p, 1), p)
                if r:
                    break
                order += 1
                rem = list(quo)
            poles.append((u, order))
    excess = (len(f.num) - 1) - (len(f.den) - 1)
    if excess > 0:
        poles.append((INFINITY_POINT, excess))
    return PoleDivisor(tuple(poles))


def _radical_degree(coeffs, p) -> int:
    """Degree of the product of the distinct irreducible factors of a
    polynomial over F_p, i.e. the number of its distinct roots in the
    algebraic closure."""
    c = _trim(coeffs, p)
    if len(c) <= 1:
        return 0
    deriv = _trim([i * c[i] % p for i in range(1, len(c))], p)
    if not deriv:
        # c(x) = h(x^p) = (h-with-same-coefficients)(x)^p over F_p
        return _radical_degree(tuple(c[i] for i in range(0, len(c), p)), p)
    g = _poly_gcd(c, deriv, p)
    w, _ = _poly_div(c, g, p)
    # w carries each factor whose multiplicity is not divisible by p, once;
    # factors with p | multiplicity survive in r as a p-th power
    r = g
    while True:
        common = _poly_gcd(r, w, p)
        if len(common) <= 1:
            break
        r, _ = _poly_div(r, common, p)
    return (len(w) - 1) + _radical_degree(r, p)


def weil_check(f: RationalFunctionModP) -> tuple[complex, float, bool]:
    """Sum e(f(u)/p) over non-pole points of P^1(F_p), the Weil/Deligne
    bound shape sum (1 + v_u(f)) * sqrt(p) over the poles u counted in the
    algebraic closure, and whether |sum| <= bound.

    The finite poles contribute deg(radical(den)) + deg(den) to the weight
    (one for each distinct closure pole plus its order); infinity adds
    1 + (deg num - deg den) when that difference is positive.
    """
    if f.is_constant:
        raise ConstantFunctionError("weil_check requires a nonconstant function")
    p = f.p
    total = 0.0 + 0.0j
    for u in range(p):
        v = f.eval(u)
        if v is not None:
            total += _e(v, p)
    v_inf = f.value_at_infinity()
    if v_inf is not None:
        total += _e(v_inf, p)
    weight = _radical_degree(f.den, p) + (len(f.den) - 1)
    excess = (len(f.num) - 1) - (len(f.den) - 1)
    if excess > 0:
        weight += 1 + excess
    bound = weight * math.sqrt(p)
    return total, bound, abs(total) <= bound + 1e-6


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _trim(out, p)


def kp_factor_sum(k2: int, k1: int, s: int, p: int, h: int) -> complex:
    """The local factor at p of the completed sum from the Gauss-route
    decomposition: sum over a mod p of K_p(a) e(ha/p), where

        K_p(a) = e(-a q(k2) * inv(k2 (a^2 q(k2)^2 k2^2 (k1 s / p)^2 + s^2)) / p)

    evaluated via the rational-function machinery; |result| <= 6 sqrt(p).
    """
    k1s = k1 * s
    flat = 1
    for q, e in factor(k1s).factors:
        if e == 1:
            flat *= q
    if flat % p != 0:
        raise ValueError(f"p={p} must divide the squarefree part of k1*s")
    if (2 * s) % p == 0:
        raise ValueError("p must not divide 2s")
    qk2 = 1
    if k2 > 1:
        for q, _ in factor(k2).factors:
            qk2 *= q
    c = k1s // p
    # argument of the summand as one rational function of a:
    #   -a*qk2 / (k2 * (A2 a^2 + s^2)) + h*a,  A2 = qk2^2 k2^2 c^2
    a2 = qk2 * qk2 * k2 * k2 * c * c % p
    den = (s * s % p * k2 % p, 0, a2 * k2 % p)
    num = _poly_add(
        (0, (-qk2) % p),
        _poly_mul((0, h % p), den, p),
        p,
    )
    f = RationalFunctionModP(p, num, den)
    total, _, ok = weil_check(f)
    # weil_check also counts u = infinity when it is not a pole; the complete
    # sum here runs over a mod p only, so remove that term if present
    v_inf = f.value_at_infinity()
    if v_inf is not None:
        total -= _e(v_inf, p)
    if not ok or abs(total) > 6.0 * math.sqrt(p) + 1e-6:
        raise AssertionError("bound |sum| <= 6 sqrt(p) violated in kp_factor_sum")
    return total


def _poly_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        if i < len(a):
            out[i] += a[i]
        if i < len(b):
            out[i] += b[i]
        out[i] %= p
    return _trim(out, p)


def kp_factor_sum_direct(k2: int, k1: int, s: int, p: int, h: int) -> complex:
    """Direct two-path oracle for kp_factor_sum (term-by-term, e(t)=0 rule)."""
    qk2 = 1
    if k2 > 1:
        for q, _ in factor(k2).factors:
            qk2 *= q
    c = (k1 * s) // p
    total = 0.0 + 0.0j
    for a in range(p):
        denom = (k2 * (a * a * qk2 * qk2 * k2 * k2 * c * c + s * s)) % p
        inv = inv_mod(denom, p) if denom else None
        if inv is None:
            continue
        total += _e(-a * qk2 * inv + h * a, p)
    return total
