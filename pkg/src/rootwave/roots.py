"""Factored polynomials and their roots modulo prime powers, moduli n, and
all n <= x.

A polynomial is a product of linear factors (a*X + b) with gcd(a, b) = 1,
optionally times X^2 + 1.  Roots modulo a prime power are found either by a
one-residue-per-factor construction (when the prime divides none of the
pairwise resultants or leading coefficients) or by singular level-by-level
Hensel lifting at the finitely many exceptional primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from . import arith
from .arith import Factorization, factor

MAX_MODULUS = 1 << 48
BRUTE_LIMIT = 10**6


class ScaleError(ValueError):
    """Input exceeds the configured oracle/overflow guard."""


@dataclass(frozen=True)
class FactoredPoly:
    """A polynomial given as linear factors (a, b) plus an optional X^2+1."""

    linear: tuple[tuple[int, int], ...]
    has_x2p1: bool = False
    h_default: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "linear", tuple(tuple(f) for f in self.linear))
        for a, b in self.linear:
            if a == 0:
                raise ValueError("linear factor needs a != 0")
            if math.gcd(a, b) != 1:
                raise ValueError(f"factor ({a},{b}) must have gcd(a,b)=1")
        for i, (a1, b1) in enumerate(self.linear):
            for a2, b2 in self.linear[i + 1 :]:
                if a1 * b2 == a2 * b1:
                    raise ValueError("proportional linear factors are not allowed")

    @property
    def degree(self) -> int:
        return len(self.linear) + (2 if self.has_x2p1 else 0)

    def eval(self, r: int) -> int:
        v = 1
        for a, b in self.linear:
            v *= a * r + b
        if self.has_x2p1:
            v *= r * r + 1
        return v

    def resultant_data(self) -> "ResultantData":
        """Pairwise-resultant products: Delta (two-factor case) and A."""
        delta = 0
        if len(self.linear) == 2 and not self.has_x2p1:
            (a, b), (c, d) = self.linear
            delta = a * d - b * c
        big_a = 1
        for i, (a1, b1) in enumerate(self.linear):
            big_a *= a1
            for a2, b2 in self.linear[i + 1 :]:
                big_a *= a1 * b2 - a2 * b1
        if self.has_x2p1:
            # res(aX+b, X^2+1) = a^2 + b^2; X^2+1 itself ramifies only at 2
            for a, b in self.linear:
                big_a *= a * a + b * b
            big_a *= 2
        return ResultantData(delta=delta, a_product=big_a)

    def singular_primes(self) -> tuple[int, ...]:
        """Primes where factor roots may collide or fail to be unique."""
        return _singular_primes(self)

    def describe(self) -> str:
        parts = [f"({a},{b})" for a, b in self.linear]
        return "".join(parts) + ("*q" if self.has_x2p1 else "")


@dataclass(frozen=True)
class RootSet:
    """Modulus n with the sorted residues r in [0, n) where f(r) = 0 mod n."""

    n: int
    residues: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "residues", tuple(sorted(self.residues)))
        if any(not 0 <= r < self.n for r in self.residues):
            raise ValueError("residues out of range")
        if len(set(self.residues)) != len(self.residues):
            raise ValueError("duplicate residues")

    def __len__(self) -> int:
        return len(self.residues)


@dataclass(frozen=True)
class ResultantData:
    delta: int
    a_product: int


@lru_cache(maxsize=None)
def _singular_primes(f: "FactoredPoly") -> tuple[int, ...]:
    return tuple(p for p, _ in factor(abs(f.resultant_data().a_product)).factors)


def _sqrt_minus_one(p: int) -> int:
    """Smallest square root of -1 modulo a prime p = 1 (mod 4).

    Tonelli-Shanks specialized to -1: raise a quadratic non-residue (found by
    ascending trial, for reproducibility) to the power (p-1)/4.
    """
    n = 2
    while pow(n, (p - 1) // 2, p) != p - 1:
        n += 1
    v = pow(n, (p - 1) // 4, p)
    return min(v, p - v)


def roots_mod_prime_power(f: FactoredPoly, p: int, e: int) -> list[int]:
    """All r in [0, p^e) with f(r) = 0 (mod p^e), sorted."""
    q = p**e
    if q > MAX_MODULUS:
        raise ScaleError(f"prime power {p}^{e} exceeds {MAX_MODULUS}")
    if p in f.singular_primes():
        return _roots_singular(f, p, e)
    out: list[int] = []
    for a, b in f.linear:
        # p does not divide a, so the factor has the unique root -b/a
        r = (-b * pow(a, -1, q)) % q
        out.append(r)
    if f.has_x2p1:
        if p % 4 == 1:
            v = _sqrt_minus_one(p)
            # simple roots of X^2+1: lift with derivative 2v invertible
            vq = v
            m = p
            while m < q:
                fr = (vq * vq + 1) % (m * p)
                t = (-(fr // m)) * pow(2 * vq % p, -1, p) % p
                vq = vq + m * t
                m *= p
            out.extend([vq % q, (q - vq) % q])
        # p = 3 (mod 4): no roots
    return sorted(out)


def _roots_singular(f: FactoredPoly, p: int, e: int) -> list[int]:
    """Level-by-level lifting, testing all p candidates at each level."""
    level = [r for r in range(p) if f.eval(r) % p == 0]
    q = p
    for _ in range(e - 1):
        nxt = []
        for r in level:
            for t in range(p):
                cand = r + q * t
                if f.eval(cand) % (q * p) == 0:
                    nxt.append(cand)
        level = nxt
        q *= p
    return sorted(set(level))


def roots_mod_n(f: FactoredPoly, n: Factorization) -> RootSet:
    """CRT combination of prime-power roots; |result| is multiplicative."""
    if n.value > MAX_MODULUS:
        raise ScaleError(f"modulus {n.value} exceeds {MAX_MODULUS}")
    residues = [0]
    modulus = 1
    for p, e in n.factors:
        q = p**e
        rs = roots_mod_prime_power(f, p, e)
        if not rs:
            return RootSet(n.value, ())
        inv = pow(modulus, -1, q)
        new = []
        for r0 in residues:
            for t in rs:
                new.append(r0 + modulus * ((t - r0) * inv % q))
        residues = new
        modulus *= q
    return RootSet(n.value, tuple(r % n.value for r in residues))


def roots_brute(f: FactoredPoly, n: int) -> RootSet:
    """Oracle: scan all residues.  Only for n <= BRUTE_LIMIT."""
    if n > BRUTE_LIMIT:
        raise ScaleError(f"brute-force root scan capped at {BRUTE_LIMIT}")
    return RootSet(n, tuple(r for r in range(n) if f.eval(r) % n == 0))


def rho(m: Factorization) -> int:
    """Number of roots of X^2 + 1 modulo m (multiplicative)."""
    count = 1
    for p, e in m.factors:
        if p == 2:
            count *= 1 if e == 1 else 0
        elif p % 4 == 1:
            count *= 2
        else:
            count *= 0
    return count


def enumerate_roots_up_to(
    f: FactoredPoly,
    x: int,
    visitor: Callable[[int, RootSet], None],
    segment_size: int = 1 << 18,
) -> None:
    """Invoke visitor(n, RootSet) for every n = 1..x in ascending order.

    Segmented: each segment is factored through one spf table, and
    prime-power root lists are cached across the run.  This is the reference
    (pure Python) driver; the high-volume path used by s_sieve lives in
    _kernels.
    """
    if x > MAX_MODULUS:
        raise ScaleError(f"x={x} exceeds {MAX_MODULUS}")
    cache: dict[tuple[int, int], list[int]] = {}
    for lo in range(1, x + 1, segment_size):
        hi = min(lo + segment_size, x + 1)
        table = arith.spf_table(lo, hi)
        for n in range(lo, hi):
            if n == 1:
                visitor(1, RootSet(1, (0,)))
                continue
            fac = arith.factor_with_spf(n, table, lo)
            residues = [0]
            modulus = 1
            dead = False
            for p, e in fac.factors:
                q = p**e
                key = (p, e)
                rs = cache.get(key)
                if rs is None:
                    rs = roots_mod_prime_power(f, p, e)
                    cache[key] = rs
                if not rs:
                    dead = True
                    break
                inv = pow(modulus % q, -1, q)
                residues = [
                    r0 + modulus * ((t - r0) * inv % q) for r0 in residues for t in rs
                ]
                modulus *= q
            if dead:
                visitor(n, RootSet(n, ()))
            else:
                visitor(n, RootSet(n, tuple(r % n for r in residues)))
