"""Exact integer number-theory primitives shared by every other module.

Everything here works on plain Python ints (inputs are capped at 63 bits by
the factoring routines) and is pure: tables are immutable after construction
and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_FACTOR_INPUT = 2**63 - 1

# Trial division uses this many sieved primes; larger inputs fall back to
# Miller-Rabin + Pollard rho.
_TRIAL_LIMIT = 10**6


class NonCoprimeModuliError(ValueError):
    """Raised by crt() when the moduli are not pairwise coprime."""


class SegmentSizeError(ValueError):
    """Raised by spf_table() when the requested segment is too large."""


MAX_SEGMENT = 1 << 24


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (simple Eratosthenes sieve)."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].astype(np.int64)


@lru_cache(maxsize=1)
def _trial_primes() -> np.ndarray:
    return primes_up_to(_TRIAL_LIMIT)


@dataclass(frozen=True)
class Factorization:
    """A positive integer together with its prime factorization.

    factors is a tuple of (prime, exponent) pairs, strictly increasing by
    prime; the product of p**e reconstructs value.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list for {self.value}")
            last = p
            prod *= p**e
        if prod != self.value or self.value < 1:
            raise ValueError(f"factor list does not reconstruct {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's variant)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        seed += 1
        x = y = seed
        c = seed + 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factor(n: int) -> Factorization:
    """Factor 1 <= n < 2**63 into primes; deterministic."""
    if n < 1 or n > MAX_FACTOR_INPUT:
        raise ValueError(f"factor() requires 1 <= n <= 2**63-1, got {n}")
    value = n
    fac: dict[int, int] = {}
    for p in _trial_primes():
        p = int(p)
        if p * p > n:
            break
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    # n is now 1, prime, or has no prime factor below the trial limit.
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(value, tuple(sorted(fac.items())))


def spf_table(lo: int, hi: int) -> np.ndarray:
    """Smallest-prime-factor table for the interval [lo, hi).

    table[i] is the smallest prime factor of lo + i; entries for 0 and 1
    are 0.  Segment length is capped at MAX_SEGMENT.
    """
    if not 0 <= lo < hi:
        raise ValueError(f"need 0 <= lo < hi, got [{lo}, {hi})")
    if hi - lo > MAX_SEGMENT:
        raise SegmentSizeError(f"segment length {hi - lo} exceeds {MAX_SEGMENT}")
    n = hi - lo
    table = np.zeros(n, dtype=np.int64)
    for p in primes_up_to(math.isqrt(hi - 1)):
        p = int(p)
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start >= hi:
            continue
        sl = table[start - lo :: p]
        np.place(sl, sl == 0, p)
    # remaining zeros are 0, 1, or primes
    idx = np.nonzero(table == 0)[0]
    table[idx] = idx + lo
    if lo == 0:
        table[0] = 0
    if lo <= 1 < hi:
        table[1 - lo] = 0
    return table


def factor_with_spf(n: int, table: np.ndarray, lo: int) -> Factorization:
    """Factor n in [lo, lo+len(table)) by chained division through spf tables.

    Only the leading (smallest) factor is read from the table; cofactors are
    finished by trial division, so a single segment table suffices.
    """
    value = n
    fac: list[tuple[int, int]] = []
    p = int(table[n - lo])
    if p:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        fac.append((p, e))
    if n > 1:
        rest = factor(n)
        fac.extend(rest.factors)
        fac.sort()
    return Factorization(value, tuple(fac))


def mult_functions(n: Factorization) -> tuple[int, int, int, int]:
    """(mu(n), phi(n), tau(n), omega(n)) as exact integers."""
    mu, phi, tau = 1, 1, 1
    for p, e in n.factors:
        mu = 0 if e > 1 else -mu
        phi *= (p - 1) * p ** (e - 1)
        tau *= e + 1
    return mu, phi, tau, len(n.factors)


def mobius(n: Factorization) -> int:
    return mult_functions(n)[0]


def euler_phi(n: Factorization) -> int:
    return mult_functions(n)[1]


def crt(residues: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine congruences x = r (mod m) with pairwise coprime moduli.

    Returns (R, M) with 0 <= R < M = prod(m).
    """
    big_r, big_m = 0, 1
    for r, m in residues:
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        g = math.gcd(big_m, m)
        if g != 1:
            raise NonCoprimeModuliError(f"moduli share the factor gcd={g}")
        # x = big_r (mod big_m), x = r (mod m)
        t = (r - big_r) * pow(big_m, -1, m) % m if m > 1 else 0
        big_r += big_m * t
        big_m *= m
    return big_r % big_m, big_m


def inv_mod(a: int, m: int) -> int | None:
    """Multiplicative inverse of a modulo m, or None when gcd(a, m) > 1.

    Absence is a value, not an error: downstream exponential evaluations map
    it to the complex value 0.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    a %= m
    if math.gcd(a, m) != 1:
        return None
    return pow(a, -1, m)


def flat_sharp_split(n: Factorization) -> tuple[int, int]:
    """(squarefree part, squarefull part): n_flat * n_sharp = n, coprime."""
    flat = 1
    for p, e in n.factors:
        if e == 1:
            flat *= p
    return flat, n.value // flat


def coprime_part_split(k: int, r: int) -> tuple[int, int, int]:
    """Split k = k1 * k2 with k2 = (k, r^inf): every prime of k2 divides r,
    (k1, r) = 1.  Also returns the squarefree kernel q(k2).
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be positive")
    rest = k
    g = math.gcd(rest, r)
    while g > 1:
        rest //= g
        g = math.gcd(rest, r)
    k2 = k // rest
    kernel = 1
    if k2 > 1:
        for p, _ in factor(k2).factors:
            kernel *= p
    return rest, k2, kernel


def smooth_rough_split(n: int, z: int) -> tuple[int, int]:
    """n = c * d where every prime of c is <= z and every prime of d is > z."""
    if n < 1 or z < 2:
        raise ValueError("need n >= 1 and z >= 2")
    c = 1
    d = n
    for p, e in factor(n).factors:
        if p <= z:
            c *= p**e
            d //= p**e
    return c, d


def radical(n: Factorization) -> int:
    r = 1
    for p, _ in n.factors:
        r *= p
    return r
