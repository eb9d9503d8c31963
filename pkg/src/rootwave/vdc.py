"""Empirical verification of the q-analog van der Corput machinery: short
inverse sums twisted by a rational weight, the two bound formulas they are
measured against, the A-process (differencing) inequality, and the
subset-parity lemma that feeds the pole-counting arguments.

All "bounds" here have their implied constants set to 1; the test suite
records empirical maxima of |sum| / bound as calibration constants.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .arith import factor, inv_mod, mult_functions

SHORT_SUM_LIMIT = 10**7
PARITY_K_LIMIT = 20

TWO_PI = 2.0 * math.pi


class ScaleError(ValueError):
    pass


def _poly_eval_int(coeffs: tuple[int, ...], n: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * n + c
    return v


@dataclass(frozen=True)
class ShortSumSpec:
    """Parameters of the short sum
    sum_{A < n <= A+N, (n,q)=1} e(alpha * nbar_q / q + R(n)/delta),
    with R = num/den a rational function with integer coefficients
    (low-degree-first tuples; R = 0 is num=(), den=(1,))."""

    A: int
    N: int
    alpha: int
    q: int
    delta: int = 1
    num: tuple[int, ...] = ()
    den: tuple[int, ...] = (1,)

    def __post_init__(self) -> None:
        if self.N < 0 or self.q < 1 or self.delta < 1:
            raise ValueError("need N >= 0, q >= 1, delta >= 1")
        if math.gcd(self.alpha * self.delta, self.q) != 1:
            raise ValueError("need (alpha * delta, q) = 1")
        if not self.den or all(c == 0 for c in self.den):
            raise ValueError("denominator must be nonzero")

    def weight_arg(self, n: int) -> int | None:
        """R(n) reduced modulo delta, or None when the term vanishes (the
        denominator is not invertible mod delta)."""
        if self.delta == 1:
            return 0
        dv = _poly_eval_int(self.den, n) % self.delta
        inv = inv_mod(dv, self.delta) if dv else None
        if inv is None:
            return None
        return _poly_eval_int(self.num, n) * inv % self.delta


def short_sum_exact(spec: ShortSumSpec) -> complex:
    """Direct evaluation of the short sum; terms whose rational weight is
    undefined mod delta contribute 0 (the e(t) = 0 convention)."""
    if spec.N > SHORT_SUM_LIMIT:
        raise ScaleError(f"short sum length capped at {SHORT_SUM_LIMIT}")
    q, delta = spec.q, spec.delta
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for n in range(spec.A + 1, spec.A + spec.N + 1):
        nbar = inv_mod(n % q, q) if q > 1 else 0
        if nbar is None:
            continue
        w = spec.weight_arg(n)
        if w is None:
            continue
        ang = TWO_PI * ((spec.alpha * nbar % q) / q + w / delta)
        term = complex(math.cos(ang), math.sin(ang))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def _zpoly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def _zpoly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return tuple(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def differenced_inverse_function(
    shift2: int, shift3: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The second difference of 1/n used by the double A-process,

        1/n - 1/(n + shift3) - 1/(n + shift2) + 1/(n + shift2 + shift3),

    as one rational function (num, den) with integer coefficients over the
    common denominator n(n+shift2)(n+shift3)(n+shift2+shift3).  Callers
    scale the numerator by the outer alpha * inverse-cofactor when reducing
    modulo the working prime.
    """
    shifts = (0, shift3, shift2, shift2 + shift3)
    signs = (1, -1, -1, 1)
    den: tuple[int, ...] = (1,)
    for s in shifts:
        den = _zpoly_mul(den, (s, 1))
    num: tuple[int, ...] = ()
    for i, sgn in enumerate(signs):
        part: tuple[int, ...] = (sgn,)
        for j, s2 in enumerate(shifts):
            if j != i:
                part = _zpoly_mul(part, (s2, 1))
        num = _zpoly_add(num, part)
    while num and num[-1] == 0:
        num = num[:-1]
    return num, den


def lemma_exp_bound(
    n_len: float, q1: float, q2: float, q3: float, delta: float, omega_q1: int
) -> float:
    """N^(1/2) q3^(1/2) + N^(3/4) q2^(1/4)
    + N^(3/4) q1^(1/8) delta^(1/4) 3^omega(q1) (N/q1 + log(q1 delta))^(1/4),
    with the implied constant set to 1."""
    if min(n_len, q1, q2, q3, delta) <= 0:
        raise ValueError("all parameters must be positive")
    return (
        n_len**0.5 * q3**0.5
        + n_len**0.75 * q2**0.25
        + n_len**0.75
        * q1**0.125
        * delta**0.25
        * 3.0**omega_q1
        * (n_len / q1 + math.log(q1 * delta)) ** 0.25
    )


def lemma_akb_bound(n_len: float, qs: list[int], delta: float) -> float:
    """The k-fold iterated bound for q = q0 * q1 * ... * qk squarefree:

        sum_{j=1..k} N^(1 - 1/2^j) qj^(1/2^j)
        + N^(1 - 1/2^k) q0^(1/2^(k+1)) delta^(1/2^k)
          (2^(k+2) + 4)^(omega(q0)/2^k)
          ((N/q0)^(1/2^k) + (log q)^(1/2^k)),

    implied constant 1.  qs = [q0, q1, ..., qk]."""
    if len(qs) < 2:
        raise ValueError("need q0 and at least q1")
    if any(qv < 1 for qv in qs) or n_len <= 0 or delta <= 0:
        raise ValueError("parameters must be positive")
    q = 1
    for qv in qs:
        q *= qv
    if mult_functions(factor(q))[0] == 0:
        raise ValueError("q = prod(qs) must be squarefree")
    k = len(qs) - 1
    q0 = qs[0]
    total = 0.0
    for j in range(1, k + 1):
        e = 1.0 / 2**j
        total += n_len ** (1 - e) * qs[j] ** e
    ek = 1.0 / 2**k
    omega0 = mult_functions(factor(q0))[3]
    total += (
        n_len ** (1 - ek)
        * q0 ** (ek / 2)
        * delta**ek
        * (2 ** (k + 2) + 4) ** (omega0 * ek)
        * ((n_len / q0) ** ek + math.log(max(q, 2)) ** ek)
    )
    return total


def a_process_check(
    psi1: list[complex],
    psi2: list[complex],
    interval: tuple[int, int],
    big_l: int,
) -> tuple[float, float]:
    """The differencing inequality for q1-periodic psi1 and q2-periodic psi2
    on J = (A, A+N]:

        lhs = |sum_{n in J} psi1(n) psi2(n)|^2
        rhs = max|psi2| * ( N^2/L + (N/L) * sum_{0 < |l| <= L}
              |sum_{n, n + l*q2 in J} psi1(n) conj(psi1(n + l*q2))| )

    Requires (q1, q2) = 1 and 1 <= L <= N/q2.  Both sides are returned so
    sweeps can record the empirical lhs/rhs maximum.
    """
    q1, q2 = len(psi1), len(psi2)
    if math.gcd(q1, q2) != 1:
        raise ValueError("need (q1, q2) = 1")
    a0, n_len = interval
    if not 1 <= big_l <= max(n_len // q2, 0):
        raise ValueError("need 1 <= L <= N/q2")
    s = 0j
    for n in range(a0 + 1, a0 + n_len + 1):
        s += psi1[n % q1] * psi2[n % q2]
    lhs = abs(s) ** 2
    corr = 0.0
    for el in range(-big_l, big_l + 1):
        if el == 0:
            continue
        shift = el * q2
        inner = 0j
        for n in range(a0 + 1, a0 + n_len + 1):
            m = n + shift
            if a0 < m <= a0 + n_len:
                inner += psi1[n % q1] * psi1[m % q1].conjugate()
        corr += abs(inner)
    sup2 = max((abs(v) for v in psi2), default=0.0)
    rhs = sup2 * (n_len * n_len / big_l + n_len / big_l * corr)
    return lhs, rhs


def subset_parity_check(p: int, h: list[int]) -> bool:
    """True iff some b in F_p is hit by an odd number of subset sums of h.

    The underlying lemma (odd p only): if every residue's subset count were
    even, some h_i would have to be 0 mod p — so for all-nonzero tuples and
    p >= 3 this always returns True.  For p = 2 it can fail, e.g. h = (1, 1)
    hits both residues twice.  Brute force over all 2^k subsets.
    """
    k = len(h)
    if k > PARITY_K_LIMIT:
        raise ScaleError(f"subset enumeration capped at k = {PARITY_K_LIMIT}")
    counts = [0] * p
    for mask in range(1 << k):
        b = 0
        for i in range(k):
            if mask >> i & 1:
                b += h[i]
        counts[b % p] ^= 1
    return any(counts)
