"""Numba kernels for the high-volume inner loops: the segmented root-sum
sieve, incomplete inverse sums, and the Kloosterman sweep.

Everything here is deterministic: segments are fixed by the boundary array
(never by the thread count), each segment is accumulated sequentially with
compensated summation, and partial results are reduced in ascending segment
order by the callers.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

TWO_PI = 2.0 * np.pi


@njit(cache=True)
def build_spf(x):
    """Global smallest-prime-factor table for 2..x (spf[p] = p at primes)."""
    spf = np.zeros(x + 1, dtype=np.int32)
    i = 2
    while i * i <= x:
        if spf[i] == 0:
            for m in range(i * i, x + 1, i):
                if spf[m] == 0:
                    spf[m] = i
        i += 1
    for i in range(2, x + 1):
        if spf[i] == 0:
            spf[i] = i
    return spf


@njit(cache=True)
def _inv64(a, m):
    """Inverse of a modulo m (0 when it does not exist); m >= 1."""
    if m == 1:
        return np.int64(0)
    r0, r1 = m, a % m
    s0, s1 = np.int64(0), np.int64(1)
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        return np.int64(0)
    return s0 % m


@njit(cache=True)
def _powmod(a, e, m):
    a %= m
    r = np.int64(1)
    while e > 0:
        if e & 1:
            r = r * a % m
        a = a * a % m
        e >>= 1
    return r


@njit(cache=True)
def build_sqrtm1(primes):
    """Square roots of -1 mod p for p = 1 (mod 4), aligned with primes."""
    out = np.zeros(len(primes), dtype=np.int64)
    for i in range(len(primes)):
        p = primes[i]
        if p % 4 == 1:
            n = np.int64(2)
            while _powmod(n, (p - 1) // 2, p) != p - 1:
                n += 1
            v = _powmod(n, (p - 1) // 4, p)
            if p - v < v:
                v = p - v
            out[i] = v
    return out


@njit(cache=True)
def _bad_index(bad_ps, p):
    for i in range(len(bad_ps)):
        if bad_ps[i] == p:
            return i
    return -1


@njit(cache=True)
def _prime_rank(primes, p):
    lo, hi = 0, len(primes) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if primes[mid] < p:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def _roots_prime_power(
    p, e, q, lin_a, lin_b, has_q, primes, sqrtm1, bad_ps, bad_emax, bad_ptr, bad_roots, out
):
    """Root list of f modulo q = p^e into out; returns the count (or -1 on a
    missing singular table, which callers treat as a hard error)."""
    bi = _bad_index(bad_ps, p)
    if bi >= 0:
        if e > bad_emax[bi]:
            return -1
        row = bad_ptr[bi] + (e - 1)
        start = bad_roots[row]
        stop = bad_roots[row + 1]
        # bad_roots stores row offsets first, then the residue payload
        c = 0
        for j in range(start, stop):
            out[c] = bad_roots[j]
            c += 1
        return c
    c = 0
    for i in range(len(lin_a)):
        a = lin_a[i] % q
        b = lin_b[i] % q
        out[c] = (q - b) % q * _inv64(a, q) % q
        c += 1
    if has_q and p % 4 == 1:
        v = sqrtm1[_prime_rank(primes, p)]
        m = p
        while m < q:
            fr = (v * v % (m * p) + 1) % (m * p)
            t = (-(fr // m)) % p * _inv64(2 * v % p, p) % p
            v = v + m * t
            m *= p
        out[c] = v % q
        out[c + 1] = (q - v) % q
        c += 2
    return c


@njit(cache=True, parallel=True)
def exp_sum_segments(
    boundaries,
    hs,
    lin_a,
    lin_b,
    has_q,
    spf,
    primes,
    sqrtm1,
    bad_ps,
    bad_emax,
    bad_ptr,
    bad_roots,
    cap,
):
    """Per-segment compensated sums of e(h*r/n) over roots, for each h.

    Segment si covers n in (boundaries[si], boundaries[si+1]].  Returns
    (re, im, counts) with one row per segment; counts[si] = -1 flags a
    capacity/table failure.
    """
    nseg = len(boundaries) - 1
    nh = len(hs)
    seg_re = np.zeros((nseg, nh))
    seg_im = np.zeros((nseg, nh))
    seg_cnt = np.zeros(nseg, dtype=np.int64)
    for si in prange(nseg):
        lo = boundaries[si] + 1
        hi = boundaries[si + 1]
        re = np.zeros(nh)
        im = np.zeros(nh)
        cre = np.zeros(nh)
        cim = np.zeros(nh)
        res = np.empty(cap, dtype=np.int64)
        tmp = np.empty(cap, dtype=np.int64)
        qroots = np.empty(64, dtype=np.int64)
        cnt = np.int64(0)
        failed = False
        for n in range(lo, hi + 1):
            if n == 1:
                cnt += 1
                for j in range(nh):
                    y = 1.0 - cre[j]
                    t = re[j] + y
                    cre[j] = (t - re[j]) - y
                    re[j] = t
                continue
            m = n
            nr = 1
            res[0] = 0
            big_m = np.int64(1)
            dead = False
            while m > 1:
                p = np.int64(spf[m])
                q = np.int64(1)
                e = 0
                while m % p == 0:
                    m //= p
                    q *= p
                    e += 1
                c = _roots_prime_power(
                    p, e, q, lin_a, lin_b, has_q, primes, sqrtm1,
                    bad_ps, bad_emax, bad_ptr, bad_roots, qroots,
                )
                if c < 0:
                    failed = True
                    break
                if c == 0:
                    dead = True
                    break
                if nr * c > cap:
                    failed = True
                    break
                inv_m = _inv64(big_m % q, q)
                k = 0
                for i in range(nr):
                    r0 = res[i]
                    for j in range(c):
                        tmp[k] = r0 + big_m * ((qroots[j] - r0) % q * inv_m % q)
                        k += 1
                for i in range(k):
                    res[i] = tmp[i]
                nr = k
                big_m *= q
            if failed:
                cnt = -1
                break
            if dead:
                continue
            cnt += nr
            inv_n = 1.0 / n
            for i in range(nr):
                r = res[i]
                for j in range(nh):
                    ang = TWO_PI * ((hs[j] * r) % n) * inv_n
                    y = np.cos(ang) - cre[j]
                    t = re[j] + y
                    cre[j] = (t - re[j]) - y
                    re[j] = t
                    y = np.sin(ang) - cim[j]
                    t = im[j] + y
                    cim[j] = (t - im[j]) - y
                    im[j] = t
        for j in range(nh):
            seg_re[si, j] = re[j]
            seg_im[si, j] = im[j]
        seg_cnt[si] = cnt
    return seg_re, seg_im, seg_cnt


@njit(cache=True)
def inverse_table(q):
    """inv[a] = a^(-1) mod q, or 0 when gcd(a, q) > 1."""
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = _inv64(np.int64(a), np.int64(q))
    return inv


@njit(cache=True)
def incomplete_inverse_sum_kernel(n0, n1, q, t, m, u, inv):
    """Sum of e(t * nbar_q / q) over n0 <= n <= n1 with (n, q) = 1 and
    n = u (mod m).  Long ranges reuse the exact periodicity (period q*m) of
    the summand: one full period is summed directly and multiplied by the
    integer number of complete periods.
    """
    period = q * m
    total = n1 - n0 + 1
    tq = t % q
    um = u % m
    re = 0.0
    im = 0.0
    if total > 2 * period:
        k_full = total // period
        pre = 0.0
        pim = 0.0
        for n in range(n0, n0 + period):
            if n % m != um:
                continue
            iv = inv[n % q]
            if iv == 0:
                continue
            ang = TWO_PI * (tq * iv % q) / q
            pre += np.cos(ang)
            pim += np.sin(ang)
        re = k_full * pre
        im = k_full * pim
        n0 = n0 + k_full * period
    for n in range(n0, n1 + 1):
        if n % m != um:
            continue
        iv = inv[n % q]
        if iv == 0:
            continue
        ang = TWO_PI * (tq * iv % q) / q
        re += np.cos(ang)
        im += np.sin(ang)
    return re, im


@njit(cache=True)
def kloosterman_unit_sweep(p):
    """max over c in [1, p) of |K(1, c; p)| / (2 sqrt(p)).

    Every K(a, b; p) with p coprime to ab equals K(1, ab; p) under x -> a*x,
    so sweeping c covers all pairs (a, b).
    """
    inv = inverse_table(p)
    cos_t = np.empty(p)
    sin_t = np.empty(p)
    for j in range(p):
        cos_t[j] = np.cos(TWO_PI * j / p)
        sin_t[j] = np.sin(TWO_PI * j / p)
    worst = 0.0
    for c in range(1, p):
        sre = 0.0
        sim = 0.0
        for x in range(1, p):
            idx = (inv[x] + c * x) % p
            sre += cos_t[idx]
            sim += sin_t[idx]
        ratio = np.sqrt(sre * sre + sim * sim) / (2.0 * np.sqrt(p))
        if ratio > worst:
            worst = ratio
    return worst
