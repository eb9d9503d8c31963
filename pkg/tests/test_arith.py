import math
import random

import numpy as np
import pytest

from rootwave.arith import (
    NonCoprimeModuliError,
    coprime_part_split,
    crt,
    euler_phi,
    factor,
    factor_with_spf,
    flat_sharp_split,
    inv_mod,
    is_prime,
    mobius,
    mult_functions,
    primes_up_to,
    radical,
    smooth_rough_split,
    spf_table,
)


def brute_factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return tuple(sorted(out.items()))


def test_factor_matches_trial_division_small():
    for n in range(1, 3000):
        assert factor(n).factors == brute_factor(n)


def test_factor_random_large():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randrange(10**9, 10**12)
        f = factor(n)
        prod = 1
        for p, e in f.factors:
            assert is_prime(p)
            prod *= p**e
        assert prod == n


def test_primes_up_to():
    ps = primes_up_to(100)
    assert list(ps[:5]) == [2, 3, 5, 7, 11]
    assert len(ps) == 25
    assert len(primes_up_to(1)) == 0


def test_is_prime_exhaustive():
    ps = set(int(p) for p in primes_up_to(10**4))
    for n in range(10**4 + 1):
        assert is_prime(n) == (n in ps)


def test_mult_functions_brute():
    for n in range(1, 500):
        mu, phi, tau, omega = mult_functions(factor(n))
        assert phi == sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)
        assert tau == sum(1 for d in range(1, n + 1) if n % d == 0)
        assert omega == len(set(p for p, _ in brute_factor(n)))
        sqf = all(e == 1 for _, e in brute_factor(n)) if n > 1 else True
        assert (mu != 0) == sqf
        assert mobius(factor(n)) == mu and euler_phi(factor(n)) == phi


def test_crt_roundtrip():
    rng = random.Random(5)
    for _ in range(200):
        moduli = rng.sample([3, 5, 7, 11, 13, 16, 9, 25], 3)
        if len({math.gcd(a, b) for a in moduli for b in moduli if a != b}) != 1:
            continue
        rs = [(rng.randrange(m), m) for m in moduli]
        try:
            big_r, big_m = crt(rs)
        except NonCoprimeModuliError:
            continue
        for r, m in rs:
            assert big_r % m == r


def test_crt_rejects_shared_factor():
    with pytest.raises(NonCoprimeModuliError):
        crt([(1, 6), (2, 9)])


def test_inv_mod():
    for m in range(2, 60):
        for a in range(m):
            inv = inv_mod(a, m)
            if math.gcd(a, m) == 1:
                assert inv is not None and a * inv % m == 1
            else:
                assert inv is None


def test_spf_table_segments():
    table = spf_table(0, 100)
    assert table[0] == 0 and table[1] == 0
    for n in range(2, 100):
        assert table[n] == brute_factor(n)[0][0]
    lo = 10**6
    seg = spf_table(lo, lo + 1000)
    for i in (0, 17, 999):
        n = lo + i
        assert seg[i] == brute_factor(n)[0][0]
        assert factor_with_spf(n, seg, lo).factors == brute_factor(n)


def test_splits():
    for n in range(1, 400):
        flat, sharp = flat_sharp_split(factor(n))
        assert flat * sharp == n and math.gcd(flat, sharp) == 1
        assert mobius(factor(flat)) != 0 or flat == 1
        c, d = smooth_rough_split(n, 5)
        assert c * d == n
        assert all(p <= 5 for p, _ in factor(c).factors)
        assert all(p > 5 for p, _ in factor(d).factors)


def test_coprime_part_split():
    for k in range(1, 200):
        for r in (2, 6, 15):
            k1, k2, kernel = coprime_part_split(k, r)
            assert k1 * k2 == k
            assert math.gcd(k1, r) == 1
            assert all(r % p == 0 for p, _ in factor(k2).factors)
            assert kernel == radical(factor(k2))


def test_radical():
    assert radical(factor(360)) == 30
    assert radical(factor(1)) == 1
