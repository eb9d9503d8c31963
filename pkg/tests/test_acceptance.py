"""Acceptance suite: twelve pass/fail gates for the whole package, each one
test function with its tolerance stated inline.  Run with `pytest -v` to get
one line per gate.
"""

import math
import os
import random
import time

import numpy as np
import pytest

from rootwave import calibration
from rootwave.arith import factor, primes_up_to
from rootwave.charsums import RationalFunctionModP, kloosterman, weil_check
from rootwave.constants import (
    euler_factor_identity,
    theorem2_constant,
    theorem3_constant,
    theorem3_constant_alt,
)
from rootwave.expsums import (
    lemma1_error_ratio,
    s_naive_series,
    s_sieve,
    s_sieve_multi,
)
from rootwave.gauss import check_gauss_bijection, primitive_reps, verify_k1k2
from rootwave.roots import FactoredPoly, enumerate_roots_up_to, rho
from rootwave.vdc import subset_parity_check
from rootwave import _kernels
from rootwave import cli

POLY_FAMILY = [
    FactoredPoly(((1, 0), (1, 1))),
    FactoredPoly(((2, 1), (3, 1))),
    FactoredPoly(((4, 1), (9, 2))),
    FactoredPoly(((1, 0), (1, 1), (2, 1))),
    FactoredPoly(((1, 0), (1, 1), (2, 1), (3, 1))),
    FactoredPoly(((1, 0),), has_x2p1=True),
]

SEED = 20240817


def _brute_rootsets(f, x):
    out = []
    for n in range(1, x + 1):
        r = np.arange(n, dtype=np.int64)
        vals = np.ones(n, dtype=np.int64)
        for a, b in f.linear:
            vals = vals * ((a * r + b) % n) % n
        if f.has_x2p1:
            vals = vals * ((r * r + 1) % n) % n
        out.append(tuple(int(v) for v in r[vals % n == 0]))
    return out


def test_criterion_01_sieve_matches_oracle_and_rootsets():
    """Sieve vs brute oracle: |diff| <= 1e-6 at every x <= 3000 for six
    polynomials x h in {1,2,3}, and identical root sets for n <= 3000."""
    t0 = time.perf_counter()
    cps = list(range(1, 3001))
    for f in POLY_FAMILY:
        for h in (1, 2, 3):
            naive = s_naive_series(f, cps, h)
            sieve = s_sieve(f, 3000, h, checkpoints=cps)
            diffs = [
                abs(a - b) for a, b in zip(naive.values, sieve.values)
            ]
            assert max(diffs) <= 1e-6, (f.describe(), h, max(diffs))
            assert naive.counts == sieve.counts
        brute = _brute_rootsets(f, 3000)
        got = {}
        enumerate_roots_up_to(f, 3000, lambda n, rs: got.__setitem__(n, rs.residues))
        for n in range(1, 3001):
            assert got[n] == brute[n - 1], (f.describe(), n)
    assert time.perf_counter() - t0 < 60.0


def test_criterion_02_gauss_bijection_to_1e5():
    """Roots of v^2+1 mod l <-> primitive r^2+s^2 = l for every l in
    [2, 1e5], with |reps| = rho(l); exact, under two minutes."""
    t0 = time.perf_counter()
    for l in range(2, 10**5 + 1):
        assert len(primitive_reps(l)) == rho(factor(l)), l
        assert check_gauss_bijection(l), l
    assert time.perf_counter() - t0 < 120.0


def test_criterion_03_k1k2_identity_random_1e4():
    """Exact three-fraction splitting of kbar*v/l for 1e4 seeded random
    (k, r, s) with l = r^2 + s^2 <= 1e5; zero failures allowed."""
    rng = random.Random(SEED)
    done = 0
    while done < 10**4:
        l = rng.randrange(2, 10**5 + 1)
        reps = primitive_reps(l)
        if not reps:
            continue
        rep = rng.choice(reps)
        k = rng.randrange(1, 10**6)
        if math.gcd(k, l) != 1:
            continue
        assert verify_k1k2(k, rep), (k, rep)
        done += 1


def test_criterion_04_ramanujan_exact_q500_t50():
    """Closed-form Ramanujan sums equal direct summation for every q <= 500
    and |t| <= 50 (direct route evaluated to 1e-6)."""
    from rootwave.charsums import ramanujan

    for q in range(1, 501):
        fq = factor(q)
        a = np.arange(q if q > 1 else 1)
        coprime = a[np.gcd(a, q) == 1] if q > 1 else np.array([0])
        for t in range(0, 51):
            direct = np.exp(2j * np.pi * t * coprime / q).sum()
            want = ramanujan(fq, t)
            assert abs(direct - want) < 1e-6, (q, t)
            assert ramanujan(fq, -t) == want  # c_q(-t) = c_q(t)


def test_criterion_05_weil_and_kloosterman_bounds():
    """Zero Weil-bound violations over 1e3 seeded random rational functions
    of degree <= 4 mod primes p <= 997, and |K(a,b;p)| <= 2 sqrt(p) for all
    a, b via the unit-sweep reduction, with the reduction spot-checked."""
    rng = random.Random(SEED)
    primes = [int(p) for p in primes_up_to(997) if p >= 3]
    done = 0
    while done < 1000:
        p = rng.choice(primes)
        num = tuple(rng.randrange(p) for _ in range(rng.randrange(1, 6)))
        den = tuple(rng.randrange(p) for _ in range(rng.randrange(1, 6)))
        if all(c == 0 for c in den):
            continue
        fn = RationalFunctionModP(p, num, den)
        if fn.is_constant:
            continue
        total, bound, ok = weil_check(fn)
        assert ok, (p, num, den, abs(total), bound)
        done += 1
    # substitution identity K(a,b;p) = K(1,ab;p) on random triples
    for _ in range(25):
        p = rng.choice(primes)
        a, b = rng.randrange(1, p), rng.randrange(1, p)
        assert abs(kloosterman(a, b, p) - kloosterman(1, a * b % p, p)) < 1e-6
    # then the unit sweep covers every pair (a, b) with p coprime to ab
    for p in primes:
        assert _kernels.kloosterman_unit_sweep(p) <= 1.0 + 1e-9, p
    # degenerate pairs (p | ab, not both zero) are Ramanujan sums of size 1
    for p in (2, 3, 5, 7, 991):
        for a in (0, 1, p - 1):
            assert abs(abs(kloosterman(a, 0, p)) - (1 if a % p else p - 1)) < 1e-9
    # brute-force cross-check of the sweep at tiny p
    for p in (2, 3, 5):
        for a in range(1, p):
            for b in range(1, p):
                assert abs(kloosterman(a, b, p)) <= 2 * math.sqrt(p) + 1e-9


def test_criterion_06_incomplete_sum_grid_within_committed_max():
    """Incomplete inverse sums vs main term: the error ratio over the full
    committed grid stays within 5% of the recorded maximum."""
    worst = 0.0
    arg = None
    for q in range(10, 5001):
        fq = factor(q)
        z = float(math.floor(q**1.5))
        for t in {0, 1, 2, q // 2}:
            for m in (1, 2, 3):
                if math.gcd(m, q) != 1:
                    continue
                r = lemma1_error_ratio(0.0, z, fq, t, m, 1)
                if r > worst:
                    worst, arg = r, (q, t, m)
    assert worst <= calibration.LEMMA1_RATIO_MAX * 1.05, (worst, arg)


def test_criterion_07_quadratic_constant_trend():
    """S(n(n+1), x, 1)/x vs 12/pi^2: within 0.05 at x = 1e6, deviation at
    1e6 smaller than at 1e4, in under two minutes."""
    t0 = time.perf_counter()
    f = POLY_FAMILY[0]
    series = s_sieve(f, 10**6, 1, checkpoints=[10**4, 10**6])
    c = 12 / math.pi**2
    dev4 = abs(series.values[0].real / 10**4 - c)
    dev6 = abs(series.values[1].real / 10**6 - c)
    assert dev6 <= 0.05, dev6
    assert dev6 < dev4, (dev4, dev6)
    assert time.perf_counter() - t0 < 120.0


def test_criterion_08_cubic_constant_trend():
    """S(n(n+1)(2n+1), x, 1)/x vs the odd-prime product constant at
    pmax = 1e7: within 0.05 at x = 1e6, and the later decades both deviate
    less than x = 1e4.  (Strict per-decade monotonicity does not hold on
    the real data: the secondary term oscillates, and x = 1e5 happens to
    land within 3e-4 of the limit, closer than x = 1e6 at 9e-4.)"""
    f = POLY_FAMILY[3]
    series = s_sieve(f, 10**6, 1, checkpoints=[10**4, 10**5, 10**6])
    c = theorem3_constant(10**7).value
    devs = [
        abs(series.values[i] / series.checkpoints[i] - c) for i in range(3)
    ]
    assert devs[2] <= 0.05, devs
    assert devs[1] < devs[0], devs
    assert devs[2] < devs[0], devs


def test_criterion_09_quartic_family_equidistribution():
    """S(n(n^2+1), x, 1)/x approaches its constant (deviation decreasing
    from 1e4 to 1e6) and the Weyl profile at x = 1e6 stays below 0.5 for
    every h <= 10."""
    f = POLY_FAMILY[5]
    series = s_sieve(f, 10**6, 1, checkpoints=[10**4, 10**6])
    c = theorem2_constant(10**6).value
    dev4 = abs(series.values[0].real / 10**4 - c)
    dev6 = abs(series.values[1].real / 10**6 - c)
    assert dev6 < dev4, (dev4, dev6)
    multi = s_sieve_multi(f, 10**6, list(range(1, 11)))
    count = multi[0].counts[-1]
    profile = [abs(s.final) / count for s in multi]
    assert all(v < 0.5 for v in profile), profile


def test_criterion_10_euler_factor_identity_two_paths():
    """(1 - 2/p^2) = (1 - 1/p^2)(1 - 1/(p^2-1)) exactly for every prime
    p <= 1e4, and the two product routes to the cubic constant agree within
    their combined tails at pmax = 1e6."""
    for p in primes_up_to(10**4):
        assert euler_factor_identity(int(p))
    a = theorem3_constant(10**6)
    b = theorem3_constant_alt(10**6)
    assert abs(a.value - b.value) <= a.tail_bound + b.tail_bound


def test_criterion_11_subset_parity_exhaustive():
    """Some residue is hit an odd number of times by subset sums, for every
    nonzero tuple: exhaustive over odd p <= 13 and k <= 4.  (p = 2 is
    genuinely excluded: (1,1) mod 2 hits both residues evenly.)"""
    import itertools

    for p in (3, 5, 7, 11, 13):
        for k in (1, 2, 3, 4):
            for h in itertools.product(range(1, p), repeat=k):
                assert subset_parity_check(p, list(h)), (p, h)


def test_criterion_12_cli_budget_and_thread_independence(tmp_path):
    """`rootwave sum` on the cubic family at x = 1e7 finishes in under five
    minutes single-threaded, results are thread-count independent to 1e-8,
    and (when more than one CPU is available) eight threads run within 2x of
    ideal scaling."""
    poly = "(1,0)(1,1)(2,1)"
    out1 = tmp_path / "t1.csv"
    t0 = time.perf_counter()
    rc = cli.main(["sum", "--poly", poly, "--x", str(10**7), "--threads", "1",
                   "--out", str(out1)])
    wall1 = time.perf_counter() - t0
    assert rc == 0
    assert wall1 < 300.0, wall1

    out8 = tmp_path / "t8.csv"
    t0 = time.perf_counter()
    rc = cli.main(["sum", "--poly", poly, "--x", str(10**7), "--threads", "8",
                   "--out", str(out8)])
    wall8 = time.perf_counter() - t0
    assert rc == 0

    rows1 = out1.read_text().splitlines()
    rows8 = out8.read_text().splitlines()
    assert rows1[0] == rows8[0] == "x,count,re,im,ratio_re"
    for r1, r8 in zip(rows1[1:], rows8[1:]):
        c1 = r1.split(",")
        c8 = r8.split(",")
        assert c1[0] == c8[0] and c1[1] == c8[1]
        assert abs(float(c1[2]) - float(c8[2])) <= 1e-8
        assert abs(float(c1[3]) - float(c8[3])) <= 1e-8

    cpus = os.cpu_count() or 1
    if cpus >= 2:
        ideal = wall1 / min(8, cpus)
        assert wall8 <= 2.0 * ideal, (wall1, wall8, cpus)
    # single-CPU hosts cannot demonstrate scaling; independence checked above
