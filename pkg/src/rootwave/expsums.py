"""The headline exponential sums over normalized polynomial roots,

    S(f, x, h) = sum_{n <= x} sum_{f(r) = 0 mod n, 0 <= r < n} e(h r / n),

with a brute-force oracle (s_naive), a segmented parallel sieve (s_sieve),
and the incomplete inverse sums with their main-term/error decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .arith import Factorization, euler_phi, factor, mobius, mult_functions, primes_up_to
from .roots import FactoredPoly, roots_mod_prime_power

NAIVE_LIMIT = 10**4
SIEVE_LIMIT = 1 << 31
INCOMPLETE_RANGE_LIMIT = 10**7
DEFAULT_SEGMENT = 1 << 16

TWO_PI = 2.0 * math.pi


class ScaleError(ValueError):
    pass


@dataclass
class ComplexAccumulator:
    """Compensated complex partial sum with a term counter."""

    re: float = 0.0
    im: float = 0.0
    re_c: float = 0.0
    im_c: float = 0.0
    count: int = 0

    def add(self, term: complex) -> None:
        y = term.real - self.re_c
        t = self.re + y
        self.re_c = (t - self.re) - y
        self.re = t
        y = term.imag - self.im_c
        t = self.im + y
        self.im_c = (t - self.im) - y
        self.im = t
        self.count += 1

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class SumSeries:
    """Partial sums of S(f, x, h) recorded at ascending checkpoints."""

    checkpoints: tuple[int, ...]
    values: tuple[complex, ...]
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        cps = self.checkpoints
        if list(cps) != sorted(set(cps)):
            raise ValueError("checkpoints must be strictly ascending")
        if len(self.values) != len(cps) or len(self.counts) != len(cps):
            raise ValueError("values/counts must align with checkpoints")
        if list(self.counts) != sorted(self.counts):
            raise ValueError("counts must be non-decreasing")

    @property
    def final(self) -> complex:
        return self.values[-1]


def s_naive(f: FactoredPoly, x: int, h: int) -> ComplexAccumulator:
    """Oracle: for each n <= x scan every residue r and test f(r) = 0 mod n
    directly.  h = 0 is allowed here (counting path)."""
    if x < 1:
        raise ValueError("need x >= 1")
    series = s_naive_series(f, [x], h)
    acc = ComplexAccumulator()
    acc.re = series.values[0].real
    acc.im = series.values[0].imag
    acc.count = series.counts[0]
    return acc


def s_naive_series(f: FactoredPoly, checkpoints: list[int], h: int) -> SumSeries:
    """Running brute-force partial sums at each checkpoint (all <= 10^4)."""
    cps = sorted(set(int(c) for c in checkpoints))
    if not cps or cps[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if cps[-1] > NAIVE_LIMIT:
        raise ScaleError(f"s_naive is capped at x = {NAIVE_LIMIT}")
    acc = ComplexAccumulator()
    values, counts = [], []
    it = iter(cps)
    nxt = next(it)
    for n in range(1, cps[-1] + 1):
        r = np.arange(n, dtype=np.int64)
        vals = np.ones(n, dtype=np.int64)
        for a, b in f.linear:
            vals = vals * ((a * r + b) % n) % n
        if f.has_x2p1:
            vals = vals * ((r * r + 1) % n) % n
        for root in r[vals % n == 0]:
            m = h * int(root) % n
            acc.add(complex(math.cos(TWO_PI * m / n), math.sin(TWO_PI * m / n)))
        if n == nxt:
            values.append(acc.value)
            counts.append(acc.count)
            nxt = next(it, None)
    return SumSeries(tuple(cps), tuple(values), tuple(counts))


_SPF_CACHE: dict[str, object] = {}


def _global_spf(x: int) -> np.ndarray:
    cached = _SPF_CACHE.get("spf")
    if cached is not None and len(cached) > x:
        return cached
    spf = _kernels.build_spf(x)
    _SPF_CACHE["spf"] = spf
    return spf


def _sqrtm1_tables(x: int) -> tuple[np.ndarray, np.ndarray]:
    cached = _SPF_CACHE.get("sqrtm1")
    if cached is not None and len(cached[0]) > 0 and cached[0][-1] >= x:
        return cached
    primes = primes_up_to(x)
    tables = (primes, _kernels.build_sqrtm1(primes))
    _SPF_CACHE["sqrtm1"] = tables
    return tables


def _pack_singular_tables(f: FactoredPoly, x: int):
    """Pack per-prime-power root lists for the singular primes into the flat
    (bad_ps, bad_emax, bad_ptr, bad_roots) layout the kernel expects:
    bad_roots starts with a row-offset directory (absolute indices into
    bad_roots itself), followed by the concatenated residue lists.
    """
    bad = sorted(f.singular_primes())
    bad_ps = np.array(bad, dtype=np.int64)
    emax = []
    rows: list[list[int]] = []
    for p in bad:
        e = 1
        q = p
        tables = []
        while q <= x:
            tables.append(roots_mod_prime_power(f, p, e))
            e += 1
            q *= p
        emax.append(len(tables))
        rows.extend(tables)
    bad_emax = np.array(emax, dtype=np.int64)
    bad_ptr = np.zeros(len(bad), dtype=np.int64)
    for i in range(1, len(bad)):
        bad_ptr[i] = bad_ptr[i - 1] + emax[i - 1]
    nrows = sum(emax)
    directory = np.zeros(nrows + 1, dtype=np.int64)
    payload: list[int] = []
    pos = nrows + 1
    for i, row in enumerate(rows):
        directory[i] = pos
        payload.extend(row)
        pos += len(row)
    directory[nrows] = pos
    bad_roots = np.concatenate([directory, np.array(payload, dtype=np.int64)]) \
        if payload else directory
    max_row = max((len(r) for r in rows), default=0)
    return bad_ps, bad_emax, bad_ptr, bad_roots, max_row


def _max_omega(x: int) -> int:
    w, prod = 0, 1
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        prod *= p
        if prod > x:
            break
        w += 1
    return max(w, 1)


def s_sieve_multi(
    f: FactoredPoly,
    x: int,
    hs: list[int],
    checkpoints: list[int] | None = None,
    threads: int | None = None,
    segment_size: int = DEFAULT_SEGMENT,
) -> list[SumSeries]:
    """S(f, ., h) for several h in one sieve pass.

    Parallel over fixed segments; each segment is summed sequentially with
    compensated addition and segments are reduced in ascending order, so the
    result is independent of the thread count.
    """
    if x < 1 or x > SIEVE_LIMIT:
        raise ScaleError(f"need 1 <= x <= {SIEVE_LIMIT}")
    if not hs:
        raise ValueError("need at least one h")
    cps = sorted(set(int(c) for c in checkpoints)) if checkpoints else [x]
    if cps[0] < 1 or cps[-1] > x:
        raise ValueError("checkpoints must lie in [1, x]")
    if cps[-1] != x:
        cps.append(x)

    if threads is not None:
        import numba

        # clamp to the launch-time maximum; results are thread-count
        # independent, so capping only affects speed
        numba.set_num_threads(min(max(1, threads), numba.config.NUMBA_NUM_THREADS))

    boundaries = sorted(set(range(0, x + 1, segment_size)) | set(cps) | {0, x})
    boundaries = np.array(boundaries, dtype=np.int64)

    spf = _global_spf(x)
    if f.has_x2p1:
        primes, sqrtm1 = _sqrtm1_tables(x)
    else:
        primes = np.zeros(0, dtype=np.int64)
        sqrtm1 = np.zeros(0, dtype=np.int64)
    bad_ps, bad_emax, bad_ptr, bad_roots, max_row = _pack_singular_tables(f, x)
    per_prime = max(f.degree, max_row, 1)
    cap = min(per_prime ** _max_omega(x), 1 << 22)

    lin_a = np.array([a for a, _ in f.linear], dtype=np.int64)
    lin_b = np.array([b for _, b in f.linear], dtype=np.int64)
    hs_arr = np.array(hs, dtype=np.int64)

    seg_re, seg_im, seg_cnt = _kernels.exp_sum_segments(
        boundaries, hs_arr, lin_a, lin_b, f.has_x2p1, spf, primes, sqrtm1,
        bad_ps, bad_emax, bad_ptr, bad_roots, cap,
    )
    if np.any(seg_cnt < 0):
        raise ScaleError("root-list capacity exceeded in the sieve kernel")

    # deterministic ascending reduction: running prefix over segments
    cum_re = np.cumsum(seg_re, axis=0)
    cum_im = np.cumsum(seg_im, axis=0)
    cum_cnt = np.cumsum(seg_cnt)
    idx = {int(b): i for i, b in enumerate(boundaries)}
    out = []
    for j in range(len(hs)):
        values = tuple(
            complex(cum_re[idx[c] - 1, j], cum_im[idx[c] - 1, j]) for c in cps
        )
        counts = tuple(int(cum_cnt[idx[c] - 1]) for c in cps)
        out.append(SumSeries(tuple(cps), values, counts))
    return out


def s_sieve(
    f: FactoredPoly,
    x: int,
    h: int,
    checkpoints: list[int] | None = None,
    threads: int | None = None,
) -> SumSeries:
    """S(f, x, h) with checkpointed partial sums; h = 0 gives the pure root
    count in the real part (exposed for the counting identity)."""
    return s_sieve_multi(f, x, [h], checkpoints, threads)[0]


@lru_cache(maxsize=32)
def _inv_table_cached(q: int) -> np.ndarray:
    return _kernels.inverse_table(q)


def incomplete_inverse_sum(y: float, z: float, q: int, t: int, m: int, u: int) -> complex:
    """sum of e(t * nbar / q) over y < n <= z with (n, q) = 1 and
    n = u (mod m); terms with (n, q) > 1 are excluded by the condition."""
    if q < 2:
        raise ValueError("need q >= 2")
    if m < 1 or math.gcd(m, q) != 1:
        raise ValueError("need m >= 1 coprime to q")
    if z - y > INCOMPLETE_RANGE_LIMIT:
        raise ScaleError(f"range length capped at {INCOMPLETE_RANGE_LIMIT}")
    n0 = math.floor(y) + 1
    n1 = math.floor(z)
    if n1 < n0:
        return 0j
    inv = _inv_table_cached(q)
    re, im = _kernels.incomplete_inverse_sum_kernel(n0, n1, q, t % q, m, u % m, inv)
    return complex(re, im)


def lemma1_mainterm(y: float, z: float, q: Factorization, t: int, m: int) -> float:
    """((z - y)/(m q)) * mu(q/(q,t)) * phi(q) / phi(q/(q,t))."""
    g = math.gcd(t, q.value)
    red = factor(q.value // g)
    mu = mobius(red)
    if mu == 0:
        return 0.0
    return (z - y) / (m * q.value) * mu * euler_phi(q) / euler_phi(red)


def lemma1_error_ratio(y: float, z: float, q: Factorization, t: int, m: int, u: int) -> float:
    """|incomplete sum - main term| over sqrt(q (t,q)) tau(q) max(log q, 1)."""
    exact = incomplete_inverse_sum(y, z, q.value, t, m, u)
    main = lemma1_mainterm(y, z, q, t, m)
    tau = mult_functions(q)[2]
    denom = math.sqrt(q.value * math.gcd(t, q.value)) * tau * max(math.log(q.value), 1.0)
    return abs(exact - main) / denom
