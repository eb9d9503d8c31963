"""Equidistribution diagnostics for the normalized roots r/n: Weyl sum
profiles across frequencies, star discrepancy of the fraction sample, and
root-counting tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .expsums import s_sieve_multi
from .roots import FactoredPoly, enumerate_roots_up_to

WEYL_X_LIMIT = 10**7
HMAX_LIMIT = 50
ROOT_COUNT_LIMIT = 10**7
EXACT_SORT_LIMIT = 10**7
STREAM_BUCKETS = 1 << 16


class ScaleError(ValueError):
    pass


@dataclass(frozen=True)
class FractionSample:
    """The normalized roots r/n for all n <= x, as points in [0, 1)."""

    points: tuple[float, ...]
    x: int
    poly: str

    def __post_init__(self) -> None:
        if any(not 0.0 <= p < 1.0 for p in self.points):
            raise ValueError("points must lie in [0, 1)")

    def __len__(self) -> int:
        return len(self.points)


def collect_fractions(f: FactoredPoly, x: int) -> FractionSample:
    pts: list[float] = []

    def visit(n, rs):
        for r in rs.residues:
            pts.append(r / n)

    enumerate_roots_up_to(f, x, visit)
    return FractionSample(tuple(pts), x, f.describe())


def weyl_profile(
    f: FactoredPoly, x: int, hmax: int, threads: int | None = None
) -> list[tuple[int, float]]:
    """(h, |S(f, x, h)| / N(x)) for h = 1..hmax, computed in a single sieve
    pass; entries near 0 witness equidistribution, entries near 1 the lack
    of it."""
    if x > WEYL_X_LIMIT:
        raise ScaleError(f"x capped at {WEYL_X_LIMIT}")
    if not 1 <= hmax <= HMAX_LIMIT:
        raise ScaleError(f"need 1 <= hmax <= {HMAX_LIMIT}")
    series = s_sieve_multi(f, x, list(range(1, hmax + 1)), threads=threads)
    count = series[0].counts[-1]
    return [(h, abs(series[h - 1].values[-1]) / count) for h in range(1, hmax + 1)]


def star_discrepancy(sample: FractionSample) -> float:
    """D* = sup_t |#{points < t}/N - t|, by the standard sorted-order
    formula max_i max(i/N - x_(i), x_(i) - (i-1)/N)."""
    n = len(sample)
    if n == 0:
        raise ValueError("empty sample")
    if n <= EXACT_SORT_LIMIT:
        pts = sorted(sample.points)
        d = 0.0
        for i, xv in enumerate(pts, start=1):
            d = max(d, i / n - xv, xv - (i - 1) / n)
        return d
    return _star_discrepancy_streamed(sample.points)


def _star_discrepancy_streamed(points) -> float:
    """Bucketed approximation for very large samples: counts per 2^16
    equal-width buckets bound D* within one bucket width (2^-16), so the
    returned midpoint estimate is certified to 2^-15."""
    counts = [0] * STREAM_BUCKETS
    n = 0
    for p in points:
        counts[int(p * STREAM_BUCKETS)] += 1
        n += 1
    width = 1.0 / STREAM_BUCKETS
    cum = 0
    lo = hi = 0.0
    for i, c in enumerate(counts):
        # empirical cdf is cum/n on the bucket boundary, cum+c at the next
        t0, t1 = i * width, (i + 1) * width
        hi = max(hi, abs(cum / n - t0) + width, abs((cum + c) / n - t1) + width)
        lo = max(lo, abs(cum / n - t0), abs((cum + c) / n - t1))
        cum += c
    return (lo + hi) / 2


def root_count_profile(
    f: FactoredPoly, checkpoints: list[int]
) -> list[tuple[int, int]]:
    """Exact N(x) = total number of roots over all n <= x, at each
    checkpoint."""
    cps = sorted(set(int(c) for c in checkpoints))
    if not cps or cps[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if cps[-1] > ROOT_COUNT_LIMIT:
        raise ScaleError(f"checkpoints capped at {ROOT_COUNT_LIMIT}")
    out: list[tuple[int, int]] = []
    state = {"count": 0, "idx": 0}

    def visit(n, rs):
        state["count"] += len(rs)
        while state["idx"] < len(cps) and n == cps[state["idx"]]:
            out.append((n, state["count"]))
            state["idx"] += 1

    enumerate_roots_up_to(f, cps[-1], visit)
    return out
