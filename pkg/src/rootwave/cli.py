"""Command-line driver: exponential-sum runs with checkpoint persistence,
constant evaluation, and the property-verification suites.

Exit codes: 0 success, 1 property violation, 2 parse/usage error,
3 overflow or scale guard, 4 resume mismatch.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import random
import re
import sys
import time

from . import calibration
from .analysis import ScaleError as AnalysisScaleError
from .arith import factor
from .charsums import RationalFunctionModP, weil_check
from .constants import (
    c_f1_quadratic,
    c_general,
    theorem2_constant,
    theorem3_constant,
)
from .expsums import ScaleError as SumScaleError
from .expsums import lemma1_error_ratio, s_sieve
from .gauss import PrimitiveRep, check_gauss_bijection, primitive_reps, verify_k1k2
from .roots import FactoredPoly, rho
from .roots import ScaleError as RootScaleError
from .vdc import a_process_check, subset_parity_check

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_SCALE = 3
EXIT_RESUME = 4

RESUME_TOLERANCE = 1e-9

_POLY_TOKEN = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)|\*\s*q", re.ASCII)


class PolyParseError(ValueError):
    pass


def parse_poly(text: str) -> FactoredPoly:
    """Grammar: one or more "(a,b)" linear-factor tokens, optionally
    followed by the literal token "*q" for the extra quadratic factor;
    whitespace-insensitive."""
    pos = 0
    stripped = text.strip()
    linear: list[tuple[int, int]] = []
    has_q = False
    while pos < len(stripped):
        m = _POLY_TOKEN.match(stripped, pos)
        if not m:
            raise PolyParseError(f"cannot parse polynomial at: {stripped[pos:]!r}")
        if m.group(0).startswith("*") or m.group(0) == "*q":
            if has_q:
                raise PolyParseError("duplicate *q token")
            has_q = True
        else:
            linear.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
        while pos < len(stripped) and stripped[pos].isspace():
            pos += 1
    if not linear and not has_q:
        raise PolyParseError("empty polynomial")
    try:
        return FactoredPoly(tuple(linear), has_x2p1=has_q)
    except ValueError as exc:
        raise PolyParseError(str(exc)) from exc


def parse_checkpoints(text: str, x: int) -> list[int]:
    if text == "decades":
        cps = []
        c = 10
        while c < x:
            cps.append(c)
            c *= 10
        cps.append(x)
        return cps
    try:
        cps = sorted({int(tok) for tok in text.split(",") if tok.strip()})
    except ValueError as exc:
        raise PolyParseError(f"bad checkpoint list: {text!r}") from exc
    if not cps or cps[0] < 1 or cps[-1] > x:
        raise PolyParseError("checkpoints must lie in [1, x]")
    return cps


def _fmt(v: float) -> str:
    return format(v, ".17g")


def _default_threads(args_threads: int | None) -> int | None:
    if args_threads is not None:
        return args_threads
    env = os.environ.get("ROOTWAVE_THREADS")
    return int(env) if env else None


def _run_record(command: str, params: dict, series, wall: float, threads: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": params,
        "checkpoints": {
            "x": list(series.checkpoints),
            "count": list(series.counts),
            "re": [v.real for v in series.values],
            "im": [v.imag for v in series.values],
        },
        "wall_time": wall,
        "thread_count": threads,
    }


def cmd_sum(args) -> int:
    try:
        f = parse_poly(args.poly)
        if args.x < 1:
            raise PolyParseError("need --x >= 1")
        cps = parse_checkpoints(args.checkpoints, args.x)
    except PolyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    old = None
    if args.resume:
        try:
            with open(args.resume, "r", encoding="utf-8") as fh:
                old = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read resume file: {exc}", file=sys.stderr)
            return EXIT_RESUME
        if old.get("schema_version") != SCHEMA_VERSION:
            print("error: resume schema version mismatch", file=sys.stderr)
            return EXIT_RESUME
        op = old.get("parameters", {})
        if op.get("poly") != f.describe() or op.get("h") != args.h:
            print("error: resume parameters do not match this run", file=sys.stderr)
            return EXIT_RESUME
        cps = sorted(set(cps) | set(old["checkpoints"]["x"]))
        if cps[-1] > args.x:
            print("error: resume checkpoints exceed --x", file=sys.stderr)
            return EXIT_RESUME

    threads = _default_threads(args.threads)
    t0 = time.perf_counter()
    try:
        series = s_sieve(f, args.x, args.h, checkpoints=cps, threads=threads)
    except (SumScaleError, RootScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    wall = time.perf_counter() - t0

    if old is not None:
        ox = old["checkpoints"]["x"]
        ore = old["checkpoints"]["re"]
        oim = old["checkpoints"]["im"]
        idx = {c: i for i, c in enumerate(series.checkpoints)}
        for c, r, i in zip(ox, ore, oim):
            if c not in idx:
                continue
            v = series.values[idx[c]]
            if abs(v - complex(r, i)) > RESUME_TOLERANCE * max(1.0, abs(v)):
                print(
                    f"error: resume mismatch at x={c}: {v} vs ({r},{i})",
                    file=sys.stderr,
                )
                return EXIT_RESUME

    import numba

    used_threads = threads if threads is not None else numba.get_num_threads()
    record = _run_record(
        "sum",
        {
            "poly": f.describe(),
            "x": args.x,
            "h": args.h,
            "checkpoints": list(series.checkpoints),
            "threads": used_threads,
        },
        series,
        wall,
        used_threads,
    )

    lines = ["x,count,re,im,ratio_re"]
    for c, v, n in zip(series.checkpoints, series.values, series.counts):
        lines.append(
            f"{c},{n},{_fmt(v.real)},{_fmt(v.imag)},{_fmt(v.real / c)}"
        )
    csv_text = "\n".join(lines) + "\n"

    if args.out:
        if args.out.endswith(".json"):
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(record, fh, indent=1, sort_keys=True)
                fh.write("\n")
        else:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return EXIT_OK


def cmd_constant(args) -> int:
    try:
        if args.which == "quadratic":
            if args.a is None or args.c is None:
                raise PolyParseError("quadratic needs --a and --c")
            value, pmax, tail = c_f1_quadratic(args.a, args.c), 0, 0.0
        elif args.which == "general":
            if None in (args.a, args.b, args.c, args.d):
                raise PolyParseError("general needs --a --b --c --d")
            f = FactoredPoly(((args.a, args.b), (args.c, args.d)))
            ep = c_general(f, args.h, delta_max=args.deltamax, pmax=args.pmax)
            value, pmax, tail = ep.value, ep.pmax, ep.tail_bound
        elif args.which == "thm2":
            ep = theorem2_constant(args.pmax)
            value, pmax, tail = ep.value, ep.pmax, ep.tail_bound
        else:
            ep = theorem3_constant(args.pmax)
            value, pmax, tail = ep.value, ep.pmax, ep.tail_bound
    except (PolyParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    doc = json.dumps({"value": value, "pmax": pmax, "tail": tail})
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    return EXIT_OK


def _suite_lemma1(seed: int, budget: int) -> dict:
    qmax = min(max(budget, 10), 5000)
    worst = 0.0
    witness = None
    checked = 0
    limit = calibration.LEMMA1_RATIO_MAX * 1.05
    for q in range(10, qmax + 1):
        fq = factor(q)
        zr = float(math.floor(q**1.5))
        for t in {0, 1, 2, q // 2}:
            for m in (1, 2, 3):
                if math.gcd(m, q) != 1:
                    continue
                r = lemma1_error_ratio(0.0, zr, fq, t, m, 1)
                checked += 1
                if r > worst:
                    worst = r
                    if r > limit:
                        witness = {"q": q, "t": t, "m": m, "ratio": r}
    return {
        "checked": checked,
        "max_ratio": worst,
        "violations": 0 if witness is None else 1,
        "witness": witness,
    }


def _suite_gauss(seed: int, budget: int) -> dict:
    lmax = min(max(budget, 2), 10**5)
    bad = None
    checked = 0
    for l in range(2, lmax + 1):
        ok = check_gauss_bijection(l) and len(primitive_reps(l)) == rho(factor(l))
        checked += 1
        if not ok:
            bad = {"l": l}
            break
    return {
        "checked": checked,
        "max_ratio": 0.0,
        "violations": 0 if bad is None else 1,
        "witness": bad,
    }


def _suite_k1k2(seed: int, budget: int) -> dict:
    rng = random.Random(seed)
    reps: list[PrimitiveRep] = []
    l = 2
    while l <= 10**5 and len(reps) < 4000:
        reps.extend(primitive_reps(l))
        l += 1
    done = 0
    bad = None
    while done < budget:
        rep = rng.choice(reps)
        k = rng.randrange(1, 10**4)
        if math.gcd(k, rep.l) != 1:
            continue
        if not verify_k1k2(k, rep):
            bad = {"k": k, "l": rep.l, "r": rep.r, "s": rep.s}
            break
        done += 1
    return {
        "checked": done,
        "max_ratio": 0.0,
        "violations": 0 if bad is None else 1,
        "witness": bad,
    }


def _suite_weil(seed: int, budget: int) -> dict:
    from .arith import primes_up_to

    rng = random.Random(seed)
    primes = [int(p) for p in primes_up_to(997) if p >= 3]
    worst = 0.0
    bad = None
    done = 0
    while done < budget:
        p = rng.choice(primes)
        num = tuple(rng.randrange(p) for _ in range(rng.randrange(1, 6)))
        den = tuple(rng.randrange(p) for _ in range(rng.randrange(1, 6)))
        if all(c == 0 for c in den):
            continue
        fn = RationalFunctionModP(p, num, den)
        if fn.is_constant:
            continue
        total, bound, ok = weil_check(fn)
        done += 1
        ratio = abs(total) / bound if bound else 0.0
        worst = max(worst, ratio)
        if not ok:
            bad = {"p": p, "num": num, "den": den, "sum": abs(total), "bound": bound}
            break
    return {
        "checked": done,
        "max_ratio": worst,
        "violations": 0 if bad is None else 1,
        "witness": bad,
    }


def _suite_aprocess(seed: int, budget: int) -> dict:
    rng = random.Random(seed)
    worst = 0.0
    bad = None
    done = 0
    # the inequality holds with constant 1; any lhs > rhs is a violation
    limit = 1.0 + 1e-9
    while done < budget:
        q1 = rng.choice([3, 5, 7, 11, 13])
        q2 = rng.randrange(2, 10)
        if math.gcd(q1, q2) != 1:
            continue
        p1 = [cmath.exp(2j * math.pi * rng.random()) for _ in range(q1)]
        p2 = [cmath.exp(2j * math.pi * rng.random()) for _ in range(q2)]
        n_len = rng.randrange(20, 400)
        big_l = rng.randrange(1, max(n_len // q2, 1) + 1)
        lhs, rhs = a_process_check(p1, p2, (rng.randrange(-50, 50), n_len), big_l)
        done += 1
        r = lhs / rhs if rhs > 0 else 0.0
        worst = max(worst, r)
        if r > limit:
            bad = {"q1": q1, "q2": q2, "N": n_len, "L": big_l, "ratio": r}
            break
    return {
        "checked": done,
        "max_ratio": worst,
        "violations": 0 if bad is None else 1,
        "witness": bad,
    }


def _suite_parity(seed: int, budget: int) -> dict:
    import itertools

    bad = None
    checked = 0
    for p in (3, 5, 7, 11, 13):
        for k in (1, 2, 3, 4):
            for h in itertools.product(range(1, p), repeat=k):
                checked += 1
                if not subset_parity_check(p, list(h)):
                    bad = {"p": p, "h": h}
                    break
    return {
        "checked": checked,
        "max_ratio": 0.0,
        "violations": 0 if bad is None else 1,
        "witness": bad,
    }


_SUITES = {
    "lemma1": _suite_lemma1,
    "gauss": _suite_gauss,
    "k1k2": _suite_k1k2,
    "weil": _suite_weil,
    "aprocess": _suite_aprocess,
    "parity": _suite_parity,
}

_DEFAULT_BUDGETS = {
    "lemma1": 2000,
    "gauss": 20000,
    "k1k2": 2000,
    "weil": 300,
    "aprocess": 300,
    "parity": 0,
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    report = {}
    violations = 0
    for name in names:
        budget = args.budget if args.budget is not None else _DEFAULT_BUDGETS[name]
        result = _SUITES[name](args.seed, budget)
        report[name] = result
        violations += result["violations"]
    print(json.dumps(report, indent=1, sort_keys=True, default=str))
    return EXIT_VIOLATION if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rootwave",
        description="Exponential sums over normalized roots of factored "
        "polynomials modulo n.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    ps = sub.add_parser(
        "sum",
        help="compute S(f,x,h) with checkpoints",
        description="Polynomial grammar: one or more (a,b) tokens, each a "
        "linear factor a*n+b with gcd(a,b)=1, optionally followed by *q for "
        "an extra factor n^2+1.  Example: \"(1,0)(1,1)(2,1)\" is "
        "n(n+1)(2n+1); \"(1,0)*q\" is n(n^2+1).",
    )
    ps.add_argument("--poly", required=True)
    ps.add_argument("--x", type=int, required=True)
    ps.add_argument("--h", type=int, default=1)
    ps.add_argument("--checkpoints", default="decades")
    ps.add_argument("--out", default=None)
    ps.add_argument("--threads", type=int, default=None)
    ps.add_argument("--resume", default=None)
    ps.set_defaults(func=cmd_sum)

    pc = sub.add_parser("constant", help="evaluate a main-term constant")
    pc.add_argument(
        "--which", required=True, choices=["quadratic", "general", "thm2", "thm3"]
    )
    for flag in ("a", "b", "c", "d"):
        pc.add_argument(f"--{flag}", type=int, default=None)
    pc.add_argument("--h", type=int, default=1)
    pc.add_argument("--pmax", type=int, default=10**6)
    pc.add_argument("--deltamax", type=int, default=10**4)
    pc.add_argument("--out", default=None)
    pc.set_defaults(func=cmd_constant)

    pv = sub.add_parser("verify", help="run a property-verification suite")
    pv.add_argument(
        "--suite", required=True, choices=sorted(_SUITES) + ["all"]
    )
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--budget", type=int, default=None)
    pv.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SumScaleError, RootScaleError, AnalysisScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE


if __name__ == "__main__":
    sys.exit(main())
