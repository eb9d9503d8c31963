"""The Gauss correspondence between roots of v^2 + 1 = 0 (mod l) and
primitive representations l = r^2 + s^2, and the exact mod-1 identity that
splits kbar*v/l into three fractions with denominators k1*s, k*s*l, and k2.

All identity checks here are done in exact rational arithmetic; no floating
point is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import coprime_part_split, factor
from .roots import FactoredPoly, roots_mod_n


class SideConditionError(ValueError):
    """A gcd side condition required by the identity does not hold."""


@dataclass(frozen=True)
class ModOneRational:
    """A reduced fraction interpreted modulo 1, normalized to [0, 1)."""

    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den <= 0:
            raise ValueError("denominator must be positive")
        g = math.gcd(self.num, self.den)
        num = (self.num // g) % (self.den // g)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, f: Fraction) -> "ModOneRational":
        return cls(f.numerator % f.denominator, f.denominator)

    def __add__(self, other: "ModOneRational") -> "ModOneRational":
        return ModOneRational.from_fraction(
            Fraction(self.num, self.den) + Fraction(other.num, other.den)
        )


@dataclass(frozen=True)
class PrimitiveRep:
    """An ordered primitive representation l = r^2 + s^2, r, s > 0 coprime."""

    l: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.r <= 0 or self.s <= 0 or self.r * self.r + self.s * self.s != self.l:
            raise ValueError("not a representation")
        if math.gcd(self.r, self.s) != 1:
            raise ValueError("representation is not primitive")


def primitive_reps(l: int) -> list[PrimitiveRep]:
    """All ordered (r, s) with r^2 + s^2 = l, r, s > 0, gcd(r, s) = 1.

    Brute scan over r <= sqrt(l); the count always equals the number of
    roots of X^2 + 1 modulo l.
    """
    if l < 2:
        raise ValueError("need l >= 2")
    out = []
    r = 1
    while r * r < l:
        s2 = l - r * r
        s = math.isqrt(s2)
        if s * s == s2 and s > 0 and math.gcd(r, s) == 1:
            out.append(PrimitiveRep(l, r, s))
        r += 1
    return out


def rep_to_root(rep: PrimitiveRep) -> int:
    """The root v of v^2 + 1 = 0 (mod l) corresponding to (r, s), via
    v/l = sbar/r - s/(r*l) (mod 1), i.e. v = (l*(sbar mod r) - s)/r mod l.

    The r = 1 convention is sbar mod 1 = 0 (the unique inverse modulo 1).
    """
    l, r, s = rep.l, rep.r, rep.s
    sbar = pow(s, -1, r) if r > 1 else 0
    v = (l * sbar - s) // r % l
    if (v * v + 1) % l != 0:
        raise AssertionError(f"correspondence formula failed for {rep}")
    return v


_X2P1 = FactoredPoly((), has_x2p1=True)


def check_gauss_bijection(l: int) -> bool:
    """True iff rep -> root is injective and its image is exactly the set of
    roots of v^2 + 1 modulo l (vacuously true when both sides are empty).
    """
    reps = primitive_reps(l)
    image = {rep_to_root(rep) for rep in reps}
    if len(image) != len(reps):
        return False
    return image == set(roots_mod_n(_X2P1, factor(l)).residues)


def verify_k1k2(k: int, rep: PrimitiveRep) -> bool:
    """Exact check of the three-term splitting, for k = k1*k2 with
    k2 = (k, r^infinity):

        kbar*v/l = -r*inv(k2*l, k1*s)/(k1*s) + r/(k*s*l)
                   - r*inv(k1*s*l, k2)/k2  (mod 1).
    """
    l, r, s = rep.l, rep.r, rep.s
    if math.gcd(k, l) != 1:
        raise SideConditionError(f"need gcd(k, l) = 1, got k={k}, l={l}")
    k1, k2, _ = coprime_part_split(k, r)
    v = rep_to_root(rep)
    kbar = pow(k, -1, l)
    lhs = ModOneRational(kbar * v, l)

    k1s = k1 * s
    rhs = ModOneRational(r, k * s * l)
    if k1s > 1:
        inv1 = pow(k2 * l % k1s, -1, k1s)
        rhs = rhs + ModOneRational(-r * inv1, k1s)
    if k2 > 1:
        inv2 = pow(k1 * s * l % k2, -1, k2)
        rhs = rhs + ModOneRational(-r * inv2, k2)
    return lhs == rhs


def inversion_formula_holds(u: int, v: int) -> bool:
    """Exact check of ubar/v + vbar/u = 1/(uv) (mod 1) for coprime u, v."""
    if math.gcd(u, v) != 1:
        raise SideConditionError("inversion formula needs gcd(u, v) = 1")
    lhs = ModOneRational(0, 1)
    if v > 1:
        lhs = lhs + ModOneRational(pow(u, -1, v), v)
    if u > 1:
        lhs = lhs + ModOneRational(pow(v, -1, u), u)
    return lhs == ModOneRational(1, u * v)
