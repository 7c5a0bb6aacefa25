"""Elliptic curves y^2 = x^3 + a*x + b over prime fields and over Z.

Reduction, naive point counting via quadratic-character sums, automorphism
orders, twist orbits, and isomorphism-class enumeration. Primes 2 and 3
are excluded throughout: short Weierstrass arithmetic degenerates there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backends
from .arith import is_prime

COEFF_BOUND = 1 << 31  # family bounds |a|, |b| kept within signed 64-bit work


@dataclass(frozen=True)
class CurveZ:
    """Integer Weierstrass coefficients with nonzero discriminant."""

    a: int
    b: int

    def __post_init__(self):
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ValueError(f"singular curve a={self.a}, b={self.b}")
        if abs(self.a) > COEFF_BOUND or abs(self.b) > COEFF_BOUND:
            raise ValueError("coefficient exceeds the 2^31 family bound")


@dataclass(frozen=True)
class CurveModP:
    """Nonsingular curve y^2 = x^3 + s*x + t over F_p, p > 3."""

    p: int
    s: int
    t: int

    def __post_init__(self):
        if self.p <= 3 or not is_prime(self.p):
            raise ValueError("p must be a prime > 3")
        if not (0 <= self.s < self.p and 0 <= self.t < self.p):
            raise ValueError("coefficients must be reduced residues")
        if (4 * self.s**3 + 27 * self.t**2) % self.p == 0:
            raise ValueError(f"singular reduction mod {self.p}")


@dataclass(frozen=True)
class TraceRecord:
    curve: CurveModP
    a_p: int
    group_order: int

    def __post_init__(self):
        if self.a_p**2 > 4 * self.curve.p:
            raise ValueError("trace violates the Hasse bound")


def reduce_curve(curve: CurveZ, p: int) -> CurveModP | None:
    """Reduction mod p; None signals bad reduction (p divides the discriminant)."""
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime > 3")
    if (4 * curve.a**3 + 27 * curve.b**2) % p == 0:
        return None
    return CurveModP(p, curve.a % p, curve.b % p)


def trace_of_frobenius(curve: CurveModP) -> TraceRecord:
    """a_p by the complete character sum; group order p + 1 - a_p."""
    a_p = int(
        backends.trace_batch(
            curve.p,
            np.array([curve.s], dtype=np.int64),
            np.array([curve.t], dtype=np.int64),
        )[0]
    )
    return TraceRecord(curve, a_p, curve.p + 1 - a_p)


def aut_order(curve: CurveModP) -> int:
    """Order of the automorphism group: 6, 4 or 2."""
    if curve.s == 0 and curve.p % 3 == 1:
        return 6
    if curve.t == 0 and curve.p % 4 == 1:
        return 4
    return 2


def twist_orbit(curve: CurveModP) -> set[CurveModP]:
    """All curves (s*u^4, t*u^6) for u in F_p*; the F_p-isomorphism class."""
    p = curve.p
    orbit = set()
    for u in range(1, p):
        u2 = u * u % p
        u4 = u2 * u2 % p
        u6 = u4 * u2 % p
        orbit.add(CurveModP(p, curve.s * u4 % p, curve.t * u6 % p))
    return orbit


def isomorphism_class_reps(p: int) -> list[tuple[CurveModP, int]]:
    """One representative per twist orbit, with multiplicity (p-1)/#Aut.

    Representatives partition the nonsingular (s, t) pairs; the sum of the
    multiplicities is the number of nonsingular pairs.
    """
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime > 3")
    seen = [[False] * p for _ in range(p)]
    reps = []
    for s in range(p):
        for t in range(p):
            if seen[s][t] or (4 * s * s * s + 27 * t * t) % p == 0:
                continue
            rep = CurveModP(p, s, t)
            for member in twist_orbit(rep):
                seen[member.s][member.t] = True
            reps.append((rep, (p - 1) // aut_order(rep)))
    return reps


def count_points_naive(curve: CurveModP) -> int:
    """Independent O(p) enumeration: 1 + sum over x of (1 + chi(x^3+sx+t))."""
    p, s, t = curve.p, curve.s, curve.t
    chi = backends.legendre_table(p)
    total = 1
    for x in range(p):
        total += 1 + int(chi[(x * x * x + s * x + t) % p])
    return total
