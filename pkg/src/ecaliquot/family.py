"""The two-parameter curve family C(A,B) and its class-number side.

Direct averages of the cycle-counting function over the family, the
main-term chain sum of Hurwitz class numbers, the exact pair-count
identity tying brute-force curve counts to (p-1)*H(D(p,N)), the twist-lift
counter R(P,S,T), and the short-interval class-number sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import get_context

import numpy as np

from . import backends
from .aliquot import CycleSearchConfig, OrderOracle, find_aliquot_cycles
from .arith import hasse_primes, in_hasse_window, is_prime, primes_in
from .classnum import D_of, HurwitzCache
from .conjectures import ss_density
from .curves import CurveZ


@dataclass(frozen=True)
class FamilySpec:
    A: int
    B: int
    X: int
    L: int

    def __post_init__(self):
        if self.A < 1 or self.B < 1:
            raise ValueError("A and B must be >= 1")
        if self.X < 5 or self.L < 1:
            raise ValueError("need X >= 5 and L >= 1")


@dataclass(frozen=True)
class FamilyReport:
    family_size: int
    direct_average: Fraction
    main_term: float
    ss_density: float
    ratio_direct_main: float
    ratio_direct_ss: float

    def to_dict(self) -> dict:
        return {
            "family_size": self.family_size,
            "direct_average_num": self.direct_average.numerator,
            "direct_average_den": self.direct_average.denominator,
            "main_term": self.main_term,
            "ss_density": self.ss_density,
            "ratio_direct_main": self.ratio_direct_main,
            "ratio_direct_ss": self.ratio_direct_ss,
        }


def family_size(A: int, B: int) -> int:
    """#{(a,b) : |a| <= A, |b| <= B, 4a^3 + 27b^2 != 0}, exactly.

    Singular pairs are exactly (a, b) = (-3m^2, +-2m^3), so the count is
    (2A+1)(2B+1) minus 1 (the origin) minus 2 per m >= 1 in range.
    """
    if A < 1 or B < 1:
        raise ValueError("A and B must be >= 1")
    m = 1
    singular = 1
    while 3 * m * m <= A and 2 * m * m * m <= B:
        singular += 2
        m += 1
    return (2 * A + 1) * (2 * B + 1) - singular


def family_curves(A: int, B: int) -> list[CurveZ]:
    out = []
    for a in range(-A, A + 1):
        for b in range(-B, B + 1):
            if 4 * a**3 + 27 * b**2 != 0:
                out.append(CurveZ(a, b))
    return out


def _prefetch_orders(curves: list[CurveZ], X: int, oracle: OrderOracle) -> None:
    # chains starting at p1 <= X can visit primes up to the top of the window
    hi = X + 2 * math.isqrt(X) + 2
    for p in primes_in(5, hi):
        pairs = {(c.a % p, c.b % p) for c in curves if (4 * c.a**3 + 27 * c.b**2) % p != 0}
        oracle.preload(p, list(pairs))


_WORKER_STATE: dict = {}


def _count_cycles_chunk(args):
    lo, hi = args
    curves = _WORKER_STATE["curves"]
    cfg = _WORKER_STATE["cfg"]
    oracle = _WORKER_STATE["oracle"]
    return [len(find_aliquot_cycles(c, cfg, oracle)) for c in curves[lo:hi]]


def direct_average(spec: FamilySpec, jobs: int = 1) -> Fraction:
    """Exact rational mean of the cycle count over all family members."""
    curves = family_curves(spec.A, spec.B)
    cfg = CycleSearchConfig(spec.L, spec.X)
    oracle = OrderOracle()
    _prefetch_orders(curves, spec.X, oracle)
    if jobs <= 1:
        counts = [len(find_aliquot_cycles(c, cfg, oracle)) for c in curves]
    else:
        _WORKER_STATE.update(curves=curves, cfg=cfg, oracle=oracle)
        chunk = (len(curves) + 4 * jobs - 1) // (4 * jobs)
        spans = [(i, i + chunk) for i in range(0, len(curves), chunk)]
        ctx = get_context("fork")  # workers inherit the prefetched oracle
        with ctx.Pool(jobs) as pool:
            counts = [n for part in pool.map(_count_cycles_chunk, spans) for n in part]
        _WORKER_STATE.clear()
    return Fraction(sum(counts), len(curves))


def _chain_primes(p: int) -> list[int]:
    return [q for q in hasse_primes(p) if q > 3]


def main_term_sum(X: int, L: int, cache: HurwitzCache | None = None) -> float:
    """Sum over Hasse chains (p1 <= X) of prod_j H(D(p_j, p_{j+1})) / p_j.

    The wrap-around step j = L pairs p_L with p_1; its discriminant can be
    nonnegative or 2, 3 mod 4, in which case the term is zero.
    """
    if X < 5 or L < 1:
        raise ValueError("need X >= 5 and L >= 1")
    if cache is None:
        cache = HurwitzCache()
    total = 0.0

    def h_or_zero(m: int, n: int) -> float:
        D = D_of(m, n)
        if D >= 0 or D % 4 in (2, 3):
            return 0.0
        return float(cache.get(D))

    def extend(chain: list[int]) -> None:
        nonlocal total
        if len(chain) == L:
            term = 1.0
            for j in range(L):
                term *= h_or_zero(chain[j], chain[(j + 1) % L]) / chain[j]
            total += term
            return
        for q in _chain_primes(chain[-1]):
            chain.append(q)
            extend(chain)
            chain.pop()

    for p1 in primes_in(5, X):
        extend([p1])
    return total


def deuring_pair_count(p: int, N: int, nonzero_st_only: bool = False) -> int:
    """Brute-force #{nonsingular (s,t) mod p : group order = N}.

    Equals (p-1)*H(D(p,N)) exactly for the nonsingular convention. With
    nonzero_st_only the pairs with s*t = 0 are excluded, reproducing the
    O(p) discrepancy of the all-residue bookkeeping.
    """
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime > 3")
    if not in_hasse_window(p, N):
        raise ValueError("N must lie in the open Hasse window of p")
    if not nonzero_st_only:
        return int(backends.order_counts(p)[N])
    count = 0
    s_arr, t_arr = [], []
    for s in range(1, p):
        for t in range(1, p):
            if (4 * s * s * s + 27 * t * t) % p != 0:
                s_arr.append(s)
                t_arr.append(t)
    traces = backends.trace_batch(p, np.array(s_arr, dtype=np.int64), np.array(t_arr, dtype=np.int64))
    count = int(np.count_nonzero(p + 1 - traces == N))
    return count


def deuring_identity_holds(p: int, cache: HurwitzCache | None = None) -> list[tuple[int, int, Fraction]]:
    """Mismatches (N, brute count, (p-1)*H) for one prime; empty means exact."""
    if cache is None:
        cache = HurwitzCache()
    counts = backends.order_counts(p)
    mismatches = []
    s = math.isqrt(4 * p)
    for N in range(p + 1 - s - 1, p + 2 + s):
        if not in_hasse_window(p, N):
            continue
        expected = (p - 1) * cache.get(D_of(p, N))
        if expected.denominator != 1 or counts[N] != expected:
            mismatches.append((N, int(counts[N]), expected))
    return mismatches


def r_count(
    P: tuple[int, ...],
    S: tuple[int, ...],
    T: tuple[int, ...],
    A: int,
    B: int,
) -> tuple[int, float]:
    """Count |a| <= A, |b| <= B lifting to the twist orbit of (s_i, t_i) at each p_i.

    Returns the exact count together with the reference main-term value
    4*A*B / (2^L * p_1*...*p_L).
    """
    L = len(P)
    if not (len(S) == len(T) == L):
        raise ValueError("P, S, T must have equal length")
    if len(set(P)) != L:
        raise ValueError("the primes p_i must be distinct")
    mask_total = np.ones((2 * A + 1, 2 * B + 1), dtype=bool)
    a_vals = np.arange(-A, A + 1)
    b_vals = np.arange(-B, B + 1)
    for p, s, t in zip(P, S, T):
        if s % p == 0 or t % p == 0:
            raise ValueError("s_i and t_i must be nonzero residues")
        allowed = np.zeros((p, p), dtype=bool)
        for u in range(1, p):
            u2 = u * u % p
            u4 = u2 * u2 % p
            u6 = u4 * u2 % p
            allowed[s * u4 % p, t * u6 % p] = True
        mask_total &= allowed[np.ix_(a_vals % p, b_vals % p)]
    reference = 4.0 * A * B / (2**L * math.prod(P))
    return int(mask_total.sum()), reference


def prop33_sum(
    p: int, r: int, cache: HurwitzCache | None = None
) -> tuple[float, float]:
    """Sum over window primes q (q != p, r) of H(D(p,q)) * H(D(r,q)).

    Returns (sum, sum * log(p) / p^(3/2)). Requires r = p + O(sqrt p); the
    admissibility guard is (r - p - 1)^2 < 9p.
    """
    if (r - p - 1) ** 2 >= 9 * p:
        raise ValueError("r is too far from p")
    if cache is None:
        cache = HurwitzCache()
    total = 0.0
    for q in _chain_primes(p):
        if q == p or q == r:
            continue
        D1, D2 = D_of(p, q), D_of(r, q)
        if D1 >= 0 or D2 >= 0:
            continue
        total += float(cache.get(D1)) * float(cache.get(D2))
    return total, total * math.log(p) / p**1.5


def prop34_sum(p: int, cache: HurwitzCache | None = None) -> tuple[float, float]:
    """Sum over window primes q != p of H(D(p,q)); plus sum * log(p) / p."""
    if cache is None:
        cache = HurwitzCache()
    total = 0.0
    for q in _chain_primes(p):
        if q == p:
            continue
        total += float(cache.get(D_of(p, q)))
    return total, total * math.log(p) / p


def family_report(spec: FamilySpec, jobs: int = 1, cache: HurwitzCache | None = None) -> FamilyReport:
    """Direct average next to the main-term chain sum and reference density."""
    size = family_size(spec.A, spec.B)
    avg = direct_average(spec, jobs=jobs)
    main = main_term_sum(spec.X, spec.L, cache=cache)
    density = ss_density(spec.X, spec.L)
    ratio_main = float(avg) / main if main > 0 else 0.0
    ratio_ss = float(avg) / density if density > 0 else 0.0
    return FamilyReport(size, avg, main, density, ratio_main, ratio_ss)
