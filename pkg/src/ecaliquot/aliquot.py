"""Aliquot cycles of a fixed curve over Q.

Iterates p -> #E_p(F_p) along primes, detects cycles of a given length,
normalizes them to start at their minimal prime, and exposes the counting
functions for cycles, Koblitz twins, and anomalous primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import backends
from .arith import in_hasse_window, is_prime, primes_in
from .curves import CurveZ

_OVERFLOW_LIMIT = (1 << 63) - 1


@dataclass(frozen=True)
class CycleSearchConfig:
    L: int
    X: int
    min_prime: int = 5

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("cycle length must be >= 1")
        if self.X < 0:
            raise ValueError("X must be nonnegative")
        if self.min_prime < 5:
            raise ValueError("min_prime must be >= 5")


@dataclass(frozen=True)
class AliquotCycle:
    primes: tuple[int, ...]

    def __post_init__(self):
        ps = self.primes
        if len(set(ps)) != len(ps):
            raise ValueError("cycle primes must be distinct")
        if ps[0] != min(ps):
            raise ValueError("cycle must be normalized (minimal prime first)")
        for i, p in enumerate(ps):
            if not in_hasse_window(p, ps[(i + 1) % len(ps)]):
                raise ValueError("consecutive primes must respect the Hasse window")


class OrderOracle:
    """Caches reduced group orders per prime; shared across chain searches.

    order() returns None on bad reduction. preload() batches the character
    sums for many curves at one prime through the compiled kernel.
    """

    def __init__(self):
        self._orders: dict[tuple[int, int, int], int] = {}

    def order(self, curve: CurveZ, p: int) -> int | None:
        if (4 * curve.a**3 + 27 * curve.b**2) % p == 0:
            return None
        key = (p, curve.a % p, curve.b % p)
        cached = self._orders.get(key)
        if cached is None:
            a_p = int(
                backends.trace_batch(
                    p,
                    np.array([key[1]], dtype=np.int64),
                    np.array([key[2]], dtype=np.int64),
                )[0]
            )
            cached = p + 1 - a_p
            self._orders[key] = cached
        return cached

    def preload(self, p: int, pairs: list[tuple[int, int]]) -> None:
        todo = [st for st in pairs if (p, st[0], st[1]) not in self._orders]
        if not todo:
            return
        s = np.array([st[0] for st in todo], dtype=np.int64)
        t = np.array([st[1] for st in todo], dtype=np.int64)
        traces = backends.trace_batch(p, s, t)
        for (si, ti), a_p in zip(todo, traces):
            self._orders[(p, si, ti)] = p + 1 - int(a_p)


def aliquot_step(curve: CurveZ, p: int, oracle: OrderOracle | None = None) -> int | None:
    """Group order of the reduction at p, or None on bad reduction."""
    if p <= 3:
        raise ValueError("p must be > 3")
    if p > _OVERFLOW_LIMIT:
        raise OverflowError("chain value exceeds the 63-bit guard")
    if oracle is None:
        oracle = OrderOracle()
    return oracle.order(curve, p)


def find_aliquot_cycles(
    curve: CurveZ, cfg: CycleSearchConfig, oracle: OrderOracle | None = None
) -> list[AliquotCycle]:
    """All normalized aliquot cycles of length cfg.L with first prime <= cfg.X.

    Each chain starts at its minimal prime: any step that drops below the
    start abandons the chain (pruning only; every cycle is still found from
    its minimal member).
    """
    if oracle is None:
        oracle = OrderOracle()
    if cfg.X < cfg.min_prime:
        return []
    cycles = []
    for p1 in primes_in(cfg.min_prime, cfg.X):
        chain = _chase(curve, p1, cfg, oracle)
        if chain is not None:
            cycles.append(AliquotCycle(tuple(chain)))
    return cycles


def _chase(curve: CurveZ, p1: int, cfg: CycleSearchConfig, oracle: OrderOracle) -> list[int] | None:
    chain = [p1]
    for step in range(cfg.L):
        n = aliquot_step(curve, chain[-1], oracle)
        if n is None or not is_prime(n):
            return None
        if step == cfg.L - 1:
            return chain if n == p1 else None
        if n <= p1 or n < cfg.min_prime or n in chain:
            return None  # below the minimal start, or an early repeat
        chain.append(n)
    return None


def pi_E_L(curve: CurveZ, cfg: CycleSearchConfig, oracle: OrderOracle | None = None) -> int:
    """Normalized cycle count: cycles of length cfg.L with p1 <= cfg.X."""
    return len(find_aliquot_cycles(curve, cfg, oracle))


def pi_E_twin(curve: CurveZ, X: int, oracle: OrderOracle | None = None) -> int:
    """Good primes 5 <= p <= X whose group order is prime (Koblitz count)."""
    if X < 5:
        return 0
    if oracle is None:
        oracle = OrderOracle()
    count = 0
    for p in primes_in(5, X):
        n = oracle.order(curve, p)
        if n is not None and is_prime(n):
            count += 1
    return count


def anomalous_primes(curve: CurveZ, X: int, oracle: OrderOracle | None = None) -> list[int]:
    """Good primes p <= X with group order exactly p (a_p = 1)."""
    if X < 5:
        return []
    if oracle is None:
        oracle = OrderOracle()
    out = []
    for p in primes_in(5, X):
        if oracle.order(curve, p) == p:
            out.append(p)
    return out
