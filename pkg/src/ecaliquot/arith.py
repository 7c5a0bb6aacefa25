"""Integer and modular arithmetic primitives.

Kronecker symbol, deterministic 64-bit primality, segmented prime sieving,
Hasse-interval predicates, and complete quadratic character sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10^24
# (covers the full 64-bit range with room to spare).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Segment size for the segmented sieve; one block of flags stays cache resident.
SIEVE_BLOCK = 1 << 18


def kronecker(d: int, n: int) -> int:
    """Full Kronecker symbol (d|n) for n >= 0, including n = 0, 1, 2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1 if d in (1, -1) else 0
    if d % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    # pull out the even part of n; (d|2) = 0, 1, -1 for d even, d = +-1 mod 8, d = +-3 mod 8
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos % 2 == 1 and d % 8 in (3, 5):
        result = -result
    # n is now odd and positive: Jacobi symbol (d|n), quadratic reciprocity loop
    a = d % n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Exact primality for 0 <= n < 2**64 (deterministic Miller-Rabin)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeList:
    """Ascending primes of the closed interval [lo, hi]."""

    lo: int
    hi: int
    primes: tuple[int, ...] = field(default_factory=tuple)

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)


def _small_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


def primes_in(lo: int, hi: int) -> PrimeList:
    """Segmented sieve over [lo, hi]; exactly the primes, ascending."""
    if not 2 <= lo <= hi:
        raise ValueError("need 2 <= lo <= hi")
    base = _small_sieve(math.isqrt(hi))
    out: list[int] = []
    low = lo
    while low <= hi:
        high = min(low + SIEVE_BLOCK, hi + 1)  # exclusive
        flags = np.ones(high - low, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((low + p - 1) // p) * p)
            if start < high:
                flags[start - low :: p] = False
        for q in np.flatnonzero(flags):
            out.append(low + int(q))
        low = high
    return PrimeList(lo, hi, tuple(out))


def in_hasse_window(p: int, q: int) -> bool:
    """q lies in the open interval (p+1-2*sqrt(p), p+1+2*sqrt(p)), exactly."""
    return (q - p - 1) ** 2 < 4 * p


def hasse_primes(p: int) -> PrimeList:
    """Primes q with (q - p - 1)**2 < 4*p; includes p itself."""
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime > 3")
    s = math.isqrt(4 * p)
    lo = max(2, p + 1 - s - 1)
    hi = p + 1 + s + 1
    qs = [q for q in primes_in(lo, hi) if in_hasse_window(p, q)]
    return PrimeList(lo, hi, tuple(qs))


def quadratic_char_sum(a: int, b: int, c: int, ell: int) -> int:
    """Closed form for sum over t mod ell of ((a*t^2 + b*t + c)|ell).

    Equals (a|ell)*(ell-1) when ell divides b^2 - 4*a*c, and -(a|ell)
    otherwise. Requires ell an odd prime not dividing a.
    """
    if ell < 3 or not is_prime(ell):
        raise ValueError("ell must be an odd prime")
    if a % ell == 0:
        raise ValueError("a must be nonzero mod ell")
    chi_a = kronecker(a, ell)
    if (b * b - 4 * a * c) % ell == 0:
        return chi_a * (ell - 1)
    return -chi_a
