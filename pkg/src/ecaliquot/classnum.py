"""Exact imaginary-quadratic class numbers and Dirichlet L-values at s = 1.

Class numbers come from reduced binary quadratic form enumeration; the
Hurwitz class number H(D) sums h/w over the square divisors of D. The
L-value has two independent routes (forms formula vs. character series)
used to cross-validate each other.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import zeta as hurwitz_zeta

from . import backends
from .arith import primes_in

_SERIES_PERIODS = 8  # complete character periods summed directly
_SERIES_TAIL_TERMS = 40


def _check_discriminant(d: int) -> None:
    if d >= 0:
        raise ValueError("discriminant must be negative")
    if d % 4 not in (0, 1):
        raise ValueError("discriminant must be 0 or 1 mod 4")


def class_number_h(d: int) -> int:
    """Count of reduced primitive forms (a, b, c) of discriminant d < 0."""
    _check_discriminant(d)
    count = 0
    a_max = math.isqrt(-d // 3)
    for a in range(1, a_max + 1):
        for b in range(-a, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if b < 0 and (b == -a or a == c):
                continue  # the b > 0 twin is the canonical representative
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                count += 1
    return count


def roots_of_unity_w(d: int) -> int:
    """Units in the order of discriminant d: 6 for -3, 4 for -4, else 2."""
    _check_discriminant(d)
    if d == -3:
        return 6
    if d == -4:
        return 4
    return 2


def hurwitz_H(D: int) -> Fraction:
    """Hurwitz-Kronecker class number: sum of h(D/f^2)/w(D/f^2) over f^2 | D.

    D = 2, 3 mod 4 gives the empty sum, i.e. 0; 12*H is always integral.
    """
    if D >= 0:
        raise ValueError("D must be negative")
    total = Fraction(0)
    f = 1
    while f * f <= -D:
        if D % (f * f) == 0:
            d = D // (f * f)
            if d % 4 in (0, 1):
                total += Fraction(class_number_h(d), roots_of_unity_w(d))
        f += 1
    return total


def _squarefree(n: int) -> bool:
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def is_fundamental(d: int) -> bool:
    """Negative fundamental discriminant test."""
    if d >= 0:
        return False
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_decomposition(D: int) -> tuple[int, int]:
    """Unique (d, f) with d fundamental and D = d * f^2."""
    _check_discriminant(D)
    for f in range(math.isqrt(-D), 0, -1):
        if D % (f * f) == 0 and is_fundamental(D // (f * f)):
            return D // (f * f), f
    raise ValueError(f"no fundamental decomposition for {D}")


@dataclass(frozen=True)
class LValue:
    d: int
    method: str
    value: float

    def __post_init__(self):
        if self.value <= 0:
            raise ValueError("L(1, chi) must be positive for negative discriminants")


def dirichlet_L1(D: int, method: str = "forms-formula") -> LValue:
    """L(1, chi_D) for a negative discriminant D.

    forms-formula: 2*pi*h(d) / (w(d)*sqrt(-D)) with D = d*f^2 (exact up to
    the final float conversion). series: direct character partial sums over
    complete periods with an Euler-Maclaurin tail, independent of the forms
    route.
    """
    _check_discriminant(D)
    if method == "forms-formula":
        d, _f = fundamental_decomposition(D)
        value = 2.0 * math.pi * class_number_h(d) / (roots_of_unity_w(d) * math.sqrt(-D))
        return LValue(D, method, value)
    if method == "series":
        return LValue(D, method, _l1_series(D))
    raise ValueError(f"unknown method {method!r}")


def _l1_series(D: int) -> float:
    q = -D
    chi = backends.kronecker_table(D, q).astype(np.float64)
    m = _SERIES_PERIODS
    n = np.arange(1, m * q + 1, dtype=np.int64)
    head = float(np.sum(chi[n % q] / n))
    # tail over n > m*q: write n = k*q + r, expand 1/(k*q+r) in powers of r/(k*q);
    # the j = 0 term vanishes since the character sums to zero over a period
    r_over_q = np.arange(q, dtype=np.float64) / q
    tail = 0.0
    power = np.ones(q)
    for j in range(1, _SERIES_TAIL_TERMS + 1):
        power *= r_over_q
        c_j = float(np.dot(chi, power)) / q
        term = (-1) ** j * c_j * float(hurwitz_zeta(j + 1, m))
        tail += term
        if abs(term) < 1e-15 and j > 4:
            break
    return head + tail


def truncated_L1(D: int, y: float) -> LValue:
    """Euler product over primes up to y: prod (1 - chi_D(l)/l)^(-1)."""
    _check_discriminant(D)
    if y < 2:
        return LValue(D, f"truncated({y})", 1.0)
    q = -D
    chi = backends.kronecker_table(D, q)
    primes = np.array(primes_in(2, int(y)).primes, dtype=np.int64)
    chi_p = chi[primes % q].astype(np.float64)
    log_prod = -np.sum(np.log1p(-chi_p / primes))
    return LValue(D, f"truncated({y})", float(np.exp(log_prod)))


@dataclass(frozen=True)
class TruncationReport:
    Q: int
    alpha: float
    y: float
    threshold: float
    rows: tuple[tuple[int, float], ...]  # (D, relative error)
    exceed_count: int
    exceed_bound: float


def gs_truncation_report(Q: int, alpha: float = 1.0) -> TruncationReport:
    """Truncation quality of L(1, chi; y) at y = (log Q)^(8*alpha^2).

    One row per negative fundamental discriminant of absolute value <= Q;
    reports how many rows have relative error above (log Q)^(-alpha), next
    to the reference count Q^(2/alpha). The aggregate is observational.
    """
    if Q < 3:
        raise ValueError("Q must be >= 3")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    y = math.log(Q) ** (8 * alpha * alpha)
    threshold = math.log(Q) ** (-alpha)
    rows = []
    for absd in range(3, Q + 1):
        D = -absd
        if not is_fundamental(D):
            continue
        full = dirichlet_L1(D).value
        trunc = truncated_L1(D, y).value
        rows.append((D, abs(full / trunc - 1.0)))
    exceed = sum(1 for _, err in rows if err > threshold)
    return TruncationReport(Q, alpha, y, threshold, tuple(rows), exceed, Q ** (2.0 / alpha))


def D_of(m: int, n: int) -> int:
    """Chain-step discriminant (m + 1 - n)^2 - 4*m; symmetric in m and n."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    return (m + 1 - n) ** 2 - 4 * m


class HurwitzCache:
    """Exact H(D) values keyed by D, persisted as lines "D<TAB>12H".

    The file is loaded fully at construction; flush() rewrites it
    atomically with records sorted by |D|. A path of None keeps the cache
    purely in memory.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = os.fspath(path) if path is not None else None
        self._table: dict[int, int] = {}
        self._dirty = False
        if self.path is not None and os.path.exists(self.path):
            with open(self.path) as fh:
                for line in fh:
                    if line.strip():
                        key, val = line.split("\t")
                        self._table[int(key)] = int(val)

    def get(self, D: int) -> Fraction:
        twelve_h = self._table.get(D)
        if twelve_h is None:
            value = hurwitz_H(D)
            twelve_h = value.numerator * (12 // value.denominator)
            self._table[D] = twelve_h
            self._dirty = True
        return Fraction(twelve_h, 12)

    def flush(self) -> None:
        if self.path is None or not self._dirty:
            return
        os.makedirs(os.path.dirname(self.path) or ".", exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(self.path) or ".")
        with os.fdopen(fd, "w") as fh:
            for D in sorted(self._table, key=abs):
                fh.write(f"{D}\t{self._table[D]}\n")
        os.replace(tmp, self.path)
        self._dirty = False

    def __len__(self):
        return len(self._table)


def default_cache_path() -> str:
    env = os.environ.get("ECALIQUOT_HCACHE")
    if env:
        return env
    base = os.environ.get("XDG_DATA_HOME", os.path.expanduser("~/.local/share"))
    return os.path.join(base, "ecaliquot", "hurwitz.tsv")
