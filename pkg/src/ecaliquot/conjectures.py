"""Reference densities and constants for the cycle-count conjectures.

The square-root density sqrt(X)/(log X)^L, the refined integral form, and
the universal Euler-product constant for amicable pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from scipy.integrate import quad

from .arith import primes_in


def ss_density(X: float, L: int) -> float:
    """sqrt(X) / (log X)^L."""
    if X < 2:
        raise ValueError("X must be >= 2")
    if L < 1:
        raise ValueError("L must be >= 1")
    return math.sqrt(X) / math.log(X) ** L


def jones_integral(X: float, L: int) -> float:
    """Integral from 2 to X of dt / (2*sqrt(t)*(log t)^L), to 1e-10 absolute."""
    if X < 2:
        raise ValueError("X must be >= 2")
    if L < 1:
        raise ValueError("L must be >= 1")
    if X == 2:
        return 0.0
    value, _err = quad(
        lambda t: 1.0 / (2.0 * math.sqrt(t) * math.log(t) ** L),
        2.0,
        X,
        epsabs=1e-12,
        epsrel=1e-12,
        limit=200,
    )
    return value


def euler_factor(ell: int) -> Fraction:
    """Exact rational local factor l^2(l^4-2l^3-2l^2+3l+3)/((l^2-1)(l-1))^2."""
    num = ell * ell * (ell**4 - 2 * ell**3 - 2 * ell**2 + 3 * ell + 3)
    den = ((ell * ell - 1) * (ell - 1)) ** 2
    return Fraction(num, den)


@dataclass(frozen=True)
class EulerProductState:
    cutoff: int
    partial_product: float
    last_factor: float

    def __post_init__(self):
        if self.partial_product <= 0:
            raise ValueError("partial product must stay positive")


def jones_C2(cutoff: int) -> EulerProductState:
    """Partial Euler product for the amicable-pair constant, primes <= cutoff.

    Accumulated at 30 decimal digits; each factor is 1 + O(1/l^2) so the
    Cauchy tail shrinks quadratically in the cutoff.
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    with mpmath.workdps(30):
        product = mpmath.mpf(8) / (3 * mpmath.pi**2)
        last = 1.0
        for ell in primes_in(2, cutoff):
            f = euler_factor(ell)
            product *= mpmath.mpf(f.numerator) / f.denominator
            last = f.numerator / f.denominator
        value = float(product)
    return EulerProductState(cutoff, value, float(last))
