"""Pure-Python (numpy) implementations of the hot kernels.

Selected at import time when the compiled extension is unavailable; same
signatures and identical outputs as the Cython module.
"""

from __future__ import annotations

import numpy as np

from ..arith import kronecker

# chunk limit for the p x ncurves work matrix in trace_batch
_CHUNK_CELLS = 8_000_000


def legendre_table(p: int) -> np.ndarray:
    """chi[v] = Legendre symbol (v|p) for v in [0, p), as int8."""
    chi = np.full(p, -1, dtype=np.int8)
    v = np.arange(p, dtype=np.int64)
    chi[(v * v) % p] = 1
    chi[0] = 0
    return chi


def trace_batch(p: int, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Frobenius traces a_p for curves y^2 = x^3 + s*x + t over F_p.

    s and t are int64 arrays of residues; singular pairs produce a value
    that callers must mask out themselves.
    """
    s = np.ascontiguousarray(s, dtype=np.int64)
    t = np.ascontiguousarray(t, dtype=np.int64)
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    cube = (x * x % p) * x % p
    out = np.empty(len(s), dtype=np.int64)
    step = max(1, _CHUNK_CELLS // p)
    for i in range(0, len(s), step):
        sl = slice(i, i + step)
        m = (cube[:, None] + x[:, None] * s[None, sl] + t[None, sl]) % p
        out[sl] = -chi[m].sum(axis=0, dtype=np.int64)
    return out


def _singular_pairs(p: int) -> list[tuple[int, int]]:
    # 4s^3 + 27t^2 = 0 mod p: for each s solve the quadratic in t
    sqrts: list[list[int]] = [[] for _ in range(p)]
    for t in range(p):
        sqrts[t * t % p].append(t)
    inv27 = pow(27, p - 2, p)
    pairs = []
    for s in range(p):
        c = (-4 * s * s * s) * inv27 % p
        for t in sqrts[c]:
            pairs.append((s, t))
    return pairs


def order_counts(p: int) -> np.ndarray:
    """counts[N] = number of nonsingular (s, t) in [0,p)^2 with group order N.

    Returned array has length 2*p + 2; orders obey the Hasse bound so all
    mass sits inside the open window around p + 1.
    """
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    cube = (x * x % p) * x % p
    # counts_mat[s, v] = #{x : x^3 + s*x = v mod p}
    counts_mat = np.zeros((p, p), dtype=np.float32)
    for s in range(p):
        f = (cube + s * x) % p
        counts_mat[s] = np.bincount(f, minlength=p)
    # chi_roll[t, v] = chi[(v + t) mod p]; a_p(s,t) = -sum_v counts[s,v]*chi_roll[t,v]
    idx = (np.arange(p)[:, None] + np.arange(p)[None, :]) % p
    chi_roll = chi[idx].astype(np.float32)
    a = -(counts_mat @ chi_roll.T)  # a[s, t], exact in float32 (sums of +-1)
    orders = np.rint(p + 1 - a).astype(np.int64)
    counts = np.bincount(orders.ravel(), minlength=2 * p + 2)
    # remove singular pairs (their "order" is meaningless)
    for s, t in _singular_pairs(p):
        n = p + 1 - int(round(a[s, t]))
        counts[n] -= 1
    return counts.astype(np.int64)


def kronecker_table(d: int, n: int) -> np.ndarray:
    """kronecker(d, i) for i in [0, n), as int8."""
    out = np.empty(n, dtype=np.int8)
    for i in range(n):
        out[i] = kronecker(d, i)
    return out
