import math

import numpy as np
import pytest

from ecaliquot.arith import (
    hasse_primes,
    in_hasse_window,
    is_prime,
    kronecker,
    primes_in,
    quadratic_char_sum,
)


def trial_division_prime(n):
    if n < 2:
        return False
    for k in range(2, math.isqrt(n) + 1):
        if n % k == 0:
            return False
    return True


class TestKronecker:
    def test_examples(self):
        assert kronecker(-3, 7) == 1  # -3 = 4 = 2^2 mod 7
        assert kronecker(-3, 2) == -1  # -3 = 5 mod 8

    def test_n_one_is_empty_product(self):
        for d in range(-50, 50):
            assert kronecker(d, 1) == 1

    def test_n_zero(self):
        assert kronecker(1, 0) == 1
        assert kronecker(-1, 0) == 1
        assert kronecker(5, 0) == 0

    def test_euler_criterion(self):
        # (d|p) = d^((p-1)/2) mod p for odd primes p not dividing d
        for p in primes_in(3, 200):
            for d in range(-200, 201):
                if d % p == 0:
                    assert kronecker(d, p) == 0
                    continue
                e = pow(d % p, (p - 1) // 2, p)
                assert kronecker(d, p) == (1 if e == 1 else -1)

    def test_completely_multiplicative(self):
        for d in (-15, -4, -3, 5, 12, 21):
            for m in range(1, 40):
                for n in range(1, 40):
                    assert kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n)

    def test_two_column_multiplicativity(self):
        # (d|2k) = (d|2)(d|k) for odd k cross-checks the (d|2) table
        for k in range(1, 60, 2):
            assert kronecker(-3, 2 * k) == kronecker(-3, 2) * kronecker(-3, k)

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            kronecker(5, -1)


class TestIsPrime:
    def test_small(self):
        assert not is_prime(0)
        assert not is_prime(1)
        assert is_prime(2)
        assert is_prime(1622471)

    def test_matches_trial_division(self):
        for n in range(20000):
            assert is_prime(n) == trial_division_prime(n), n

    def test_large_known(self):
        # Mersenne prime 2^61 - 1 and its neighbour
        assert is_prime((1 << 61) - 1)
        assert not is_prime((1 << 61) + 1)


class TestPrimesIn:
    def test_examples(self):
        assert primes_in(2, 10).primes == (2, 3, 5, 7)
        assert primes_in(90, 96).primes == ()
        ps = primes_in(1000, 1100).primes
        assert len(ps) == 16
        assert ps[0] == 1009

    def test_matches_trial_division(self):
        expected = tuple(n for n in range(2, 20000) if trial_division_prime(n))
        assert primes_in(2, 19999).primes == expected

    def test_against_independent_sieve_at_1e6(self):
        limit = 10**6
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p :: p] = False
        expected = tuple(int(x) for x in np.flatnonzero(flags))
        assert primes_in(2, limit).primes == expected

    def test_segment_boundaries(self):
        from ecaliquot.arith import SIEVE_BLOCK

        lo = SIEVE_BLOCK - 50
        hi = SIEVE_BLOCK + 50
        expected = tuple(n for n in range(lo, hi + 1) if trial_division_prime(n))
        assert primes_in(lo, hi).primes == expected

    def test_ascending_and_prime(self):
        ps = primes_in(100, 1000).primes
        assert list(ps) == sorted(set(ps))
        assert all(is_prime(p) for p in ps)

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            primes_in(10, 5)


class TestHassePrimes:
    def test_p13(self):
        assert hasse_primes(13).primes == (7, 11, 13, 17, 19)

    def test_p5(self):
        # (q - 6)^2 < 20 admits q in {2, 3, 5, 7} among primes
        assert hasse_primes(5).primes == tuple(
            q for q in (2, 3, 5, 7, 11) if (q - 6) ** 2 < 20
        )

    def test_window_is_integer_exact(self):
        for p in primes_in(5, 500):
            for q in hasse_primes(p):
                assert (q - p - 1) ** 2 < 4 * p
                assert abs(q - p) <= 2 * math.isqrt(p) + 2

    def test_membership_symmetry_scan(self):
        # (q-p-1)^2 < 4p iff (p-q-1)^2 < 4q (both say D(p,q) < 0, and D is
        # symmetric); the exhaustive scan confirms no counterexample exists
        for p in primes_in(5, 100):
            for q in primes_in(2, 2 * p):
                assert in_hasse_window(p, q) == in_hasse_window(q, p)

    def test_rejects_small_or_composite(self):
        with pytest.raises(ValueError):
            hasse_primes(3)
        with pytest.raises(ValueError):
            hasse_primes(15)


class TestQuadraticCharSum:
    def brute(self, a, b, c, ell):
        return sum(kronecker(a * t * t + b * t + c, ell) for t in range(ell))

    def test_examples(self):
        assert quadratic_char_sum(1, 0, 0, 7) == 6
        assert quadratic_char_sum(1, 0, 1, 5) == self.brute(1, 0, 1, 5) == -1

    @pytest.mark.parametrize("ell", [3, 5, 7, 11, 13])
    def test_matches_brute_force(self, ell):
        for a in range(1, ell):
            for b in range(ell):
                for c in range(ell):
                    assert quadratic_char_sum(a, b, c, ell) == self.brute(a, b, c, ell)

    @pytest.mark.parametrize("ell", [3, 5, 7, 11])
    def test_specialization_is_minus_one(self, ell):
        # (1, 4p, 0) with ell not dividing 2p: discriminant 16p^2 nonzero mod ell
        p = 13
        assert quadratic_char_sum(1, 4 * p, 0, ell) == -1
        assert self.brute(1, 4 * p, 0, ell) == -1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            quadratic_char_sum(7, 0, 1, 7)
        with pytest.raises(ValueError):
            quadratic_char_sum(1, 0, 1, 9)
