import random
from fractions import Fraction

import pytest

from seqcert import int_nth_root, nth_root_decimal, pow_cmp, power_difference


class TestIntNthRoot:
    def test_identity_degree(self):
        assert int_nth_root(87, 1) == 87

    def test_square_boundary(self):
        assert int_nth_root(624, 2) == 24
        assert int_nth_root(625, 2) == 25

    def test_large_cube(self):
        assert int_nth_root(10**18, 3) == 10**6

    def test_small_values(self):
        assert int_nth_root(0, 5) == 0
        assert int_nth_root(1, 5) == 1
        assert int_nth_root(2, 5) == 1

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            int_nth_root(-8, 3)
        with pytest.raises(ValueError):
            int_nth_root(8, 0)

    def test_certificate_on_random_inputs(self):
        rng = random.Random(424242)
        for _ in range(1000):
            x = rng.getrandbits(rng.randint(1, 900))
            n = rng.randint(1, 40)
            r = int_nth_root(x, n)
            assert r**n <= x < (r + 1) ** n

    def test_exact_powers_random(self):
        rng = random.Random(11)
        for _ in range(200):
            base = rng.randint(1, 10**6)
            n = rng.randint(1, 20)
            assert int_nth_root(base**n, n) == base
            assert int_nth_root(base**n + 1, n) == base
            if base**n > 1:
                assert int_nth_root(base**n - 1, n) == base - 1


class TestNthRootDecimal:
    def test_perfect_square(self):
        assert nth_root_decimal(4, 2, 5) == "2.00000"

    def test_sqrt2(self):
        assert nth_root_decimal(2, 2, 5) == "1.41421"

    def test_sixth_root(self):
        assert nth_root_decimal(1359, 6, 6) == "3.328153"

    def test_one_ulp_against_doubled_precision(self):
        rng = random.Random(909)
        for _ in range(200):
            x = rng.randint(1, 10**12)
            n = rng.randint(1, 12)
            digits = rng.randint(1, 12)
            low = Fraction(nth_root_decimal(x, n, digits))
            high = Fraction(nth_root_decimal(x, n, 2 * digits))
            assert abs(low - high) <= Fraction(1, 10**digits)

    def test_domain(self):
        with pytest.raises(ValueError):
            nth_root_decimal(0, 2, 5)


class TestPowCmp:
    def test_listed_comparisons(self):
        assert pow_cmp(1, 2, 7, 1) == -1
        assert power_difference(1, 2, 7, 1) == -6
        assert pow_cmp(7, 3, 25, 2) == -1
        assert power_difference(7, 3, 25, 2) == -282
        assert pow_cmp(25, 4, 87, 3) == -1
        assert power_difference(25, 4, 87, 3) == 390625 - 658503
        assert pow_cmp(87, 5, 329, 4) == -1
        assert power_difference(87, 5, 329, 4) == -6731904874

    def test_equality_survives_prefilter(self):
        assert pow_cmp(4, 3, 8, 2) == 0
        assert pow_cmp(2, 10, 32, 2) == 0
        assert pow_cmp(1, 5, 1, 9) == 0

    def test_trivial_exponents(self):
        assert pow_cmp(5, 0, 3, 1) == -1
        assert pow_cmp(5, 1, 3, 0) == 1
        assert pow_cmp(9, 0, 2, 0) == 0

    def test_agrees_with_direct_powering(self):
        rng = random.Random(31337)
        for _ in range(500):
            a, b = rng.randint(1, 500), rng.randint(1, 500)
            p, q_ = rng.randint(0, 60), rng.randint(0, 60)
            direct = (a**p > b**q_) - (a**p < b**q_)
            assert pow_cmp(a, p, b, q_) == direct

    def test_prefilter_lopsided(self):
        # forces the bit-length shortcut on both sides
        assert pow_cmp(2**40, 100, 3, 2) == 1
        assert pow_cmp(3, 2, 2**40, 100) == -1
