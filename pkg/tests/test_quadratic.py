import random
from fractions import Fraction

import mpmath as mp
import pytest

from seqcert import SQRT2, QuadNumber


def q(a, b=0):
    return QuadNumber(Fraction(a), Fraction(b))


class TestArithmetic:
    def test_conjugate_identity(self):
        assert q(3, 2) * q(3, -2) == 1

    def test_inverse_of_silver_square(self):
        assert q(3, 2).inverse() == q(3, -2)

    def test_square_of_one_plus_sqrt2(self):
        assert (q(1, 1) * q(1, 1)) == q(3, 2)

    def test_mul_rule(self):
        # (a+b√2)(c+d√2) = (ac+2bd) + (ad+bc)√2
        x, y = q(2, 5), q(-3, 7)
        assert x * y == q(2 * -3 + 2 * 5 * 7, 2 * 7 + 5 * -3)

    def test_division(self):
        assert q(1) / q(3, 2) == q(3, -2)
        with pytest.raises(ZeroDivisionError):
            q(0).inverse()

    def test_pow(self):
        assert q(1, 1) ** 0 == 1
        assert q(1, 1) ** 2 == q(3, 2)
        assert q(3, 2) ** 3 == q(99, 70)
        assert q(3, 2) ** -1 == q(3, -2)

    def test_rational_coercion(self):
        assert q(1, 1) + 1 == q(2, 1)
        assert 2 * q(1, 1) == q(2, 2)
        assert 1 - q(0, 1) == q(1, -1)
        assert Fraction(1, 2) + q(0, 1) == q(Fraction(1, 2), 1)

    def test_immutability_and_hash(self):
        x = q(1, 2)
        with pytest.raises(AttributeError):
            x.a = Fraction(5)
        assert hash(q(1, 2)) == hash(q(1, 2))


class TestSign:
    def test_positive_conjugate(self):
        assert q(3, -2).sign() == 1  # 9 > 8

    def test_negative(self):
        assert q(1, -1).sign() == -1

    def test_table_boundary(self):
        # b_3 = 3/2 + √2 sits below r_3 = 87/25
        b3 = q(Fraction(3, 2), 1)
        assert (b3 - Fraction(87, 25)).sign() == -1

    def test_zero(self):
        assert q(0).sign() == 0

    def test_ordering_consistent(self):
        assert q(1, 1) < q(3, 2) < q(99, 70)
        assert q(0, 1) > Fraction(7, 5)      # √2 > 1.4
        assert q(0, 1) < Fraction(3, 2)


class TestDecimal:
    def test_silver_limit(self):
        assert q(3, 2).to_decimal(5) == "5.82843"

    def test_bound_values(self):
        assert q(Fraction(3, 2), 1).to_decimal(5) == "2.91421"
        b4 = q(3, 2) + q(Fraction(-9, 2), -3) * Fraction(1, 4)
        assert b4.to_decimal(5) == "3.64277"

    def test_rational_rounding_half_away(self):
        assert q(Fraction(1, 2)).to_decimal(0) == "1"
        assert q(Fraction(-1, 2)).to_decimal(0) == "-1"
        assert q(Fraction(25, 1000)).to_decimal(2) == "0.03"
        assert q(Fraction(-25, 1000)).to_decimal(2) == "-0.03"

    def test_sci_rendering(self):
        assert q(6419052564).to_sci(6) == "6.41905e9"
        assert q(-157980374).to_sci(5) == "-1.5798e8"
        assert q(Fraction(1, 400)).to_sci(3) == "2.50e-3"
        assert q(0).to_sci(3) == "0.00"

    def test_sci_mantissa_overflow(self):
        assert q(Fraction(9999999, 1000)).to_sci(3) == "1.00e4"

    def test_floor(self):
        assert q(0, 1).floor() == 1
        assert q(0, -1).floor() == -2
        assert q(3, 2).floor() == 5
        assert q(Fraction(7, 2)).floor() == 3


def _random_quad(rng, height=10**6):
    def frac():
        return Fraction(rng.randint(-height, height), rng.randint(1, height))
    return QuadNumber(frac(), frac())


class TestFieldAxioms:
    def test_randomized_field_axioms(self):
        rng = random.Random(20260810)
        for _ in range(1000):
            x, y, z = (_random_quad(rng) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert (x + y) + z == x + (y + z)
            assert x * (y + z) == x * y + x * z
            assert x + y == y + x and x * y == y * x
            if x:
                assert x * x.inverse() == 1

    def test_norm_multiplicative(self):
        rng = random.Random(7)
        for _ in range(200):
            x, y = _random_quad(rng), _random_quad(rng)
            assert (x * y).norm() == x.norm() * y.norm()


class TestSignOracle:
    @staticmethod
    def _oracle_sign(value: QuadNumber) -> int:
        dps = 60
        while True:
            with mp.workdps(dps):
                a = mp.mpf(value.a.numerator) / value.a.denominator
                b = mp.mpf(value.b.numerator) / value.b.denominator
                approx = a + b * mp.sqrt(2)
                if approx == 0 or abs(approx) > mp.mpf(10) ** (-(dps - 15)):
                    return int(mp.sign(approx))
            dps *= 2

    def test_sign_matches_high_precision_oracle(self):
        rng = random.Random(991)
        for _ in range(1000):
            x = _random_quad(rng)
            assert x.sign() == self._oracle_sign(x)

    def test_near_tie_cases(self):
        # 99/70 is a convergent of √2: signs on both sides must be exact
        assert QuadNumber(Fraction(99, 70), -1).sign() == 1
        assert QuadNumber(Fraction(-99, 70), 1).sign() == -1
        assert QuadNumber(Fraction(1393, 985), -1).sign() == -1


class TestDecimalStability:
    def test_one_ulp_against_doubled_precision(self):
        rng = random.Random(5150)
        for _ in range(200):
            x = _random_quad(rng, height=10**4)
            digits = rng.randint(1, 25)
            low = Fraction(x.to_decimal(digits))
            high = Fraction(x.to_decimal(2 * digits))
            assert abs(low - high) <= Fraction(1, 10**digits)
