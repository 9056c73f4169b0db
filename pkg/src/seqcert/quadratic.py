from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

RationalLike = Union[int, Fraction]
QuadLike = Union[int, Fraction, "QuadNumber"]

#: extra decimal digits used when first approximating √2; rendering is
#: certified by interval refinement, so this only avoids rework.
SQRT2_GUARD_DIGITS = 10


def _round_half_away(num: int, den: int) -> int:
    """Round num/den (den > 0) to the nearest integer, halves away from zero."""
    if num >= 0:
        return (2 * num + den) // (2 * den)
    return -((-2 * num + den) // (2 * den))


class QuadNumber:
    """Element a + b·√2 of the real quadratic field Q(√2), exact and immutable.

    Arithmetic is closed and exact; ordering agrees with the real value and
    is decided without any floating point.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0) -> None:
        object.__setattr__(self, "_a", Fraction(a))
        object.__setattr__(self, "_b", Fraction(b))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadNumber is immutable")

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def is_rational(self) -> bool:
        return self._b == 0

    @classmethod
    def _coerce(cls, x: QuadLike) -> "QuadNumber":
        if isinstance(x, QuadNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        return NotImplemented  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"QuadNumber({self._a!r}, {self._b!r})"

    def __str__(self) -> str:
        if self._b == 0:
            return str(self._a)
        if self._b == 1:
            surd = "√2"
        elif self._b == -1:
            surd = "-√2"
        else:
            surd = f"{self._b}·√2"
        if self._a == 0:
            return surd
        return f"{self._a} + {surd}" if self._b > 0 else f"{self._a} - {surd.lstrip('-')}"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QuadNumber(other)
        if isinstance(other, QuadNumber):
            return self._a == other._a and self._b == other._b
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._a, self._b))

    def __bool__(self) -> bool:
        return self._a != 0 or self._b != 0

    def __neg__(self) -> "QuadNumber":
        return QuadNumber(-self._a, -self._b)

    def __add__(self, other: QuadLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNumber(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __sub__(self, other: QuadLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNumber(self._a - o._a, self._b - o._b)

    def __rsub__(self, other: QuadLike) -> "QuadNumber":
        return (-self) + other

    def __mul__(self, other: QuadLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadNumber(
            self._a * o._a + 2 * self._b * o._b,
            self._a * o._b + self._b * o._a,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self._a * self._a - 2 * self._b * self._b

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self._a, -self._b)

    def inverse(self) -> "QuadNumber":
        # a² = 2b² has no rational solution besides a = b = 0, so every
        # nonzero element is invertible.
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(√2)")
        return QuadNumber(self._a / n, -self._b / n)

    def __truediv__(self, other: QuadLike) -> "QuadNumber":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: QuadLike) -> "QuadNumber":
        return self.inverse() * other

    def __pow__(self, e: int) -> "QuadNumber":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadNumber(1)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        """Sign of the real value a + b·√2, decided exactly.

        When a and b agree in sign the answer is immediate; otherwise the
        dominant part is found by comparing a² with 2b².
        """
        a, b = self._a, self._b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        aa, bb = a * a, 2 * b * b
        if a > 0:  # b < 0: positive iff a² > 2b²
            return (aa > bb) - (aa < bb)
        return (bb > aa) - (bb < aa)

    def _cmp(self, other: QuadLike) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented  # type: ignore[return-value]
        return (self - o).sign()

    def __lt__(self, other: QuadLike) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other: QuadLike) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other: QuadLike) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other: QuadLike) -> bool:
        return self._cmp(other) >= 0

    def __abs__(self) -> "QuadNumber":
        return -self if self.sign() < 0 else self

    def _bracket(self, digits: int) -> tuple[Fraction, Fraction]:
        """Rational lower/upper bounds with gap < 2·|b|/10^digits."""
        scale = 10**digits
        lo = isqrt(2 * scale * scale)  # lo ≤ √2·scale < lo + 1
        if self._b >= 0:
            return (self._a + self._b * lo / scale,
                    self._a + self._b * (lo + 1) / scale)
        return (self._a + self._b * (lo + 1) / scale,
                self._a + self._b * lo / scale)

    def floor(self) -> int:
        """Exact floor, certified by refining a rational bracket of √2."""
        if self._b == 0:
            return self._a.numerator // self._a.denominator
        digits = 2 * SQRT2_GUARD_DIGITS
        while True:
            lo, hi = self._bracket(digits)
            flo = lo.numerator // lo.denominator
            fhi = hi.numerator // hi.denominator
            if flo == fhi:
                return flo
            digits *= 2  # terminates: b ≠ 0 makes the value irrational

    def to_decimal(self, digits: int) -> str:
        """Decimal string with `digits` fractional digits, rounded half away
        from zero.  Rounding is exact: irrational values never tie, and
        rational values are rounded by integer arithmetic."""
        if digits < 0:
            raise ValueError("digits must be nonnegative")
        s = self.sign()
        mag = -self if s < 0 else self
        scale = 10**digits
        if mag._b == 0:
            v = mag._a * scale
            m = _round_half_away(v.numerator, v.denominator)
        else:
            half = QuadNumber(mag._a * scale + Fraction(1, 2), mag._b * scale)
            m = half.floor()
        whole, frac = divmod(m, scale)
        text = str(whole) if digits == 0 else f"{whole}.{frac:0{digits}d}"
        return f"-{text}" if s < 0 and m != 0 else text

    def to_sci(self, sig: int) -> str:
        """Scientific-style string with `sig` significant digits, e.g.
        '6.41905e9'.  The exponent is certified by exact comparison."""
        if sig < 1:
            raise ValueError("sig must be positive")
        s = self.sign()
        if s == 0:
            return "0" if sig == 1 else "0." + "0" * (sig - 1)
        mag = -self if s < 0 else self
        # first estimate the decimal exponent, then certify it exactly
        approx = mag.to_decimal(max(sig + 5, 12))
        point = approx.index(".")
        if approx[:point] != "0":
            exp = point - 1
        else:
            rest = approx[point + 1:]
            nz = len(rest) - len(rest.lstrip("0"))
            exp = -(nz + 1)
        while mag >= QuadNumber(Fraction(10) ** (exp + 1)):
            exp += 1
        while mag < QuadNumber(Fraction(10) ** exp):
            exp -= 1
        mantissa = mag * QuadNumber(Fraction(10) ** (-exp))
        text = mantissa.to_decimal(sig - 1)
        if text.startswith("10"):  # rounding bumped the mantissa to 10.0…
            exp += 1
            mantissa = mag * QuadNumber(Fraction(10) ** (-exp))
            text = mantissa.to_decimal(sig - 1)
        return f"-{text}e{exp}" if s < 0 else f"{text}e{exp}"


SQRT2 = QuadNumber(0, 1)
ONE = QuadNumber(1)
ZERO = QuadNumber(0)


def rational_to_decimal(x: Fraction, digits: int) -> str:
    """Render an exact rational with `digits` fractional digits (half away
    from zero), matching QuadNumber.to_decimal for b = 0."""
    return QuadNumber(x).to_decimal(digits)
