from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .quadratic import QuadLike, QuadNumber

Coeff = Union[int, Fraction, QuadNumber]


def _as_quad(x: Coeff) -> QuadNumber:
    return x if isinstance(x, QuadNumber) else QuadNumber(x)


class QuadPolynomial:
    """Polynomial in one variable with QuadNumber coefficients, stored in
    ascending degree with trailing zeros stripped."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Coeff] = ()) -> None:
        cs = [_as_quad(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "_coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadPolynomial is immutable")

    @property
    def coeffs(self) -> tuple[QuadNumber, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> QuadNumber:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._coeffs[-1]

    def coeff(self, i: int) -> QuadNumber:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else QuadNumber(0)

    def __repr__(self) -> str:
        return f"QuadPolynomial({list(self._coeffs)!r})"

    def __str__(self) -> str:
        return self.to_str()

    def to_str(self, var: str = "n") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for power in range(self.degree, -1, -1):
            c = self.coeff(power)
            if not c:
                continue
            if power == 0:
                parts.append(f"({c})")
            elif power == 1:
                parts.append(f"({c})·{var}")
            else:
                parts.append(f"({c})·{var}^{power}")
        return " + ".join(parts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> "QuadPolynomial":
        return QuadPolynomial([-c for c in self._coeffs])

    def __add__(self, other: "QuadPolynomial") -> "QuadPolynomial":
        if not isinstance(other, QuadPolynomial):
            return NotImplemented
        size = max(len(self._coeffs), len(other._coeffs))
        return QuadPolynomial([self.coeff(i) + other.coeff(i) for i in range(size)])

    def __sub__(self, other: "QuadPolynomial") -> "QuadPolynomial":
        return self + (-other)

    def __mul__(self, other: Union["QuadPolynomial", Coeff]) -> "QuadPolynomial":
        if isinstance(other, (int, Fraction, QuadNumber)):
            scalar = _as_quad(other)
            return QuadPolynomial([c * scalar for c in self._coeffs])
        if not isinstance(other, QuadPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return QuadPolynomial()
        out = [QuadNumber(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, ci in enumerate(self._coeffs):
            if not ci:
                continue
            for j, cj in enumerate(other._coeffs):
                out[i + j] = out[i + j] + ci * cj
        return QuadPolynomial(out)

    __rmul__ = __mul__

    def eval(self, x: QuadLike) -> QuadNumber:
        value = QuadNumber(0)
        for c in reversed(self._coeffs):
            value = value * x + c
        return value

    def shift(self, t: Coeff) -> "QuadPolynomial":
        """Compose with x -> x + t (Horner form, exact)."""
        result = QuadPolynomial()
        x_plus_t = QuadPolynomial([t, 1])
        for c in reversed(self._coeffs):
            result = result * x_plus_t + QuadPolynomial([c])
        return result

    def divmod(self, other: "QuadPolynomial") -> tuple["QuadPolynomial", "QuadPolynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        quotient = [QuadNumber(0)] * max(len(self._coeffs) - len(other._coeffs) + 1, 0)
        rest = list(self._coeffs)
        inv_lead = other.leading.inverse()
        while len(rest) >= len(other._coeffs) and any(rest):
            while rest and not rest[-1]:
                rest.pop()
            if len(rest) < len(other._coeffs):
                break
            factor = rest[-1] * inv_lead
            shift = len(rest) - len(other._coeffs)
            quotient[shift] = factor
            for i, c in enumerate(other._coeffs):
                rest[shift + i] = rest[shift + i] - factor * c
            rest.pop()
        return QuadPolynomial(quotient), QuadPolynomial(rest)

    def monic(self) -> "QuadPolynomial":
        if self.is_zero:
            return self
        return self * self.leading.inverse()


def poly_gcd(p: QuadPolynomial, q: QuadPolynomial) -> QuadPolynomial:
    """Monic gcd over the field Q(√2) by the Euclidean algorithm."""
    a, b = p, q
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic() if not a.is_zero else a


def from_int_coeffs(coeffs: Iterable[int]) -> QuadPolynomial:
    return QuadPolynomial(list(coeffs))


class QuadRationalFunction:
    """Quotient of two QuadPolynomials; common factors are cancelled via the
    exact Euclidean gcd, and equality is decided by cross-multiplication."""

    __slots__ = ("_numer", "_denom")

    def __init__(self, numer: QuadPolynomial, denom: QuadPolynomial) -> None:
        if denom.is_zero:
            raise ZeroDivisionError("zero denominator polynomial")
        g = poly_gcd(numer, denom)
        if not g.is_zero and g.degree > 0:
            numer, _ = numer.divmod(g)
            denom, _ = denom.divmod(g)
        object.__setattr__(self, "_numer", numer)
        object.__setattr__(self, "_denom", denom)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuadRationalFunction is immutable")

    @property
    def numer(self) -> QuadPolynomial:
        return self._numer

    @property
    def denom(self) -> QuadPolynomial:
        return self._denom

    @classmethod
    def from_poly(cls, p: QuadPolynomial) -> "QuadRationalFunction":
        return cls(p, QuadPolynomial([1]))

    @classmethod
    def constant(cls, c: Coeff) -> "QuadRationalFunction":
        return cls.from_poly(QuadPolynomial([c]))

    def __repr__(self) -> str:
        return f"QuadRationalFunction({self._numer!r}, {self._denom!r})"

    def to_str(self, var: str = "n") -> str:
        return f"[{self._numer.to_str(var)}] / [{self._denom.to_str(var)}]"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, QuadNumber)):
            other = QuadRationalFunction.constant(other)
        if isinstance(other, QuadRationalFunction):
            return self._numer * other._denom == other._numer * self._denom
        return NotImplemented

    def __hash__(self) -> int:
        n = self._numer.monic() if not self._numer.is_zero else self._numer
        d = self._denom.monic()
        return hash((n, d))

    def __neg__(self) -> "QuadRationalFunction":
        return QuadRationalFunction(-self._numer, self._denom)

    def _coerced(self, other: object) -> "QuadRationalFunction":
        if isinstance(other, QuadRationalFunction):
            return other
        if isinstance(other, QuadPolynomial):
            return QuadRationalFunction.from_poly(other)
        if isinstance(other, (int, Fraction, QuadNumber)):
            return QuadRationalFunction.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "QuadRationalFunction":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadRationalFunction(
            self._numer * o._denom + o._numer * self._denom,
            self._denom * o._denom,
        )

    __radd__ = __add__

    def __sub__(self, other: object) -> "QuadRationalFunction":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "QuadRationalFunction":
        return (-self) + other

    def __mul__(self, other: object) -> "QuadRationalFunction":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadRationalFunction(self._numer * o._numer, self._denom * o._denom)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "QuadRationalFunction":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        if o._numer.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return QuadRationalFunction(self._numer * o._denom, self._denom * o._numer)

    def __rtruediv__(self, other: object) -> "QuadRationalFunction":
        o = self._coerced(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def eval(self, x: QuadLike) -> QuadNumber:
        d = self._denom.eval(x)
        if not d:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self._numer.eval(x) / d


@dataclass(frozen=True)
class BoundFunction:
    """Rational bound of the shape b(n) = c0 + c1/n with Q(√2) coefficients;
    increasing towards the limit c0 exactly when c1 < 0."""

    c0: QuadNumber
    c1: QuadNumber

    def eval(self, n: int) -> QuadNumber:
        if n < 1:
            raise ValueError("bound is evaluated at n >= 1")
        return self.c0 + self.c1 * Fraction(1, n)

    @property
    def limit(self) -> QuadNumber:
        return self.c0

    @property
    def is_increasing(self) -> bool:
        return self.c1.sign() < 0

    def gap(self, n: int) -> QuadNumber:
        """Exact width b(n+1) - b(n) = -c1/(n(n+1))."""
        return -self.c1 * Fraction(1, n * (n + 1))

    def as_rational_function(self, shift: int = 0) -> QuadRationalFunction:
        """The map n -> b(n + shift) as a rational function of n."""
        numer = QuadPolynomial([self.c0 * shift + self.c1, self.c0])
        denom = QuadPolynomial([shift, 1])
        return QuadRationalFunction(numer, denom)

    def __str__(self) -> str:
        return f"({self.c0}) + ({self.c1})/n"
