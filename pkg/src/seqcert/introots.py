from __future__ import annotations

from math import isqrt

#: extra decimal digits carried through floor-root extraction before the
#: final rounding step of nth_root_decimal.
NTH_ROOT_GUARD_DIGITS = 5


def int_nth_root(x: int, n: int) -> int:
    """Floor of the n-th root of x, certified by r**n <= x < (r+1)**n.

    Newton iteration from an over-estimate converges to the floor root; the
    final bracket check makes the result independent of iteration details.
    """
    if n < 1:
        raise ValueError("root degree must be a positive integer")
    if x < 0:
        raise ValueError("negative radicand")
    if n == 1 or x in (0, 1):
        return x
    if n == 2:
        return isqrt(x)
    if x.bit_length() <= n:  # 2^n > x >= 1, so the root is 1
        return 1
    r = 1 << -(-x.bit_length() // n)  # 2^ceil(bits/n) >= x^(1/n)
    while True:
        t = ((n - 1) * r + x // r ** (n - 1)) // n
        if t >= r:
            break
        r = t
    while r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def nth_root_decimal(x: int, n: int, digits: int,
                     guard: int = NTH_ROOT_GUARD_DIGITS) -> str:
    """Decimal string of x**(1/n) with `digits` fractional digits.

    Computed as the exact floor root of x·10^(n·(digits+guard)) and then
    rounded half away from zero in the last digit; the result is always
    within one ulp of the true value.
    """
    if x < 1:
        raise ValueError("radicand must be >= 1")
    if digits < 1:
        raise ValueError("digits must be positive")
    total = digits + guard
    r = int_nth_root(x * 10 ** (n * total), n)
    scale = 10**guard
    m = (r + scale // 2) // scale
    whole, frac = divmod(m, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


def pow_cmp(a: int, p: int, b: int, q: int) -> int:
    """Exact ordering of a**p versus b**q for a, b >= 1: -1, 0 or +1.

    A bit-length prefilter settles lopsided cases; otherwise the powers are
    compared by exact big-integer arithmetic.
    """
    if a < 1 or b < 1:
        raise ValueError("bases must be >= 1")
    if p < 0 or q < 0:
        raise ValueError("exponents must be nonnegative")
    left_one = a == 1 or p == 0
    right_one = b == 1 or q == 0
    if left_one or right_one:
        if left_one and right_one:
            return 0
        return -1 if left_one else 1
    # 2^(p·(la-1)) <= a^p < 2^(p·la) and likewise for b^q
    la, lb = a.bit_length(), b.bit_length()
    if p * (la - 1) >= q * lb:
        return 1
    if q * (lb - 1) >= p * la:
        return -1
    lhs, rhs = a**p, b**q
    return (lhs > rhs) - (lhs < rhs)


def power_difference(a: int, p: int, b: int, q: int) -> int:
    """Exact value of a**p - b**q (the witness behind pow_cmp)."""
    return a**p - b**q
