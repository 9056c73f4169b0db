from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .introots import int_nth_root, pow_cmp
from .qpoly import BoundFunction
from .quadratic import QuadNumber, rational_to_decimal
from .report import CheckResult, Verdict
from .sequences import TermStore, ratios

EVIDENCE_NOTE = "bounded-depth evidence; not a proof"

Mode = Literal["convex", "concave"]
Direction = Literal["increasing", "decreasing"]


class CheckRangeError(ValueError):
    """Requested range is empty or not covered by the store."""


def _require(store: TermStore, lo: int, hi: int) -> None:
    if lo > hi:
        raise CheckRangeError(f"empty range [{lo}, {hi}]")
    if not store.covers(lo, hi):
        raise CheckRangeError(
            f"store covers [{store.first_index}, {store.last_index}], "
            f"needs [{lo}, {hi}]"
        )


def _require_positive(store: TermStore, lo: int, hi: int) -> None:
    _require(store, lo, hi)
    for n in range(lo, hi + 1):
        if store.term(n) <= 0:
            raise CheckRangeError(f"nonpositive term at n={n}")


def _verdict(strict_everywhere: bool) -> Verdict:
    return Verdict.HOLDS_STRICT if strict_everywhere else Verdict.HOLDS_WEAK


def check_log_shape(store: TermStore, lo: int, hi: int, mode: Mode = "convex",
                    strict: bool = True) -> CheckResult:
    """Exact three-point check z_(n-1)·z_(n+1) vs z_n² for each n in [lo, hi].

    No division is performed; the verdict rests on big-integer cross products.
    """
    _require(store, lo - 1, hi + 1)
    name = f"log-{mode}" + ("-strict" if strict else "")
    all_strict = True
    for n in range(lo, hi + 1):
        outer = store.term(n - 1) * store.term(n + 1)
        inner = store.term(n) ** 2
        excess = inner - outer if mode == "convex" else outer - inner
        if excess > 0 or (strict and excess == 0):
            return CheckResult(name, lo, hi, Verdict.FAILS, first_violation=n,
                               witness={"n": n, "z_prev": store.term(n - 1),
                                        "z_n": store.term(n), "z_next": store.term(n + 1),
                                        "excess": excess})
        if excess == 0:
            all_strict = False
    return CheckResult(name, lo, hi, _verdict(all_strict))


def check_ratio_monotone(store: TermStore, lo: int, hi: int,
                         direction: Direction = "increasing",
                         strict: bool = True) -> CheckResult:
    """Monotonicity of consecutive quotients r_n = z_(n+1)/z_n on the window
    [lo, hi], decided by cross-multiplication and reported with exact ratio
    witnesses."""
    _require_positive(store, lo, hi + 1)
    name = f"ratio-{direction}" + ("-strict" if strict else "")
    rs = ratios(store, lo, hi)
    all_strict = True
    for i in range(len(rs) - 1):
        diff = rs[i + 1] - rs[i]
        bad = diff < 0 if direction == "increasing" else diff > 0
        if bad or (strict and diff == 0):
            n = lo + i
            return CheckResult(name, lo, hi, Verdict.FAILS, first_violation=n,
                               witness={"n": n, "r_n": rs[i], "r_next": rs[i + 1],
                                        "cross_lhs": store.term(n + 1) ** 2,
                                        "cross_rhs": store.term(n) * store.term(n + 2)})
        if diff == 0:
            all_strict = False
    return CheckResult(name, lo, hi, _verdict(all_strict))


def check_root_monotone(store: TermStore, lo: int, hi: int,
                        direction: Direction = "increasing",
                        strict: bool = True) -> CheckResult:
    """Monotonicity of y_n = z_n^(1/n) on the window [lo, hi], decided for
    each consecutive pair by the exact power comparison z_n^(n+1) vs
    z_(n+1)^n."""
    if lo < 1:
        raise CheckRangeError("n-th roots start at n=1")
    _require_positive(store, lo, hi)
    name = f"root-{direction}" + ("-strict" if strict else "")
    all_strict = True
    for n in range(lo, hi):
        cmp = pow_cmp(store.term(n), n + 1, store.term(n + 1), n)
        bad = cmp > 0 if direction == "increasing" else cmp < 0
        if bad or (strict and cmp == 0):
            return CheckResult(name, lo, hi, Verdict.FAILS, first_violation=n,
                               witness={"n": n, "base_n": store.term(n),
                                        "base_next": store.term(n + 1),
                                        "ordering": cmp})
        if cmp == 0:
            all_strict = False
    return CheckResult(name, lo, hi, _verdict(all_strict))


def check_root_log_concave(store: TermStore, lo: int, hi: int,
                           strict: bool = True) -> CheckResult:
    """Log-concavity of y_n = z_n^(1/n) at each three-point index n in
    [lo, hi]: compares z_n^(2(n-1)(n+1)) with z_(n-1)^(n(n+1))·z_(n+1)^(n(n-1))
    in big integers.  Exponents grow cubically in n."""
    if lo < 2:
        raise CheckRangeError("three-point root check needs n >= 2")
    _require_positive(store, lo - 1, hi + 1)
    name = "root-log-concave" + ("-strict" if strict else "")
    all_strict = True
    for n in range(lo, hi + 1):
        lhs = store.term(n) ** (2 * (n - 1) * (n + 1))
        rhs = store.term(n - 1) ** (n * (n + 1)) * store.term(n + 1) ** (n * (n - 1))
        cmp = (lhs > rhs) - (lhs < rhs)
        if cmp < 0 or (strict and cmp == 0):
            return CheckResult(name, lo, hi, Verdict.FAILS, first_violation=n,
                               witness={"n": n, "z_prev": store.term(n - 1),
                                        "z_n": store.term(n), "z_next": store.term(n + 1),
                                        "ordering": cmp})
        if cmp == 0:
            all_strict = False
    return CheckResult(name, lo, hi, _verdict(all_strict))


def check_ratio_log_concave(store: TermStore, lo: int, hi: int,
                            strict: bool = False) -> CheckResult:
    """Log-concavity of the quotient sequence r_n at each three-point index n
    in [lo, hi]: r_n² vs r_(n-1)·r_(n+1), decided via the integer comparison
    z_(n+1)³·z_(n-1) vs z_n³·z_(n+2)."""
    if lo < 1:
        raise CheckRangeError("ratio three-point check needs n >= 1")
    _require_positive(store, lo - 1, hi + 2)
    name = "ratio-log-concave" + ("-strict" if strict else "")
    all_strict = True
    for n in range(lo, hi + 1):
        lhs = store.term(n + 1) ** 3 * store.term(n - 1)
        rhs = store.term(n) ** 3 * store.term(n + 2)
        cmp = (lhs > rhs) - (lhs < rhs)
        if cmp < 0 or (strict and cmp == 0):
            return CheckResult(name, lo, hi, Verdict.FAILS, first_violation=n,
                               witness={"n": n, "lhs": lhs, "rhs": rhs,
                                        "r_prev": Fraction(store.term(n), store.term(n - 1)),
                                        "r_n": Fraction(store.term(n + 1), store.term(n)),
                                        "r_next": Fraction(store.term(n + 2), store.term(n + 1))})
        if cmp == 0:
            all_strict = False
    return CheckResult(name, lo, hi, _verdict(all_strict))


def root_ratio_trend(store: TermStore, lo: int, hi: int, digits: int,
                     guard: int = 8) -> tuple[list[tuple[int, str, Fraction]], CheckResult]:
    """Table of y_(n+1)/y_n = z_(n+1)^(1/(n+1)) / z_n^(1/n) rendered with
    `digits` decimals for n in [lo, hi], plus a check that the printed values
    strictly decrease; the distance of the last ratio to 1 is reported.

    Ratios are approximated by floor roots carrying `guard` extra digits;
    decimals here are rendering only, never a certificate.
    """
    if lo < 1:
        raise CheckRangeError("root ratios start at n=1")
    _require_positive(store, lo, hi + 1)
    scale_digits = digits + guard
    rows: list[tuple[int, str, Fraction]] = []
    for n in range(lo, hi + 1):
        num = int_nth_root(store.term(n + 1) * 10 ** ((n + 1) * scale_digits), n + 1)
        den = int_nth_root(store.term(n) * 10 ** (n * scale_digits), n)
        approx = Fraction(num, den)
        rows.append((n, rational_to_decimal(approx, digits), approx))
    name = "root-ratio-trend-decreasing"
    printed = [Fraction(text) for _, text, _ in rows]
    distance = abs(rows[-1][2] - 1)
    notes = (f"distance to 1 at n={hi}: {rational_to_decimal(distance, digits)}",)
    for i in range(len(printed) - 1):
        if printed[i + 1] >= printed[i]:
            return rows, CheckResult(name, lo, hi, Verdict.FAILS,
                                     first_violation=lo + i,
                                     witness={"n": lo + i, "printed": printed[i],
                                              "printed_next": printed[i + 1]},
                                     notes=notes)
    return rows, CheckResult(name, lo, hi, Verdict.HOLDS_STRICT,
                             witness={"distance_to_1_at_hi": distance}, notes=notes)


def limit_enclosure(store: TermStore, bound: BoundFunction, lo: int, hi: int) -> CheckResult:
    """Certify, for each n in [lo, hi], that r_n lies in (b(n), b(n+1)) and
    that the distance from r_n to the limit c0 is below -c1/n exactly.

    The enclosure width b(n+1) - b(n) = -c1/(n(n+1)) at the right endpoint is
    reported; it shrinks quadratically, pinning the limit of r_n at c0.
    """
    if not bound.is_increasing:
        raise CheckRangeError("enclosure needs an increasing bound (c1 < 0)")
    _require_positive(store, lo, hi + 1)
    name = "limit-enclosure"
    for n in range(lo, hi + 1):
        r_n = Fraction(store.term(n + 1), store.term(n))
        below = bound.eval(n) - r_n          # must be negative
        above = bound.eval(n + 1) - r_n      # must be positive
        to_limit = bound.limit - r_n         # must be positive
        margin = -bound.c1 * Fraction(1, n) - to_limit  # must be positive
        if (below.sign() >= 0 or above.sign() <= 0 or to_limit.sign() <= 0
                or margin.sign() <= 0):
            return CheckResult(name, lo, hi, Verdict.FAILS, first_violation=n,
                               witness={"n": n, "r_n": r_n,
                                        "lower_gap": -below, "upper_gap": above,
                                        "distance_to_limit": to_limit})
    return CheckResult(
        name, lo, hi, Verdict.HOLDS_STRICT,
        witness={"width_at_hi": bound.gap(hi),
                 "distance_bound_at_hi": -bound.c1 * Fraction(1, hi)},
        notes=(f"enclosure width at n={hi}: {bound.gap(hi)}",
               f"distance bound at n={hi}: {-bound.c1 * Fraction(1, hi)}"),
    )


def l_operator(store: TermStore) -> TermStore:
    """New store w_n = z_n² - z_(n+1)·z_(n-1), defined on the input range
    shrunk by one index at each end."""
    if len(store) < 3:
        raise CheckRangeError("need at least 3 terms")
    values = tuple(
        store.terms[i] ** 2 - store.terms[i + 1] * store.terms[i - 1]
        for i in range(1, len(store) - 1)
    )
    name = f"L({store.name})" if store.name else "L"
    return TermStore(store.first_index + 1, values, name)


@dataclass(frozen=True)
class DepthLedger:
    depth: int
    lo: int
    hi: int
    all_nonnegative: bool
    strict: bool
    negatives: int
    zeros: int
    first_negative: Optional[int]


@dataclass(frozen=True)
class ExplorationLedger:
    convention: str
    start: int
    width: int
    depth: int
    entries: tuple[DepthLedger, ...]
    note: str = EVIDENCE_NOTE


def explore_infinite_log_concavity(store: TermStore, start: int, width: int,
                                   depth: int,
                                   convention: str = "raw") -> ExplorationLedger:
    """Repeatedly apply w_n = z_n² - z_(n+1)·z_(n-1) and record per-depth sign
    ledgers on the shrinking window.  This is bounded-depth evidence only.

    convention 'raw' explores the window as given; 'abs' replaces the base
    window by absolute values first (the iterates themselves are never
    re-folded).
    """
    if convention not in ("raw", "abs"):
        raise ValueError(f"unknown convention {convention!r}")
    if width - 2 * depth < 1:
        raise CheckRangeError(
            f"window of width {width} is exhausted before depth {depth}"
        )
    current = store.window(start, start + width - 1)
    if convention == "abs":
        current = TermStore(current.first_index,
                            tuple(abs(v) for v in current.terms),
                            f"abs({current.name})")
    entries = []
    for d in range(depth + 1):
        negatives = sum(1 for v in current.terms if v < 0)
        zeros = sum(1 for v in current.terms if v == 0)
        first_negative = next(
            (current.first_index + i for i, v in enumerate(current.terms) if v < 0),
            None,
        )
        entries.append(DepthLedger(
            depth=d, lo=current.first_index, hi=current.last_index,
            all_nonnegative=negatives == 0, strict=negatives == 0 and zeros == 0,
            negatives=negatives, zeros=zeros, first_negative=first_negative,
        ))
        if d < depth:
            current = l_operator(current)
    return ExplorationLedger(convention, start, width, depth, tuple(entries))
