from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .report import CertificateReport, Status, Step

BINOMIAL_KINDS = ("n_choose_k", "n_plus_k_choose_k", "2k_choose_k")


class SequenceError(ValueError):
    """Definition or generation error for a sequence."""


@dataclass(frozen=True)
class BinomialFactor:
    kind: str
    exponent: int = 1

    def __post_init__(self) -> None:
        if self.kind not in BINOMIAL_KINDS:
            raise SequenceError(f"unknown binomial kind {self.kind!r}")
        if self.exponent < 1:
            raise SequenceError("factor exponent must be a positive integer")

    def value(self, n: int, k: int) -> int:
        if self.kind == "n_choose_k":
            base = comb(n, k)
        elif self.kind == "n_plus_k_choose_k":
            base = comb(n + k, k)
        else:
            base = comb(2 * k, k)
        return base**self.exponent


@dataclass(frozen=True)
class BinomialSummand:
    """Summand of a k-sum: a product of binomial factors, optionally scaled
    by a linear numerator (α·k + β) and divided by a linear denominator
    (γ·k + δ)."""

    factors: tuple[BinomialFactor, ...]
    linear_numerator: Optional[tuple[int, int]] = None
    linear_denominator: Optional[tuple[int, int]] = None

    def term(self, n: int, k: int) -> Fraction:
        value = Fraction(1)
        for factor in self.factors:
            value *= factor.value(n, k)
        if self.linear_numerator is not None:
            alpha, beta = self.linear_numerator
            value *= alpha * k + beta
        if self.linear_denominator is not None:
            gamma, delta = self.linear_denominator
            div = gamma * k + delta
            if div == 0:
                raise SequenceError(f"linear denominator vanishes at k={k}")
            value /= div
        return value


@dataclass(frozen=True)
class Recurrence:
    """Linear recurrence sum(c_j(n) * z_(n+j) for j in 0..order) = 0 with
    integer polynomial coefficients, stored as ascending-power tuples."""

    order: int
    coeffs: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise SequenceError("recurrence order must be positive")
        if len(self.coeffs) != self.order + 1:
            raise SequenceError("recurrence needs order+1 coefficient polynomials")
        if not any(self.coeffs[self.order]):
            raise SequenceError("leading coefficient polynomial is identically zero")

    def coeff(self, j: int, n: int) -> int:
        value = 0
        for c in reversed(self.coeffs[j]):
            value = value * n + c
        return value

    def residual(self, n: int, window: tuple[int, ...]) -> int:
        return sum(self.coeff(j, n) * window[j] for j in range(self.order + 1))


@dataclass(frozen=True)
class SequenceDef:
    name: str
    summand: Optional[BinomialSummand] = None
    recurrence: Optional[Recurrence] = None
    initial_terms: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.summand is None and self.recurrence is None:
            raise SequenceError(f"{self.name}: needs a summand or a recurrence")
        if self.recurrence is not None and len(self.initial_terms) < self.recurrence.order:
            raise SequenceError(
                f"{self.name}: recurrence of order {self.recurrence.order} "
                f"needs at least {self.recurrence.order} initial terms"
            )

    def to_dict(self) -> dict:
        data: dict = {"name": self.name}
        if self.summand is not None:
            data["summand"] = {
                "factors": [
                    {"kind": f.kind, "exponent": f.exponent} for f in self.summand.factors
                ],
                "linear_numerator": list(self.summand.linear_numerator)
                if self.summand.linear_numerator else None,
                "linear_denominator": list(self.summand.linear_denominator)
                if self.summand.linear_denominator else None,
            }
        if self.recurrence is not None:
            data["recurrence"] = {
                "order": self.recurrence.order,
                "coeffs": [list(c) for c in self.recurrence.coeffs],
            }
        data["initial_terms"] = [str(t) for t in self.initial_terms]
        return data


@dataclass(frozen=True)
class TermStore:
    """Immutable contiguous table n -> exact integer term."""

    first_index: int
    terms: tuple[int, ...]
    name: str = ""

    @property
    def last_index(self) -> int:
        return self.first_index + len(self.terms) - 1

    def __len__(self) -> int:
        return len(self.terms)

    def covers(self, lo: int, hi: int) -> bool:
        return self.first_index <= lo and hi <= self.last_index

    def term(self, n: int) -> int:
        if not self.first_index <= n <= self.last_index:
            raise IndexError(f"index {n} outside [{self.first_index}, {self.last_index}]")
        return self.terms[n - self.first_index]

    def window(self, lo: int, hi: int) -> "TermStore":
        if not self.covers(lo, hi):
            raise IndexError(f"window [{lo}, {hi}] not covered")
        return TermStore(lo, self.terms[lo - self.first_index: hi - self.first_index + 1],
                         self.name)


def eval_binomial_sum(seq: SequenceDef, n: int) -> int:
    """Exact value of the k-sum at index n; the rational accumulation must
    collapse to an integer."""
    if seq.summand is None:
        raise SequenceError(f"{seq.name}: no summand definition")
    if n < 0:
        raise SequenceError("index must be nonnegative")
    total = Fraction(0)
    for k in range(n + 1):
        total += seq.summand.term(n, k)
    if total.denominator != 1:
        raise SequenceError(f"{seq.name}: sum at n={n} is not an integer: {total}")
    return total.numerator


def build_by_summation(seq: SequenceDef, upto: int) -> TermStore:
    return TermStore(0, tuple(eval_binomial_sum(seq, n) for n in range(upto + 1)), seq.name)


def seed_store(seq: SequenceDef) -> TermStore:
    if not seq.initial_terms:
        raise SequenceError(f"{seq.name}: no initial terms")
    return TermStore(0, seq.initial_terms, seq.name)


def extend_by_recurrence(seq: SequenceDef, store: TermStore, upto: int) -> TermStore:
    """Extend a store to index `upto` by solving the recurrence for its top
    shift; every division by the leading coefficient must be exact."""
    rec = seq.recurrence
    if rec is None:
        raise SequenceError(f"{seq.name}: no recurrence definition")
    if len(store) < rec.order:
        raise SequenceError(f"{seq.name}: need at least {rec.order} seed terms")
    if upto <= store.last_index:
        return store
    terms = list(store.terms)
    for target in range(store.last_index + 1, upto + 1):
        n = target - rec.order - store.first_index
        step = n + store.first_index
        lead = rec.coeff(rec.order, step)
        if lead == 0:
            raise SequenceError(f"{seq.name}: leading coefficient vanishes at n={step}")
        acc = sum(rec.coeff(j, step) * terms[n + j] for j in range(rec.order))
        quotient, remainder = divmod(-acc, lead)
        if remainder != 0:
            raise SequenceError(
                f"{seq.name}: non-exact division at n={step}; recurrence or seeds are wrong"
            )
        terms.append(quotient)
    return TermStore(store.first_index, tuple(terms), store.name)


def build_terms(seq: SequenceDef, upto: int, method: str = "recurrence") -> TermStore:
    """Build terms 0..upto by `method`: 'recurrence', 'summation' or 'both'
    (both paths computed and compared, mismatch raises)."""
    if method == "summation":
        return build_by_summation(seq, upto)
    if method == "recurrence":
        return extend_by_recurrence(seq, seed_store(seq), upto)
    if method == "both":
        by_sum = build_by_summation(seq, upto)
        by_rec = extend_by_recurrence(seq, seed_store(seq), upto)
        if by_sum.terms != by_rec.terms:
            bad = next(n for n in range(upto + 1) if by_sum.term(n) != by_rec.term(n))
            raise SequenceError(
                f"{seq.name}: summation and recurrence disagree at n={bad}: "
                f"{by_sum.term(bad)} vs {by_rec.term(bad)}"
            )
        return by_sum
    raise SequenceError(f"unknown generation method {method!r}")


def verify_recurrence(seq: SequenceDef, store: TermStore, lo: int, hi: int) -> CertificateReport:
    """Evaluate the recurrence residual exactly for every n in [lo, hi]."""
    rec = seq.recurrence
    if rec is None:
        raise SequenceError(f"{seq.name}: no recurrence definition")
    if not store.covers(lo, hi + rec.order):
        raise SequenceError(
            f"{seq.name}: store must cover [{lo}, {hi + rec.order}] to verify [{lo}, {hi}]"
        )
    claim = f"recurrence-consistency:{seq.name}"
    for n in range(lo, hi + 1):
        window = tuple(store.term(n + j) for j in range(rec.order + 1))
        residual = rec.residual(n, window)
        if residual != 0:
            return CertificateReport(
                claim, Status.REFUTED,
                (Step(f"nonzero residual at n={n}", False,
                      {"n": n, "residual": residual}, anchor="recurrence-residual"),),
            )
    return CertificateReport(
        claim, Status.CERTIFIED,
        (Step(f"residual is zero for every n in [{lo}, {hi}]", True,
              {"lo": lo, "hi": hi}, anchor="recurrence-residual"),),
    )


def ratios(store: TermStore, lo: int, hi: int) -> list[Fraction]:
    """Exact consecutive quotients r_n = z_(n+1)/z_n for n in [lo, hi]."""
    if not store.covers(lo, hi + 1):
        raise SequenceError(f"store must cover [{lo}, {hi + 1}]")
    out = []
    for n in range(lo, hi + 1):
        denom = store.term(n)
        if denom == 0:
            raise SequenceError(f"zero term at n={n}")
        out.append(Fraction(store.term(n + 1), denom))
    return out


R_DEF = SequenceDef(
    "R",
    summand=BinomialSummand(
        factors=(BinomialFactor("n_choose_k"), BinomialFactor("n_plus_k_choose_k")),
        linear_denominator=(2, -1),
    ),
    recurrence=Recurrence(3, ((-1, -1), (15, 7), (-13, -7), (3, 1))),
    initial_terms=(-1, 1, 7),
)

S_DEF = SequenceDef(
    "S",
    summand=BinomialSummand(
        factors=(BinomialFactor("n_choose_k", 2), BinomialFactor("2k_choose_k")),
        linear_numerator=(2, 1),
    ),
    recurrence=Recurrence(3, ((9, 18, 9), (-87, -74, -19), (87, 62, 11), (-9, -6, -1))),
    initial_terms=(1, 7, 55),
)

BUILTIN_DEFS = {"R": R_DEF, "S": S_DEF}
