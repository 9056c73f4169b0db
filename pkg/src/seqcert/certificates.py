from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .checks import (
    check_ratio_monotone,
    check_root_log_concave,
    check_root_monotone,
    limit_enclosure,
    root_ratio_trend,
)
from .introots import power_difference
from .qpoly import BoundFunction, QuadPolynomial, QuadRationalFunction, from_int_coeffs
from .quadratic import QuadNumber
from .report import CertificateReport, Status, Step
from .sequences import SequenceDef, TermStore, build_by_summation, verify_recurrence


def _build_ratio_bound() -> BoundFunction:
    """Interlacing bound for the quotients of the builtin sequence R.

    The two equivalent closed forms of the 1/n coefficient are both built and
    compared exactly, guarding against transcription slips in either one.
    """
    c0 = QuadNumber(3, 2)
    quotient_form = -(QuadNumber(174, 123) / QuadNumber(20, 14))
    split_form = QuadNumber(Fraction(-9, 2), -3)
    if quotient_form != split_form:
        raise AssertionError("the two closed forms of the ratio bound disagree")
    return BoundFunction(c0, split_form)


R_RATIO_BOUND = _build_ratio_bound()


@dataclass(frozen=True)
class XiaParameters:
    """Parameters of the root-log-concavity criterion: a ratio bound f(n) =
    b(n - shift), a positive rational k0 and a starting index n0 subject to
    k0 < n0² + n0 + 2."""

    bound: BoundFunction
    k0: Fraction = Fraction(4)
    n0: int = 9
    shift: int = 1

    @property
    def cap(self) -> int:
        return self.n0 * self.n0 + self.n0 + 2

    def f(self, n: int) -> QuadNumber:
        return self.bound.eval(n - self.shift)


DEFAULT_XIA = XiaParameters(bound=R_RATIO_BOUND)


def eval_bound(bound: BoundFunction, n: int) -> QuadNumber:
    return bound.eval(n)


def check_interlacing(store: TermStore, bound: BoundFunction,
                      lo: int, hi: int) -> CertificateReport:
    """Certify b(n) < z_(n+1)/z_n < b(n+1) for every n in [lo, hi], with one
    exact sign witness pair per index."""
    claim = f"interlacing:{store.name or 'sequence'}[{lo}..{hi}]"
    if lo < 1:
        return CertificateReport(claim, Status.REFUTED,
                                 (Step("range must start at n >= 1", False),))
    steps: list[Step] = []
    for n in range(lo, hi + 1):
        r_n = Fraction(store.term(n + 1), store.term(n))
        lower_gap = QuadNumber(r_n) - bound.eval(n)
        upper_gap = bound.eval(n + 1) - QuadNumber(r_n)
        ok = lower_gap.sign() > 0 and upper_gap.sign() > 0
        steps.append(Step(
            f"b({n}) < r_{n} < b({n + 1})", ok,
            {"n": n, "r_n": r_n, "lower_gap": lower_gap, "upper_gap": upper_gap},
            anchor="interlacing",
        ))
        if not ok:
            return CertificateReport(claim, Status.REFUTED, tuple(steps))
    return CertificateReport(claim, Status.CERTIFIED, tuple(steps))


@dataclass(frozen=True)
class SignCertificate:
    """Outcome of a constant-sign certificate for a polynomial on [k0, ∞)."""

    certified: bool
    sign: int
    strict: bool
    method: str
    zero_at: Optional[QuadNumber]
    report: CertificateReport


def _shift_test(p: QuadPolynomial, k0: int) -> Optional[SignCertificate]:
    shifted = p.shift(k0)
    signs = [c.sign() for c in shifted.coeffs]
    if all(s >= 0 for s in signs):
        sign = 1
    elif all(s <= 0 for s in signs):
        sign = -1
    else:
        return None
    constant_zero = shifted.coeff(0).sign() == 0
    step = Step(
        f"all coefficients of p(x+{k0}) share sign {sign:+d}", True,
        {"coefficients": tuple(shifted.coeffs)}, anchor="sign-shift-test",
    )
    report = CertificateReport(f"sign-beyond:{k0}", Status.CERTIFIED, (step,))
    return SignCertificate(True, sign, not constant_zero, "shift",
                           QuadNumber(k0) if constant_zero else None, report)


def _vertex_test(p: QuadPolynomial, k0: int) -> SignCertificate:
    claim = f"sign-beyond:{k0}"
    steps: list[Step] = []
    if p.degree == 0:
        sign = p.coeff(0).sign()
        steps.append(Step("constant polynomial", True, p.coeff(0), anchor="sign-vertex"))
        report = CertificateReport(claim, Status.CERTIFIED, tuple(steps))
        return SignCertificate(True, sign, True, "vertex", None, report)
    value_at_k0 = p.eval(k0)
    s_k0 = value_at_k0.sign()
    if p.degree == 1:
        slope_sign = p.leading.sign()
        steps.append(Step(f"slope sign {slope_sign:+d}", True, p.leading, anchor="sign-vertex"))
        steps.append(Step(f"value at {k0}", True, value_at_k0, anchor="sign-vertex"))
        if s_k0 == slope_sign or s_k0 == 0:
            report = CertificateReport(claim, Status.CERTIFIED, tuple(steps))
            return SignCertificate(True, slope_sign, s_k0 != 0, "vertex",
                                   QuadNumber(k0) if s_k0 == 0 else None, report)
        steps.append(Step("sign changes beyond the threshold", False, value_at_k0,
                          anchor="sign-vertex"))
        return SignCertificate(False, 0, False, "vertex", None,
                               CertificateReport(claim, Status.REFUTED, tuple(steps)))
    if p.degree != 2:
        steps.append(Step("vertex argument needs degree <= 2", False, p.degree,
                          anchor="sign-vertex"))
        return SignCertificate(False, 0, False, "vertex", None,
                               CertificateReport(claim, Status.REFUTED, tuple(steps)))
    a, b = p.coeff(2), p.coeff(1)
    s_a = a.sign()
    axis = -b / (a * 2)
    steps.append(Step(f"leading coefficient sign {s_a:+d}", True, a, anchor="sign-vertex"))
    steps.append(Step("axis of symmetry -b/(2a)", True, axis, anchor="sign-vertex"))
    if axis <= k0:
        # monotone beyond k0, so the value there settles the sign
        steps.append(Step(f"axis <= {k0}; value at {k0} settles the sign", True,
                          value_at_k0, anchor="sign-vertex"))
        if s_k0 == s_a or s_k0 == 0:
            report = CertificateReport(claim, Status.CERTIFIED, tuple(steps))
            return SignCertificate(True, s_a, s_k0 != 0, "vertex",
                                   QuadNumber(k0) if s_k0 == 0 else None, report)
        steps.append(Step("sign changes beyond the threshold", False, value_at_k0,
                          anchor="sign-vertex"))
        return SignCertificate(False, 0, False, "vertex", None,
                               CertificateReport(claim, Status.REFUTED, tuple(steps)))
    extremum = p.eval(axis)
    s_ext = extremum.sign()
    steps.append(Step(f"axis > {k0}; extremum value settles the sign", True,
                      extremum, anchor="sign-vertex"))
    if s_ext == s_a or s_ext == 0:
        report = CertificateReport(claim, Status.CERTIFIED, tuple(steps))
        return SignCertificate(True, s_a, s_ext != 0, "vertex",
                               axis if s_ext == 0 else None, report)
    steps.append(Step("polynomial crosses zero beyond the threshold", False, extremum,
                      anchor="sign-vertex"))
    return SignCertificate(False, 0, False, "vertex", None,
                           CertificateReport(claim, Status.REFUTED, tuple(steps)))


def sign_beyond(p: QuadPolynomial, k0: int, method: str = "auto") -> SignCertificate:
    """Certify that sign(p(k)) is constant for all real k >= k0.

    'shift' expands p(x + k0) and requires all coefficients to share a sign;
    'vertex' uses monotonicity beyond the axis of symmetry (degree <= 2).
    'auto' prefers the shift test and falls back to the vertex argument;
    an inconclusive outcome is surfaced, never silently widened.
    """
    if p.is_zero:
        raise ValueError("sign certificate needs a nonzero polynomial")
    if method not in ("auto", "shift", "vertex"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "shift"):
        by_shift = _shift_test(p, k0)
        if by_shift is not None:
            return by_shift
        if method == "shift":
            report = CertificateReport(
                f"sign-beyond:{k0}", Status.REFUTED,
                (Step("mixed coefficient signs after shift", False,
                      {"coefficients": tuple(p.shift(k0).coeffs)},
                      anchor="sign-shift-test"),),
            )
            return SignCertificate(False, 0, False, "shift", None, report)
    if method == "auto" and p.degree > 2:
        report = CertificateReport(
            f"sign-beyond:{k0}", Status.REFUTED,
            (Step("inconclusive: shift test mixed and degree > 2", False, p.degree,
                  anchor="sign-inconclusive"),),
        )
        return SignCertificate(False, 0, False, "auto", None, report)
    return _vertex_test(p, k0)


# quadratic numerators of the two inductive-step combinations, ascending degree
_STEP_UPPER_NUMER = QuadPolynomial([
    QuadNumber(-3591, -2532),   # -3·(1197 + 844·√2)
    QuadNumber(9438, 6660),     # 3·(3146 + 2220·√2)
    QuadNumber(-4296, -3048),   # -24·(179 + 127·√2)
])
_STEP_UPPER_DENOM = from_int_coeffs([0, 32, 48, 16])        # 16·k·(k+1)·(k+2)
_STEP_LOWER_NUMER = QuadPolynomial([
    QuadNumber(-915, -654),
    QuadNumber(-1557, -1110),
    QuadNumber(564, 396),
])
_STEP_LOWER_DENOM = from_int_coeffs([32, 64, 40, 8])        # 8·(k+1)·(k+2)²


def verify_inductive_step(bound: BoundFunction = R_RATIO_BOUND) -> CertificateReport:
    """Certify the induction that propagates the interlacing window.

    Two rational-function identities in the step variable k are verified
    exactly, then the sign of each quadratic numerator is certified beyond
    its threshold (k >= 3 negative for the upper step, k >= 4 positive for
    the lower step) by both the vertex argument and the shift test.
    """
    claim = "interlacing-inductive-step"
    b0 = bound.as_rational_function(0)
    b1 = bound.as_rational_function(1)
    b2 = bound.as_rational_function(2)
    b3 = bound.as_rational_function(3)

    def poly(*coeffs: int) -> QuadRationalFunction:
        return QuadRationalFunction.from_poly(from_int_coeffs(coeffs))

    steps: list[Step] = []
    children: list[CertificateReport] = []

    lhs_upper = (poly(13, 7) * b0 * b1 * b2 - poly(15, 7) * b0 * b1
                 + poly(1, 1) * b2 - poly(3, 1) * b0 * b1 * b2 * b3)
    rhs_upper = QuadRationalFunction(_STEP_UPPER_NUMER, _STEP_UPPER_DENOM)
    upper_equal = lhs_upper == rhs_upper
    steps.append(Step("upper-step combination reduces to its closed form", upper_equal,
                      rhs_upper.to_str("k"), anchor="inductive-identity-upper"))

    lhs_lower = (poly(13, 7) * b1 * b2 - poly(15, 7) * b2
                 + poly(1, 1) - poly(3, 1) * b1 * b2 * b2)
    rhs_lower = QuadRationalFunction(_STEP_LOWER_NUMER, _STEP_LOWER_DENOM)
    lower_equal = lhs_lower == rhs_lower
    steps.append(Step("lower-step combination reduces to its closed form", lower_equal,
                      rhs_lower.to_str("k"), anchor="inductive-identity-lower"))

    upper_vertex = sign_beyond(_STEP_UPPER_NUMER, 3, method="vertex")
    upper_shift = sign_beyond(_STEP_UPPER_NUMER, 3, method="shift")
    upper_ok = (upper_vertex.certified and upper_vertex.sign == -1
                and upper_vertex.strict and upper_shift.certified
                and upper_shift.sign == -1)
    steps.append(Step("upper-step numerator negative for k >= 3 (vertex and shift)",
                      upper_ok, _STEP_UPPER_NUMER.eval(3),
                      anchor="inductive-sign-upper"))
    children.append(upper_vertex.report)

    lower_vertex = sign_beyond(_STEP_LOWER_NUMER, 4, method="vertex")
    lower_shift = sign_beyond(_STEP_LOWER_NUMER, 4, method="shift")
    lower_ok = (lower_vertex.certified and lower_vertex.sign == 1
                and lower_vertex.strict and lower_shift.certified
                and lower_shift.sign == 1)
    steps.append(Step("lower-step numerator positive for k >= 4 (vertex and shift)",
                      lower_ok, _STEP_LOWER_NUMER.eval(4),
                      anchor="inductive-sign-lower"))
    children.append(lower_vertex.report)

    denom_upper = sign_beyond(_STEP_UPPER_DENOM, 3, method="shift")
    denom_lower = sign_beyond(_STEP_LOWER_DENOM, 4, method="shift")
    denom_ok = (denom_upper.certified and denom_upper.sign == 1
                and denom_lower.certified and denom_lower.sign == 1)
    steps.append(Step("both denominators positive beyond their thresholds", denom_ok,
                      None, anchor="inductive-denominators"))

    ok = upper_equal and lower_equal and upper_ok and lower_ok and denom_ok
    return CertificateReport(claim, Status.CERTIFIED if ok else Status.REFUTED,
                             tuple(steps), tuple(children))


_XIA_II_TARGET_NUMER = from_int_coeffs([-12, -2, 2])        # 2·(n-3)·(n+2)
_XIA_II_TARGET_DENOM = from_int_coeffs([0, 2, 5, 3, 2])     # n·(2n+1)·(n²+n+2)


def check_xia(store: TermStore, params: XiaParameters = DEFAULT_XIA,
              horizon: int = 200) -> CertificateReport:
    """Certify the three conditions of the root-log-concavity criterion.

    Condition (i) is checked exactly up to the finite horizon (the unbounded
    version is the inductive interlacing certificate); condition (ii) is
    certified symbolically for all n >= n0; condition (iii) is a single exact
    comparison at n0.
    """
    claim = f"xia:{store.name or 'sequence'}(k0={params.k0}, n0={params.n0})"
    steps: list[Step] = []
    children: list[CertificateReport] = []

    hypothesis_ok = params.k0 < params.cap
    steps.append(Step(f"hypothesis k0 < n0²+n0+2 = {params.cap}", hypothesis_ok,
                      {"k0": params.k0, "cap": params.cap}, anchor="xia-hypothesis"))

    lo = max(params.n0, params.shift + 1)
    i_ok = True
    i_witness: Optional[dict] = None
    for n in range(lo, horizon + 1):
        f_n = params.f(n)
        f_next = params.f(n + 1)
        q_n = Fraction(store.term(n), store.term(n - 1))
        ok_here = (f_n.sign() > 0
                   and (QuadNumber(q_n) - f_n).sign() > 0
                   and (f_next - QuadNumber(q_n)).sign() > 0)
        if not ok_here:
            i_ok = False
            i_witness = {"n": n, "f_n": f_n, "q_n": q_n, "f_next": f_next}
            break
    steps.append(Step(
        f"(i) 0 < f(n) < z_n/z_(n-1) < f(n+1) for {lo} <= n <= {horizon} "
        "(certified up to the finite horizon only)",
        i_ok, i_witness, anchor="xia-i"))

    f_n1 = params.bound.as_rational_function(1 - params.shift)
    f_n3 = params.bound.as_rational_function(3 - params.shift)
    delta = (f_n1 / f_n3 - 1
             + QuadRationalFunction(QuadPolynomial([params.k0]),
                                    from_int_coeffs([2, 1, 1])))
    ii_ok = True
    if (params.bound == R_RATIO_BOUND and params.k0 == 4 and params.shift == 1):
        target = QuadRationalFunction(_XIA_II_TARGET_NUMER, _XIA_II_TARGET_DENOM)
        reduction_ok = delta == target
        ii_ok &= reduction_ok
        steps.append(Step("(ii) margin reduces to 2(n-3)(n+2) / (n(2n+1)(n²+n+2))",
                          reduction_ok, delta.to_str("n"), anchor="xia-ii-reduction"))
    numer_cert = sign_beyond(delta.numer, params.n0, method="auto")
    denom_cert = sign_beyond(delta.denom, params.n0, method="auto")
    positive = (numer_cert.certified and denom_cert.certified
                and numer_cert.strict and denom_cert.strict
                and numer_cert.sign * denom_cert.sign == 1)
    ii_ok &= positive
    steps.append(Step(f"(ii) margin strictly positive for all n >= {params.n0}",
                      positive, delta.to_str("n"), anchor="xia-ii"))
    children.extend((numer_cert.report, denom_cert.report))

    base = 1 - params.k0 / params.cap
    lhs = QuadNumber(base ** params.cap) * params.f(params.n0) ** (2 * params.n0)
    diff = lhs - store.term(params.n0) ** 2
    iii_ok = diff.sign() > 0
    steps.append(Step(
        f"(iii) (1-k0/{params.cap})^{params.cap}·f({params.n0})^{2 * params.n0} "
        f"> z_{params.n0}²",
        iii_ok, diff, anchor="xia-iii"))

    ok = hypothesis_ok and i_ok and ii_ok and iii_ok
    return CertificateReport(claim, Status.CERTIFIED if ok else Status.REFUTED,
                             tuple(steps), tuple(children))


def find_min_n0(store: TermStore, bound: BoundFunction, k0: Fraction,
                lo: int, hi: int, shift: int = 1) -> Optional[int]:
    """Smallest n0 in [lo, hi] passing the hypothesis, condition (iii) and
    condition (i) at n0 itself; None when the sweep is empty-handed."""
    for n0 in range(lo, hi + 1):
        params = XiaParameters(bound=bound, k0=k0, n0=n0, shift=shift)
        if not params.k0 < params.cap:
            continue
        if n0 - shift < 1 or not store.covers(n0 - 1, n0 + 1):
            continue
        q_n = Fraction(store.term(n0), store.term(n0 - 1))
        f_n = params.f(n0)
        f_next = params.f(n0 + 1)
        if not (f_n.sign() > 0 and (QuadNumber(q_n) - f_n).sign() > 0
                and (f_next - QuadNumber(q_n)).sign() > 0):
            continue
        base = 1 - params.k0 / params.cap
        lhs = QuadNumber(base ** params.cap) * f_n ** (2 * n0)
        if (lhs - store.term(n0) ** 2).sign() > 0:
            return n0
    return None


def assemble_theorem_report(seq: SequenceDef, store: TermStore,
                            horizon: int = 200,
                            bound: BoundFunction = R_RATIO_BOUND,
                            xia: XiaParameters = DEFAULT_XIA,
                            consistency_upto: int = 200) -> CertificateReport:
    """Compose the full certificate for the builtin sequence R: consecutive
    ratios strictly increase from n=3 towards 3+2√2, and the n-th root
    sequence is strictly log-concave from n=5.

    Children mirror the proof structure; a refuted child stops the ledger.
    """
    claim = (f"{seq.name}: ratios strictly increasing from n=3 to 3+2√2; "
             "n-th roots strictly log-concave from n=5")
    if horizon < 12:
        return CertificateReport(claim, Status.REFUTED,
                                 (Step("horizon must be >= 12 (needs the r_11 witness)",
                                       False, horizon),))
    if not store.covers(0, horizon + 1):
        return CertificateReport(claim, Status.REFUTED,
                                 (Step(f"store must cover [0, {horizon + 1}]", False),))
    children: list[CertificateReport] = []
    steps: list[Step] = []

    def refuted() -> CertificateReport:
        return CertificateReport(claim, Status.REFUTED, tuple(steps), tuple(children))

    # 0. the two generation routes must agree before anything is certified
    upto = min(horizon, consistency_upto)
    order = seq.recurrence.order if seq.recurrence else 0
    consistency = verify_recurrence(seq, store, 0, upto - order)
    children.append(consistency)
    if not consistency.certified:
        return refuted()
    by_sum = build_by_summation(seq, upto)
    mismatch = next((n for n in range(upto + 1)
                     if by_sum.term(n) != store.term(n)), None)
    steps.append(Step(f"summation and recurrence terms agree on [0, {upto}]",
                      mismatch is None,
                      None if mismatch is None else {"n": mismatch,
                                                     "summation": by_sum.term(mismatch),
                                                     "recurrence": store.term(mismatch)},
                      anchor="generation-consistency"))
    if mismatch is not None:
        return refuted()

    # 1. ratio monotonicity: base window + inductive step + increasing bound
    base = check_interlacing(store, bound, 3, 8)
    children.append(base)
    if not base.certified:
        return refuted()
    inductive = verify_inductive_step(bound)
    children.append(inductive)
    if not inductive.certified:
        return refuted()
    steps.append(Step("bound sequence strictly increasing (c1 < 0)",
                      bound.is_increasing, bound.c1, anchor="bound-increasing"))
    sweep = check_ratio_monotone(store, 3, horizon - 1, "increasing", strict=True)
    steps.append(Step(f"direct ratio cross-check on [3, {horizon - 1}]",
                      sweep.verdict.holds, sweep.witness, anchor="ratio-increasing"))
    if not (bound.is_increasing and sweep.verdict.holds):
        return refuted()

    # 2. limit: the enclosure pins every ratio within a shrinking window of 3+2√2
    enclosure = limit_enclosure(store, bound, 3, horizon - 1)
    steps.append(Step(f"limit enclosure certified on [3, {horizon - 1}]",
                      enclosure.verdict.holds, enclosure.witness,
                      anchor="limit-enclosure"))
    if not enclosure.verdict.holds:
        return refuted()

    # 3. n-th roots strictly increasing, with explicit small-index witnesses
    root_steps: list[Step] = []
    for n in range(1, 11):
        diff = power_difference(store.term(n), n + 1, store.term(n + 1), n)
        root_steps.append(Step(f"z_{n}^{n + 1} - z_{n + 1}^{n} < 0", diff < 0, diff,
                               anchor="root-increasing-small"))
    root_sweep = check_root_monotone(store, 1, min(horizon, 100), "increasing", True)
    root_steps.append(Step(f"power comparisons on [1, {min(horizon, 100)}]",
                           root_sweep.verdict.holds, root_sweep.witness,
                           anchor="root-increasing-sweep"))
    r11 = Fraction(store.term(12), store.term(11))
    witness_ok = r11 > 5 and store.term(3) == 25
    root_steps.append(Step("r_11 > 5 and 5² equals z_3", witness_ok,
                           {"r_11": r11, "threshold": 5, "z_3": store.term(3)},
                           anchor="root-increasing-tail"))
    roots_ok = all(s.ok for s in root_steps)
    children.append(CertificateReport("n-th roots strictly increasing",
                                      Status.CERTIFIED if roots_ok else Status.REFUTED,
                                      tuple(root_steps)))
    if not roots_ok:
        return refuted()

    # 4. root log-concavity from n=5: small window exactly, the rest by criterion
    small = check_root_log_concave(store, 6, 9, strict=True)
    trend_rows, _trend = root_ratio_trend(store, 5, 9, digits=8)
    xia_report = check_xia(store, xia, horizon)
    children.append(xia_report)
    root_concave_steps = [
        Step("exact three-point checks at n=6..9 (window from 5)",
             small.verdict is small.verdict.HOLDS_STRICT, small.witness,
             anchor="root-log-concave-small"),
        Step("root-ratio table n=5..9 (rendering only)", True,
             tuple(f"n={n}: {text}" for n, text, _ in trend_rows),
             anchor="root-ratio-table"),
        Step(f"criterion certified from n0={xia.n0}", xia_report.certified, None,
             anchor="root-log-concave-criterion"),
    ]
    concave_ok = all(s.ok for s in root_concave_steps)
    children.append(CertificateReport("n-th roots strictly log-concave from n=5",
                                      Status.CERTIFIED if concave_ok else Status.REFUTED,
                                      tuple(root_concave_steps)))
    if not concave_ok:
        return refuted()

    steps.append(Step("both log-behavior claims certified", True, None,
                      anchor="conclusion"))
    return CertificateReport(claim, Status.CERTIFIED, tuple(steps), tuple(children))
