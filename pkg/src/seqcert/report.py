from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator, Optional

from .quadratic import QuadNumber

#: witnesses longer than this many characters are abbreviated when rendered;
#: the underlying objects always keep the exact value.
WITNESS_RENDER_LIMIT = 100


class Verdict(str, Enum):
    HOLDS_STRICT = "holds_strict"
    HOLDS_WEAK = "holds_weak"
    FAILS = "fails"

    @property
    def holds(self) -> bool:
        return self is not Verdict.FAILS


class Status(str, Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    EVIDENCE_ONLY = "evidence-only"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one exact sequence check over an index range.

    Witness values are exact (int, Fraction or QuadNumber), never floats.
    """

    property_name: str
    lo: int
    hi: int
    verdict: Verdict
    first_violation: Optional[int] = None
    witness: Optional[dict] = None
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if (self.verdict is Verdict.FAILS) != (self.first_violation is not None):
            raise ValueError("first_violation must be present exactly when the check fails")


@dataclass(frozen=True)
class Step:
    """One certified (or refuted) assertion inside a CertificateReport."""

    description: str
    ok: bool
    witness: object = None
    anchor: str = ""


@dataclass(frozen=True)
class CertificateReport:
    claim: str
    status: Status
    steps: tuple[Step, ...] = ()
    children: tuple["CertificateReport", ...] = ()

    @property
    def certified(self) -> bool:
        return self.status is Status.CERTIFIED

    def walk(self) -> Iterator["CertificateReport"]:
        yield self
        for child in self.children:
            yield from child.walk()

    def first_failure(self) -> Optional[Step]:
        for report in self.walk():
            for step in report.steps:
                if not step.ok:
                    return step
        return None


def _int_str(value: int) -> str:
    digits = int(value.bit_length() * 0.30103) + 2
    if digits > sys.get_int_max_str_digits() > 0:
        sys.set_int_max_str_digits(digits + 100)
    text = str(value)
    if len(text) > WITNESS_RENDER_LIMIT:
        return f"{text[:24]}…({len(text.lstrip('-'))} digits)"
    return text


def _decimal_of(value: QuadNumber) -> str:
    mag = abs(value)
    if mag >= 10**6 or (mag != 0 and mag < Fraction(1, 10**6)):
        return value.to_sci(6)
    return value.to_decimal(6)


def render_witness(value: object) -> tuple[str, str]:
    """Render a witness both exactly and as a decimal approximation."""
    if value is None:
        return "", ""
    if isinstance(value, bool):
        return str(value), ""
    if isinstance(value, int):
        exact = _int_str(value)
        dec = QuadNumber(value).to_sci(6) if abs(value) >= 10**6 else exact
        return exact, dec
    if isinstance(value, Fraction):
        return str(value), _decimal_of(QuadNumber(value))
    if isinstance(value, QuadNumber):
        return str(value), _decimal_of(value)
    if isinstance(value, dict):
        parts = []
        for key, sub in value.items():
            exact, _ = render_witness(sub)
            parts.append(f"{key}={exact if exact else sub}")
        return "; ".join(parts), ""
    if isinstance(value, (tuple, list)):
        return ", ".join(render_witness(v)[0] for v in value), ""
    return str(value), ""


def _status_mark(ok: bool) -> str:
    return "ok" if ok else "FAIL"


def _render_plain(report: CertificateReport, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = [f"{pad}[{report.status.value}] {report.claim}"]
    for step in report.steps:
        exact, dec = render_witness(step.witness)
        suffix = f" :: {exact}" if exact else ""
        if dec and dec != exact:
            suffix += f" (≈ {dec})"
        lines.append(f"{pad}  - {_status_mark(step.ok):4s} {step.description}{suffix}")
    for child in report.children:
        lines.extend(_render_plain(child, indent + 1))
    return lines


def _render_markdown(report: CertificateReport, level: int = 2) -> list[str]:
    lines = [f"{'#' * level} {report.claim} — **{report.status.value}**", ""]
    if report.steps:
        lines.append("| step | status | witness | decimal |")
        lines.append("| --- | --- | --- | --- |")
        for step in report.steps:
            exact, dec = render_witness(step.witness)
            anchor = f" `{step.anchor}`" if step.anchor else ""
            lines.append(
                f"| {step.description}{anchor} | {_status_mark(step.ok)} | {exact} | {dec} |"
            )
        lines.append("")
    for child in report.children:
        lines.extend(_render_markdown(child, min(level + 1, 6)))
    return lines


def _csv_quote(text: str) -> str:
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _render_csv(report: CertificateReport, prefix: str = "") -> list[str]:
    claim = f"{prefix}{report.claim}"
    lines = []
    for step in report.steps:
        exact, dec = render_witness(step.witness)
        row = [claim, step.description, _status_mark(step.ok), exact, dec]
        lines.append(",".join(_csv_quote(cell) for cell in row))
    for child in report.children:
        lines.extend(_render_csv(child, prefix=f"{claim}/"))
    return lines


def render_report(report: CertificateReport, fmt: str = "plain") -> str:
    """Deterministic rendering of a certificate report.

    Formats: plain (indented text), markdown (one table per claim) and csv
    (flat rows claim,step,status,witness,decimal).
    """
    if fmt == "plain":
        return "\n".join(_render_plain(report)) + "\n"
    if fmt == "markdown":
        return "\n".join(_render_markdown(report)) + "\n"
    if fmt == "csv":
        header = "claim,step,status,witness,decimal"
        return "\n".join([header, *_render_csv(report)]) + "\n"
    raise ValueError(f"unknown format: {fmt!r}")


def render_check(result: CheckResult, fmt: str = "plain") -> str:
    """Render a CheckResult through the same machinery as reports."""
    steps = []
    range_note = f"n in [{result.lo}, {result.hi}]"
    steps.append(Step(range_note, result.verdict.holds, result.verdict.value))
    if result.first_violation is not None:
        steps.append(Step(f"first violation at n={result.first_violation}", False,
                          result.witness))
    for note in result.notes:
        steps.append(Step(note, True))
    status = Status.CERTIFIED if result.verdict.holds else Status.REFUTED
    return render_report(CertificateReport(result.property_name, status, tuple(steps)), fmt)
