from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .sequences import (
    BINOMIAL_KINDS,
    BinomialFactor,
    BinomialSummand,
    Recurrence,
    SequenceDef,
    SequenceError,
)


class DefinitionError(ValueError):
    """Schema violation in a sequence definition file, with a field path."""

    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


def _expect(data: dict, field: str, kinds: tuple[type, ...], path: str,
            required: bool = True) -> object:
    if field not in data or data[field] is None:
        if required:
            raise DefinitionError(f"{path}{field}", "missing required field")
        return None
    value = data[field]
    if not isinstance(value, kinds):
        names = "/".join(k.__name__ for k in kinds)
        raise DefinitionError(f"{path}{field}", f"expected {names}, got {type(value).__name__}")
    return value


def _parse_pair(value: object, path: str) -> tuple[int, int]:
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(v, int) for v in value)):
        raise DefinitionError(path, "expected a pair of integers [slope, offset]")
    return value[0], value[1]


def _parse_summand(data: dict, path: str) -> BinomialSummand:
    factors_raw = _expect(data, "factors", (list,), path)
    if not factors_raw:
        raise DefinitionError(f"{path}factors", "at least one binomial factor required")
    factors = []
    for i, item in enumerate(factors_raw):
        fpath = f"{path}factors[{i}]."
        if not isinstance(item, dict):
            raise DefinitionError(fpath.rstrip("."), "expected an object")
        kind = _expect(item, "kind", (str,), fpath)
        if kind not in BINOMIAL_KINDS:
            raise DefinitionError(f"{fpath}kind",
                                  f"must be one of {', '.join(BINOMIAL_KINDS)}")
        exponent = _expect(item, "exponent", (int,), fpath, required=False)
        factors.append(BinomialFactor(str(kind), int(exponent) if exponent else 1))
    numer = data.get("linear_numerator")
    denom = data.get("linear_denominator")
    return BinomialSummand(
        tuple(factors),
        _parse_pair(numer, f"{path}linear_numerator") if numer is not None else None,
        _parse_pair(denom, f"{path}linear_denominator") if denom is not None else None,
    )


def _parse_recurrence(data: dict, path: str) -> Recurrence:
    order = _expect(data, "order", (int,), path)
    coeffs_raw = _expect(data, "coeffs", (list,), path)
    assert isinstance(order, int) and isinstance(coeffs_raw, list)
    if len(coeffs_raw) != order + 1:
        raise DefinitionError(f"{path}coeffs",
                              f"order {order} needs {order + 1} coefficient polynomials, "
                              f"got {len(coeffs_raw)}")
    coeffs = []
    for j, poly in enumerate(coeffs_raw):
        if (not isinstance(poly, list) or not poly
                or not all(isinstance(c, int) for c in poly)):
            raise DefinitionError(f"{path}coeffs[{j}]",
                                  "expected a nonempty list of integers (ascending powers)")
        coeffs.append(tuple(poly))
    return Recurrence(order, tuple(coeffs))


def definition_from_dict(data: dict, source: str = "definition") -> SequenceDef:
    name = _expect(data, "name", (str,), "")
    summand_raw = _expect(data, "summand", (dict,), "", required=False)
    recurrence_raw = _expect(data, "recurrence", (dict,), "", required=False)
    initial_raw = _expect(data, "initial_terms", (list,), "", required=False) or []
    initial = []
    for i, item in enumerate(initial_raw):
        if isinstance(item, int):
            initial.append(item)
        elif isinstance(item, str):
            try:
                initial.append(int(item))
            except ValueError:
                raise DefinitionError(f"initial_terms[{i}]",
                                      f"not an integer: {item!r}") from None
        else:
            raise DefinitionError(f"initial_terms[{i}]", "expected int or decimal string")
    try:
        return SequenceDef(
            name=str(name),
            summand=_parse_summand(summand_raw, "summand.") if summand_raw else None,
            recurrence=_parse_recurrence(recurrence_raw, "recurrence.")
            if recurrence_raw else None,
            initial_terms=tuple(initial),
        )
    except SequenceError as exc:
        raise DefinitionError(source, str(exc)) from None


def load_custom_definition(path: Union[str, Path]) -> SequenceDef:
    """Parse a JSON sequence definition with field-level diagnostics."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DefinitionError(str(path), f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise DefinitionError(str(path), "top-level value must be an object")
    return definition_from_dict(data, source=str(path))


def shipped_definition_path(name: str) -> Optional[Path]:
    candidate = Path(__file__).parent / "data" / f"{name}.json"
    return candidate if candidate.exists() else None
