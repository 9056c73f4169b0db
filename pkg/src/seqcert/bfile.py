from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path
from typing import Optional, Union

from .sequences import SequenceDef, TermStore


class BFileError(ValueError):
    """Malformed b-file content."""


def _allow_big_literals(text_length: int) -> None:
    # CPython caps int<->str conversion length; raise the cap when a term
    # legitimately exceeds it.
    limit = sys.get_int_max_str_digits()
    if 0 < limit <= text_length:
        sys.set_int_max_str_digits(text_length + 100)


def write_bfile(store: TermStore, path: Union[str, Path]) -> None:
    """Write "n value" lines, one per term, ascending and contiguous."""
    if len(store) == 0:
        raise BFileError("refusing to write an empty store")
    with Path(path).open("w", encoding="ascii") as handle:
        for offset, value in enumerate(store.terms):
            _allow_big_literals(int(value.bit_length() * 0.31) + 3)
            handle.write(f"{store.first_index + offset} {value}\n")


def read_bfile(path: Union[str, Path], name: str = "") -> TermStore:
    """Parse a b-file into a TermStore; '#' comment lines are skipped and
    index gaps are rejected."""
    first_index: Optional[int] = None
    terms: list[int] = []
    with Path(path).open("r", encoding="ascii") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise BFileError(f"{path}:{lineno}: expected 'index value', got {line!r}")
            try:
                index = int(parts[0])
                _allow_big_literals(len(parts[1]))
                value = int(parts[1])
            except ValueError as exc:
                raise BFileError(f"{path}:{lineno}: {exc}") from None
            if first_index is None:
                first_index = index
            elif index != first_index + len(terms):
                raise BFileError(
                    f"{path}:{lineno}: non-contiguous index: expected "
                    f"{first_index + len(terms)}, found {index}"
                )
            terms.append(value)
    if first_index is None:
        raise BFileError(f"{path}: no terms found")
    return TermStore(first_index, tuple(terms), name)


def definition_digest(seq: SequenceDef) -> str:
    """Stable content hash of a sequence definition."""
    canonical = json.dumps(seq.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()[:12]


class TermCache:
    """Disk cache of generated stores, one b-file per definition, keyed by
    name plus content hash: <root>/<name>-<hash>.bfile."""

    def __init__(self, root: Union[str, Path]) -> None:
        self.root = Path(root)

    def path_for(self, seq: SequenceDef) -> Path:
        return self.root / f"{seq.name}-{definition_digest(seq)}.bfile"

    def load(self, seq: SequenceDef, upto: int) -> Optional[TermStore]:
        path = self.path_for(seq)
        if not path.exists():
            return None
        store = read_bfile(path, seq.name)
        if store.last_index < upto:
            return None
        return store

    def save(self, store: TermStore, seq: SequenceDef) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(seq)
        existing = read_bfile(path, seq.name) if path.exists() else None
        if existing is None or existing.last_index < store.last_index:
            write_bfile(store, path)
        return path
