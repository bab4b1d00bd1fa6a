"""
Plain-text persistence for base numbers and phi values.

File layout::

    cuspcount-cache v1 ring=6e62548938f73bed
    N 1 4 0 1 2
    PHI 3 1 1 10 0 0 16560

The first line carries the format version and a fingerprint of the ring
presentation.  Records are one per line, sorted by (kind, key), so equal
caches serialise to identical bytes.  Lines starting with ``#`` are comments.
"""
from __future__ import annotations

import os
import tempfile
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from . import ring
from .errors import (
    FingerprintMismatchError,
    RecordConflictError,
    RecordParseError,
    VersionMismatchError,
)

MAGIC = "cuspcount-cache"
VERSION = 1
ENV_VAR = "CUSPCOUNT_CACHE"
KEY_ARITY = {"N": 4, "PHI": 6}


@dataclass(frozen=True, order=True)
class MemoRecord:
    kind: str
    key: tuple[int, ...]
    value: Fraction

    def __post_init__(self):
        if self.kind not in KEY_ARITY:
            raise ValueError(f"unknown record kind {self.kind!r}")
        if len(self.key) != KEY_ARITY[self.kind]:
            raise ValueError(f"{self.kind} records take {KEY_ARITY[self.kind]} key integers")
        object.__setattr__(self, "key", tuple(int(k) for k in self.key))
        object.__setattr__(self, "value", Fraction(self.value))

    def to_line(self) -> str:
        return " ".join([self.kind, *map(str, self.key), format_value(self.value)])


def format_value(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_value(text: str) -> Fraction:
    num, sep, den = text.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"bad rational {text!r}") from None
    value = Fraction(p, q) if q else None
    if value is None or q <= 0 or value.numerator != p or value.denominator != q:
        raise ValueError(f"rational {text!r} is not in lowest terms with positive denominator")
    return value


def header() -> str:
    return f"{MAGIC} v{VERSION} ring={ring.fingerprint()}"


def parse_line(line: str, lineno: int | None = None) -> MemoRecord:
    parts = line.split()
    if not parts or parts[0] not in KEY_ARITY:
        raise RecordParseError(f"unknown record {line!r}", lineno)
    kind = parts[0]
    arity = KEY_ARITY[kind]
    if len(parts) != arity + 2:
        raise RecordParseError(f"{kind} record needs {arity} key fields and a value", lineno)
    try:
        key = tuple(int(p) for p in parts[1:1 + arity])
        value = parse_value(parts[-1])
    except ValueError as exc:
        raise RecordParseError(str(exc), lineno) from None
    return MemoRecord(kind, key, value)


def _check_header(line: str, lineno: int, require_fingerprint: bool) -> None:
    parts = line.split()
    if len(parts) < 2 or parts[0] != MAGIC:
        raise RecordParseError(f"missing {MAGIC} header", lineno)
    if parts[1] != f"v{VERSION}":
        raise VersionMismatchError(f"cache version {parts[1]} is not supported (expected v{VERSION})")
    fp = dict(p.split("=", 1) for p in parts[2:] if "=" in p).get("ring")
    if fp is None and require_fingerprint:
        raise FingerprintMismatchError("cache header carries no ring fingerprint")
    if fp is not None and fp != ring.fingerprint():
        raise FingerprintMismatchError(f"cache built for ring {fp}, this build uses {ring.fingerprint()}")


def dumps(records: Iterable[MemoRecord]) -> str:
    table = MemoTable()
    table.update(records)
    return "\n".join([header(), *(rec.to_line() for rec in table.records())]) + "\n"


def loads(text: str, require_header: bool = True) -> list[MemoRecord]:
    table = MemoTable()
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not seen_header and (require_header or line.startswith(MAGIC)):
            _check_header(line, lineno, require_fingerprint=require_header)
            seen_header = True
            continue
        seen_header = True
        rec = parse_line(line, lineno)
        try:
            table.put(rec)
        except RecordConflictError as exc:
            raise RecordConflictError(f"line {lineno}: {exc}") from None
    return table.records()


def save(path, records: Iterable[MemoRecord]) -> None:
    """Atomically write records to ``path`` (temp file + rename)."""
    path = Path(path)
    text = dumps(records)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(path, require_header: bool = True) -> list[MemoRecord]:
    return loads(Path(path).read_text(encoding="utf-8"), require_header=require_header)


def resolve_cache_path(cli_value: str | None) -> Path | None:
    value = cli_value or os.environ.get(ENV_VAR)
    return Path(value) if value else None


class MemoTable:
    """In-memory record table: concurrent reads, serialised writes."""

    def __init__(self):
        self._data: dict[tuple[str, tuple[int, ...]], Fraction] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._data)

    def get(self, kind: str, key: tuple[int, ...]) -> Fraction | None:
        return self._data.get((kind, tuple(key)))

    def put(self, rec: MemoRecord) -> None:
        with self._lock:
            old = self._data.setdefault((rec.kind, rec.key), rec.value)
        if old != rec.value:
            raise RecordConflictError(f"{rec.kind} {rec.key}: {old} vs {rec.value}")

    def update(self, records: Iterable[MemoRecord]) -> None:
        for rec in records:
            self.put(rec)

    def records(self) -> list[MemoRecord]:
        return sorted(MemoRecord(kind, key, value) for (kind, key), value in self._data.items())
