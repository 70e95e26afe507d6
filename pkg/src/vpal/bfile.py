"""OEIS b-file reading and writing.

A b-file holds one ``index value`` pair per line; ``#`` starts a comment.
Indices must be contiguous and ascending from whatever offset the first
line declares.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from vpal.errors import BFileParseError


@dataclass(frozen=True)
class SequenceRecord:
    index: int
    value: int


def parse_bfile(lines: Iterable[str]) -> list[SequenceRecord]:
    records: list[SequenceRecord] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileParseError(lineno, raw.rstrip("\n"), "expected 'index value'")
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileParseError(lineno, raw.rstrip("\n"), "non-integer field") from None
        if records and index != records[-1].index + 1:
            raise BFileParseError(lineno, raw.rstrip("\n"), f"index {index} does not follow {records[-1].index}")
        records.append(SequenceRecord(index, value))
    return records


def read_bfile(path: str | Path) -> list[SequenceRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_bfile(fh)


def records_from_values(values: Iterable[int], offset: int = 1) -> list[SequenceRecord]:
    return [SequenceRecord(i, v) for i, v in enumerate(values, offset)]


def format_bfile(records: Iterable[SequenceRecord]) -> str:
    return "".join(f"{r.index} {r.value}\n" for r in records)


def first_mismatch(expected: list[SequenceRecord], computed: dict[int, int]) -> int | None:
    """Index of the first record whose value differs from (or is absent in) ``computed``."""
    for rec in expected:
        if computed.get(rec.index) != rec.value:
            return rec.index
    return None
