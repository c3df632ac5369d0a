"""Documentography: grouping records and finding related ones.

Records are grouped by the usual filing criteria (alphabet, date,
theme, project, format, location) and related by shared thematic tags,
scored with Jaccard similarity over tag sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnknownRecord
from .model import UmsRecord, nfc

CRITERIA = ("alphabet", "date", "theme", "project", "format", "location")

PROJECT_TAG_PREFIX = "project:"

#: bucket names for records a criterion cannot place
UNTAGGED = "~untagged"
UNDATED = "~undated"
UNASSIGNED = "~unassigned"
UNKNOWN = "~unknown"


def _group_key(record: UmsRecord, criterion: str) -> str:
    if criterion == "alphabet":
        return nfc(record.name)[:1] if record.name else UNKNOWN
    if criterion == "date":
        return record.date[:4] if record.date else UNDATED
    if criterion == "theme":
        return record.tags[0] if record.tags else UNTAGGED
    if criterion == "project":
        for tag in record.tags:
            if tag.startswith(PROJECT_TAG_PREFIX):
                return tag[len(PROJECT_TAG_PREFIX) :]
        return UNASSIGNED
    if criterion == "format":
        return record.formats[0] if record.formats else UNKNOWN
    if criterion == "location":
        return record.locations[0] if record.locations else UNKNOWN
    raise ValueError(f"unknown grouping criterion: {criterion!r}")


def group_by(
    records: Iterable[UmsRecord], criterion: str
) -> list[tuple[str, list[UmsRecord]]]:
    """Partition records into named groups; every record lands in
    exactly one group, and groups and members sort lexicographically."""
    if criterion not in CRITERIA:
        raise ValueError(f"unknown grouping criterion: {criterion!r}")
    buckets: dict[str, list[UmsRecord]] = {}
    for record in records:
        buckets.setdefault(_group_key(record, criterion), []).append(record)
    out = []
    for key in sorted(buckets):
        members = sorted(buckets[key], key=lambda r: r.name)
        out.append((key, members))
    return out


def jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


@dataclass(frozen=True)
class CorpusIndex:
    """Immutable snapshot of a record corpus plus its tag/location indexes."""

    records: tuple[UmsRecord, ...]
    tag_index: dict[str, tuple[str, ...]]
    location_index: dict[str, tuple[str, ...]]


def build_index(records: Sequence[UmsRecord]) -> CorpusIndex:
    """One-pass index build; rebuilding from the same records is identical."""
    tag_index: dict[str, list[str]] = {}
    location_index: dict[str, list[str]] = {}
    for record in records:
        for tag in record.tags:
            tag_index.setdefault(tag, []).append(record.name)
        for location in record.locations:
            location_index.setdefault(location, []).append(record.name)
    return CorpusIndex(
        records=tuple(records),
        tag_index={t: tuple(sorted(ns)) for t, ns in sorted(tag_index.items())},
        location_index={
            loc: tuple(sorted(ns)) for loc, ns in sorted(location_index.items())
        },
    )


def related(index: CorpusIndex, record: UmsRecord) -> list[tuple[str, float]]:
    """Rank other records sharing at least one tag by Jaccard similarity.

    Ties break on name; the record itself is excluded.  Raises
    UnknownRecord when *record* is not part of the index.
    """
    if record not in index.records:
        raise UnknownRecord(f"record not in index: {record.name!r}")
    mine = frozenset(record.tags)
    scored: list[tuple[str, float]] = []
    for other in index.records:
        if other is record or other == record:
            continue
        theirs = frozenset(other.tags)
        if not (mine & theirs):
            continue
        scored.append((other.name, jaccard(mine, theirs)))
    scored.sort(key=lambda item: (-item[1], item[0]))
    return scored
