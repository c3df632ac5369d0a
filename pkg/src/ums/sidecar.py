"""The sidecar file format, version 1.

UTF-8, LF line endings, trailing newline required.  Line 1 is the
``ums: 1`` header, then ``key: value`` lines in fixed key order:
name, synonym*, format+, date, type?, summary?, language*, location*,
creator*, identifier*, access?, subject*, tag*, history*.

Serialization is canonical: the same record always produces the same
bytes, and ``parse_record(canonical_serialize(r)) == r``.
"""

from __future__ import annotations

import re

from .errors import (
    DuplicateSingletonKey,
    SidecarSyntaxError,
    UnknownKey,
)
from .escaping import decode_fields, escape, join_fields, split_fields, unescape
from .model import (
    ACCESS_PUBLIC,
    DOC_TYPES,
    EVENT_KINDS,
    IdentifierBinding,
    ProvenanceEvent,
    Subject,
    UmsRecord,
    require_complete,
)
from . import timestamps

SIDECAR_EXTENSION = ".ums"

STRICT = "strict"
LENIENT = "lenient"

#: sidecar keys in their only admissible order
_KEY_ORDER = (
    "name",
    "synonym",
    "format",
    "date",
    "type",
    "summary",
    "language",
    "location",
    "creator",
    "identifier",
    "access",
    "subject",
    "tag",
    "history",
)
_SINGLETON_KEYS = frozenset({"name", "date", "type", "summary", "access"})
_FORMAT_TOKEN_RE = re.compile(r"^[a-z0-9]+$")
_LANGUAGE_TOKEN_RE = re.compile(r"^[a-z]{2,3}$")
_SEQ_RE = re.compile(r"^(0|[1-9]\d*)$", re.ASCII)


def serialize_event(event: ProvenanceEvent) -> str:
    """Render one history value; this exact string feeds the digest chain."""
    return "|".join(
        (
            str(event.seq),
            event.timestamp,
            event.kind,
            escape(event.payload),
            event.prev,
        )
    )


def canonical_serialize(record: UmsRecord) -> bytes:
    """Serialize a complete record to canonical sidecar bytes."""
    require_complete(record)
    lines = ["ums: 1", f"name: {escape(record.name)}"]
    lines += [f"synonym: {escape(s)}" for s in record.synonyms]
    lines += [f"format: {f}" for f in record.formats]
    lines.append(f"date: {record.date}")
    if record.doc_type is not None:
        lines.append(f"type: {record.doc_type}")
    if record.summary is not None:
        lines.append(f"summary: {escape(record.summary)}")
    lines += [f"language: {c}" for c in record.languages]
    lines += [f"location: {escape(loc)}" for loc in record.locations]
    lines += [f"creator: {escape(c)}" for c in record.creators]
    lines += [
        f"identifier: {join_fields([b.system, b.id])}" for b in record.identifiers
    ]
    if record.access != ACCESS_PUBLIC:
        lines.append(f"access: {record.access}")
    for subj in record.subjects:
        if subj.source is None:
            lines.append(f"subject: {escape(subj.text)}")
        else:
            lines.append(f"subject: {join_fields([subj.text, subj.source])}")
    lines += [f"tag: {escape(t)}" for t in record.tags]
    lines += [f"history: {serialize_event(e)}" for e in record.history]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_history_value(value: str, line_no: int) -> ProvenanceEvent:
    raw = split_fields(value)
    if len(raw) != 5:
        raise SidecarSyntaxError(
            line_no, f"history needs 5 fields, got {len(raw)}"
        )
    seq_s, ts, kind, payload_esc, prev = raw
    if not _SEQ_RE.match(seq_s):
        raise SidecarSyntaxError(line_no, f"bad history seq: {seq_s!r}")
    if not timestamps.is_canonical(ts):
        raise SidecarSyntaxError(line_no, f"bad history timestamp: {ts!r}")
    if kind not in EVENT_KINDS:
        raise SidecarSyntaxError(line_no, f"bad history event: {kind!r}")
    try:
        payload = unescape(payload_esc)
    except ValueError as exc:
        raise SidecarSyntaxError(line_no, f"history payload: {exc}") from None
    if not (len(prev) == 16 and all(c in "0123456789abcdef" for c in prev)):
        raise SidecarSyntaxError(line_no, f"bad history prev digest: {prev!r}")
    return ProvenanceEvent(
        seq=int(seq_s), timestamp=ts, kind=kind, payload=payload, prev=prev
    )


def parse_record_with_warnings(
    data: bytes, mode: str = STRICT
) -> tuple[UmsRecord, list[str]]:
    """Parse sidecar bytes; lenient mode downgrades some rejects to warnings.

    Strict mode accepts exactly the grammar.  Lenient mode additionally
    tolerates unknown keys and missing required keys, reporting each as
    a warning string, so imperfect files can still be inspected.
    """
    if mode not in (STRICT, LENIENT):
        raise ValueError(f"unknown parse mode: {mode!r}")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise SidecarSyntaxError(0, f"not UTF-8: {exc}") from None
    if not text.endswith("\n"):
        raise SidecarSyntaxError(max(1, text.count("\n") + 1), "missing trailing newline")
    lines = text.split("\n")[:-1]
    if not lines or lines[0] != "ums: 1":
        raise SidecarSyntaxError(1, "expected header 'ums: 1'")

    warnings: list[str] = []
    values: dict[str, list[tuple[str, int]]] = {k: [] for k in _KEY_ORDER}
    order_pos = 0

    for line_no, line in enumerate(lines[1:], start=2):
        key, sep, value = line.partition(": ")
        if not sep or not key or value == "":
            raise SidecarSyntaxError(line_no, f"expected 'key: value', got {line!r}")
        if key not in _KEY_ORDER:
            if mode == STRICT:
                raise UnknownKey(line_no, key)
            warnings.append(f"line {line_no}: unknown key {key!r} ignored")
            continue
        pos = _KEY_ORDER.index(key)
        if pos < order_pos:
            raise SidecarSyntaxError(line_no, f"key {key!r} out of order")
        if key in _SINGLETON_KEYS and values[key]:
            raise DuplicateSingletonKey(line_no, key)
        order_pos = pos
        values[key].append((value, line_no))

    def single(key: str) -> tuple[str, int] | None:
        return values[key][0] if values[key] else None

    missing = [k for k in ("name", "format", "date") if not values[k]]
    if missing:
        if mode == STRICT:
            raise SidecarSyntaxError(
                len(lines), f"missing required key(s): {', '.join(missing)}"
            )
        warnings += [f"missing required key: {k}" for k in missing]

    def decode_one(key: str, value: str, line_no: int) -> str:
        raw = split_fields(value)
        if len(raw) != 1:
            raise SidecarSyntaxError(line_no, f"{key}: unescaped '|' in value")
        try:
            return unescape(raw[0])
        except ValueError as exc:
            raise SidecarSyntaxError(line_no, f"{key}: {exc}") from None

    def decode_simple(key: str) -> list[str]:
        return [decode_one(key, value, line_no) for value, line_no in values[key]]

    name = ""
    if single("name"):
        value, line_no = single("name")
        name = decode_one("name", value, line_no)

    for value, line_no in values["format"]:
        if not _FORMAT_TOKEN_RE.match(value):
            raise SidecarSyntaxError(line_no, f"bad format tag: {value!r}")
    for value, line_no in values["language"]:
        if not _LANGUAGE_TOKEN_RE.match(value):
            raise SidecarSyntaxError(line_no, f"bad language code: {value!r}")

    date = None
    if single("date"):
        value, line_no = single("date")
        if not timestamps.is_canonical(value):
            raise SidecarSyntaxError(line_no, f"bad date: {value!r}")
        date = value

    doc_type = None
    if single("type"):
        value, line_no = single("type")
        if value not in DOC_TYPES:
            raise SidecarSyntaxError(line_no, f"bad type: {value!r}")
        doc_type = value

    summary = None
    if single("summary"):
        value, line_no = single("summary")
        summary = decode_one("summary", value, line_no)

    access = ACCESS_PUBLIC
    if single("access"):
        value, line_no = single("access")
        if value not in ("0", "1", "2", "3"):
            raise SidecarSyntaxError(line_no, f"bad access level: {value!r}")
        access = int(value)

    identifiers = []
    for value, line_no in values["identifier"]:
        system, ident = decode_fields(value, 2, line_no, "identifier")
        identifiers.append(IdentifierBinding(system=system, id=ident))

    subjects = []
    for value, line_no in values["subject"]:
        raw = split_fields(value)
        if len(raw) not in (1, 2):
            raise SidecarSyntaxError(line_no, "subject needs 1 or 2 fields")
        try:
            parts = [unescape(f) for f in raw]
        except ValueError as exc:
            raise SidecarSyntaxError(line_no, f"subject: {exc}") from None
        subjects.append(Subject(text=parts[0], source=parts[1] if len(parts) == 2 else None))

    history = [_parse_history_value(v, n) for v, n in values["history"]]

    record = UmsRecord(
        name=name,
        synonyms=tuple(decode_simple("synonym")),
        formats=tuple(v for v, _ in values["format"]),
        date=date,
        doc_type=doc_type,
        summary=summary,
        languages=tuple(v for v, _ in values["language"]),
        locations=tuple(decode_simple("location")),
        creators=tuple(decode_simple("creator")),
        identifiers=tuple(identifiers),
        access=access,
        subjects=tuple(subjects),
        tags=tuple(decode_simple("tag")),
        history=tuple(history),
    )
    return record, warnings


def parse_record(data: bytes, mode: str = STRICT) -> UmsRecord:
    """Parse sidecar bytes into a record (see parse_record_with_warnings)."""
    record, _ = parse_record_with_warnings(data, mode)
    return record
