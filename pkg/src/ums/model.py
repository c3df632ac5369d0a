"""Core record model: canonical names, identifier bindings, records.

Every value is immutable after construction and normalized to Unicode
NFC, so equality and duplicate detection are plain string comparisons.
Records are allowed to be *partial* (empty name, no formats, no date);
completeness is enforced where it matters, at serialization and in
validation reports.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from typing import Iterable, Optional

from . import timestamps
from .errors import InvariantViolation, MissingComponent
from .escaping import escape, split_fields, unescape
from .languages import is_language_code

DOC_TYPES = ("text", "image", "photo", "video", "sound")
NAME_KINDS = ("person", "organization", "document", "other")
EVENT_KINDS = ("create", "rename", "reclassify", "relocate", "reformat", "translate")

ACCESS_PUBLIC, ACCESS_INTERNAL, ACCESS_RESTRICTED, ACCESS_SECRET = range(4)

_FORMAT_RE = re.compile(r"^[a-z0-9]+$")
_SYSTEM_RE = re.compile(r"^[A-Z0-9]+$")
_PREV_RE = re.compile(r"^[0-9a-f]{16}$")
_QUALIFIER_RE = re.compile(r"^\d+$", re.ASCII)

GENESIS_PREV = "0" * 16

#: separator between who-parts inside a canonical name; never produced by
#: escaping (a literal backslash-comma escapes to backslash-backslash-comma)
_WHO_SEP = "\\,"


def nfc(value: str) -> str:
    return unicodedata.normalize("NFC", value)


def _nfc_tuple(values: Iterable[str], what: str) -> tuple[str, ...]:
    out = []
    for v in values:
        if not isinstance(v, str) or v == "":
            raise InvariantViolation(f"empty or non-text {what} entry")
        out.append(nfc(v))
    return tuple(out)


def _reject_duplicates(values: Iterable, what: str) -> None:
    seen = set()
    for v in values:
        if v in seen:
            raise InvariantViolation(f"duplicate {what}: {v!r}")
        seen.add(v)


@dataclass(frozen=True)
class IdentifierBinding:
    """One (classification system, identity number) pair."""

    system: str
    id: str

    def __post_init__(self):
        system = nfc(self.system).upper()
        if not _SYSTEM_RE.match(system):
            raise InvariantViolation(f"bad system token: {self.system!r}")
        if self.id == "":
            raise InvariantViolation("empty identity number")
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "id", nfc(self.id))


@dataclass(frozen=True)
class Subject:
    """A depicted object or phenomenon, optionally tied to a source catalog."""

    text: str
    source: Optional[str] = None

    def __post_init__(self):
        if self.text == "":
            raise InvariantViolation("empty subject")
        object.__setattr__(self, "text", nfc(self.text))
        if self.source is not None:
            if self.source == "":
                raise InvariantViolation("empty subject source")
            object.__setattr__(self, "source", nfc(self.source))


@dataclass(frozen=True)
class ProvenanceEvent:
    """One append-only history entry."""

    seq: int
    timestamp: str
    kind: str
    payload: str
    prev: str

    def __post_init__(self):
        if self.seq < 0:
            raise InvariantViolation("negative event seq")
        if self.kind not in EVENT_KINDS:
            raise InvariantViolation(f"unknown event kind: {self.kind!r}")
        timestamps.ensure_canonical(self.timestamp)
        if not _PREV_RE.match(self.prev):
            raise InvariantViolation(f"bad prev digest: {self.prev!r}")
        object.__setattr__(self, "payload", nfc(self.payload))


@dataclass(frozen=True)
class SystematicName:
    """Who/what + where + when designation with a deterministic string form."""

    kind: str
    who: tuple[str, ...]
    when: Optional[str] = None
    where: Optional[str] = None
    qualifier: Optional[str] = None

    def __post_init__(self):
        if self.kind not in NAME_KINDS:
            raise InvariantViolation(f"unknown name kind: {self.kind!r}")
        who = _nfc_tuple(self.who, "name component")
        if not who:
            raise MissingComponent("a systematic name needs a who-part")
        object.__setattr__(self, "who", who)
        if self.when is not None:
            object.__setattr__(self, "when", timestamps.ensure_canonical(self.when))
        if self.where is not None:
            if self.where == "":
                raise InvariantViolation("empty where component")
            object.__setattr__(self, "where", nfc(self.where))
        if self.qualifier is not None and not _QUALIFIER_RE.match(self.qualifier):
            raise InvariantViolation(f"qualifier must be digits: {self.qualifier!r}")

    @property
    def canonical(self) -> str:
        """Deterministic string form ``kind:who|when|where[|qualifier]``.

        Who-parts are escaped and joined with a backslash-comma marker,
        which escaped text cannot contain, so the string is a bijective
        function of the fields.
        """
        who = _WHO_SEP.join(escape(p) for p in self.who)
        parts = [who, escape(self.when or ""), escape(self.where or "")]
        if self.qualifier is not None:
            parts.append(self.qualifier)
        return f"{self.kind}:" + "|".join(parts)


def make_systematic_name(
    kind: str,
    who: Iterable[str],
    when: Optional[str] = None,
    where: Optional[str] = None,
    qualifier: Optional[str] = None,
    scope: str = "strict",
) -> SystematicName:
    """Build a systematic name, enforcing the identification minimum.

    In strict scope a person needs at least a given and a family name
    plus birth date and place; an organization needs its founding date
    and place.  Local scope relaxes those requirements.
    """
    if scope not in ("strict", "local"):
        raise InvariantViolation(f"unknown scope: {scope!r}")
    who = tuple(who)
    if not who or any(p == "" for p in who):
        raise MissingComponent("who-part must have non-empty components")
    if when is not None:
        when = timestamps.normalize(when)
    if scope == "strict" and kind in ("person", "organization"):
        if kind == "person" and len(who) < 2:
            raise MissingComponent("a person needs a family name in strict scope")
        if when is None:
            raise MissingComponent(f"a {kind} needs a date in strict scope")
        if where is None:
            raise MissingComponent(f"a {kind} needs a place in strict scope")
    return SystematicName(kind=kind, who=who, when=when, where=where, qualifier=qualifier)


def _split_who(segment: str) -> list[str]:
    """Split an escaped who-segment on the backslash-comma marker."""
    parts: list[str] = []
    current: list[str] = []
    i = 0
    n = len(segment)
    while i < n:
        if segment[i] == "\\" and i + 1 < n:
            pair = segment[i : i + 2]
            if pair == _WHO_SEP:
                parts.append("".join(current))
                current = []
            else:
                current.append(pair)
            i += 2
        else:
            current.append(segment[i])
            i += 1
    parts.append("".join(current))
    return parts


def parse_systematic_name(canonical: str) -> SystematicName:
    """Inverse of :attr:`SystematicName.canonical`."""
    kind, sep, rest = canonical.partition(":")
    if not sep or kind not in NAME_KINDS:
        raise InvariantViolation(f"bad canonical name: {canonical!r}")
    segments = split_fields(rest)
    if len(segments) not in (3, 4):
        raise InvariantViolation(f"bad canonical name arity: {canonical!r}")
    try:
        who = tuple(unescape(p) for p in _split_who(segments[0]))
        when = unescape(segments[1]) or None
        where = unescape(segments[2]) or None
    except ValueError as exc:
        raise InvariantViolation(f"bad canonical name: {exc}") from None
    qualifier = segments[3] if len(segments) == 4 else None
    return SystematicName(kind=kind, who=who, when=when, where=where, qualifier=qualifier)


@dataclass(frozen=True)
class UmsRecord:
    """Canonical metadata description of one document.

    ``name`` is the primary systematic name and never changes once set;
    every modification is appended to ``history`` and mirrored into the
    grow-only lists.  A record with an empty name, no formats or no date
    is *partial*: storable in memory, not serializable.
    """

    name: str = ""
    synonyms: tuple[str, ...] = ()
    formats: tuple[str, ...] = ()
    date: Optional[str] = None
    doc_type: Optional[str] = None
    summary: Optional[str] = None
    languages: tuple[str, ...] = ()
    locations: tuple[str, ...] = ()
    creators: tuple[str, ...] = ()
    identifiers: tuple[IdentifierBinding, ...] = ()
    access: int = ACCESS_PUBLIC
    subjects: tuple[Subject, ...] = ()
    tags: tuple[str, ...] = ()
    history: tuple[ProvenanceEvent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "name", nfc(self.name))
        object.__setattr__(self, "synonyms", _nfc_tuple(self.synonyms, "synonym"))

        formats = tuple(f.lower() for f in _nfc_tuple(self.formats, "format"))
        for f in formats:
            if not _FORMAT_RE.match(f):
                raise InvariantViolation(f"bad format tag: {f!r}")
        object.__setattr__(self, "formats", formats)

        if self.date is not None:
            timestamps.ensure_canonical(self.date)
        if self.doc_type is not None and self.doc_type not in DOC_TYPES:
            raise InvariantViolation(f"unknown document type: {self.doc_type!r}")
        if self.summary is not None:
            if self.summary == "":
                raise InvariantViolation("empty summary")
            object.__setattr__(self, "summary", nfc(self.summary))

        languages = tuple(c.lower() for c in _nfc_tuple(self.languages, "language"))
        for code in languages:
            if not is_language_code(code):
                raise InvariantViolation(f"not a natural-language code: {code!r}")
        object.__setattr__(self, "languages", languages)

        object.__setattr__(self, "locations", _nfc_tuple(self.locations, "location"))
        object.__setattr__(self, "creators", _nfc_tuple(self.creators, "creator"))
        object.__setattr__(self, "identifiers", tuple(self.identifiers))
        object.__setattr__(self, "subjects", tuple(self.subjects))
        object.__setattr__(self, "tags", _nfc_tuple(self.tags, "tag"))
        object.__setattr__(self, "history", tuple(self.history))

        if not isinstance(self.access, int) or not 0 <= self.access <= 3:
            raise InvariantViolation(f"access level out of range: {self.access!r}")

        _reject_duplicates(self.synonyms, "synonym")
        _reject_duplicates(self.formats, "format")
        _reject_duplicates(self.languages, "language")
        _reject_duplicates(self.locations, "location")
        _reject_duplicates(self.creators, "creator")
        _reject_duplicates(
            ((b.system, b.id) for b in self.identifiers), "identifier"
        )
        _reject_duplicates(((s.text, s.source) for s in self.subjects), "subject")
        _reject_duplicates(self.tags, "tag")

        for i, event in enumerate(self.history):
            if event.seq != i:
                raise InvariantViolation(
                    f"history seq must run 0,1,2,...; got {event.seq} at index {i}"
                )
        if self.history and self.history[0].kind != "create":
            raise InvariantViolation("history must start with a create event")


def is_complete(record: UmsRecord) -> bool:
    """True when the record carries the required identification triple."""
    return record.name != "" and bool(record.formats) and record.date is not None


def require_complete(record: UmsRecord) -> None:
    missing = [
        label
        for label, ok in (
            ("name", record.name != ""),
            ("format", bool(record.formats)),
            ("date", record.date is not None),
        )
        if not ok
    ]
    if missing:
        raise InvariantViolation(f"record incomplete, missing: {', '.join(missing)}")
