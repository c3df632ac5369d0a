"""Append-only modification history with a tamper-evident digest chain.

Originals are never edited: each change appends one event and mirrors
its payload into the matching grow-only record list.  Every event
carries a truncated SHA-256 of the previous event's serialized line,
so edits to recorded history surface on verification.
"""

from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass, replace
from typing import Optional

from . import timestamps
from .errors import BrokenChain, InvariantViolation, MalformedPayload
from .languages import is_language_code
from .model import (
    EVENT_KINDS,
    GENESIS_PREV,
    IdentifierBinding,
    ProvenanceEvent,
    UmsRecord,
    nfc,
)
from .sidecar import serialize_event

log = logging.getLogger(__name__)

#: event kind -> record list it appends to
DERIVED_FIELDS = {
    "rename": "synonyms",
    "reclassify": "identifiers",
    "relocate": "locations",
    "reformat": "formats",
    "translate": "languages",
}

_FORMAT_RE = re.compile(r"^[a-z0-9]+$")


def event_digest(event: ProvenanceEvent) -> str:
    """16 hex chars of SHA-256 over the event's serialized line."""
    line = serialize_event(event)
    return hashlib.sha256(line.encode("utf-8")).hexdigest()[:16]


def _normalize_payload(kind: str, payload: str) -> str:
    """Canonicalize and shape-check a payload for its event kind."""
    payload = nfc(payload)
    if kind == "create":
        if payload != "":
            raise MalformedPayload("create carries no payload")
        return payload
    if payload == "":
        raise MalformedPayload(f"{kind} needs a payload")
    if kind in ("rename", "relocate"):
        return payload
    if kind == "reformat":
        payload = payload.lower()
        if not _FORMAT_RE.match(payload):
            raise MalformedPayload(f"bad format tag: {payload!r}")
        return payload
    if kind == "translate":
        payload = payload.lower()
        if not is_language_code(payload):
            raise MalformedPayload(f"not a natural-language code: {payload!r}")
        return payload
    if kind == "reclassify":
        system, sep, ident = payload.partition("|")
        if not sep or not system or not ident:
            raise MalformedPayload("reclassify payload must be SYSTEM|id")
        try:
            binding = IdentifierBinding(system=system, id=ident)
        except InvariantViolation as exc:
            raise MalformedPayload(str(exc)) from None
        return f"{binding.system}|{binding.id}"
    raise MalformedPayload(f"unknown event kind: {kind!r}")


def _derived_value(kind: str, payload: str):
    """The value a payload contributes to its derived list, if any."""
    if kind == "reclassify":
        system, _, ident = payload.partition("|")
        return IdentifierBinding(system=system, id=ident)
    if kind == "create":
        return None
    return payload


def apply_event(
    record: UmsRecord, kind: str, payload: str, timestamp: str
) -> UmsRecord:
    """Append one event and its derived value; returns a new record.

    The original name, first format, first location and creation date
    are untouched by construction.  A record with no history yet gets a
    genesis create event inserted first.  Duplicate derived values are
    skipped, but the event is still recorded.
    """
    if kind not in EVENT_KINDS:
        raise MalformedPayload(f"unknown event kind: {kind!r}")
    timestamp = timestamps.normalize(timestamp)
    payload = _normalize_payload(kind, payload)

    history = list(record.history)
    if kind == "create":
        if history:
            raise MalformedPayload("create is only valid as the first event")
    elif not history:
        genesis_ts = record.date if record.date is not None else timestamp
        history.append(
            ProvenanceEvent(
                seq=0, timestamp=genesis_ts, kind="create", payload="", prev=GENESIS_PREV
            )
        )

    prev = event_digest(history[-1]) if history else GENESIS_PREV
    if history:
        last_dt = timestamps.as_datetime(history[-1].timestamp)
        if timestamps.as_datetime(timestamp) < last_dt:
            log.warning(
                "event timestamp %s precedes previous event %s; recorded anyway",
                timestamp,
                history[-1].timestamp,
            )
    event = ProvenanceEvent(
        seq=len(history), timestamp=timestamp, kind=kind, payload=payload, prev=prev
    )
    history.append(event)

    updates = {"history": tuple(history)}
    field = DERIVED_FIELDS.get(kind)
    if field is not None:
        current = getattr(record, field)
        value = _derived_value(kind, payload)
        if value not in current:
            updates[field] = current + (value,)
    return replace(record, **updates)


@dataclass(frozen=True)
class VerifyResult:
    """Outcome of a history verification."""

    ok: bool
    chain_length: int
    broken_at: Optional[int] = None
    detail: str = ""


class _Inconsistent(Exception):
    def __init__(self, seq: int, detail: str):
        super().__init__(detail)
        self.seq = seq
        self.detail = detail


def _simulate(prefix: list, contributions: list) -> list:
    out = list(prefix)
    for _, value in contributions:
        if value not in out:
            out.append(value)
    return out


def _reconstruct_original(final: tuple, contributions: list) -> tuple:
    """Find the creation-time list consistent with the recorded events.

    Events only ever append, so the original is some prefix of the final
    list; the shortest prefix that replays to the final list wins
    (attributing as much as possible to recorded events).  Raises
    _Inconsistent when no prefix replays correctly.
    """
    final_list = list(final)
    for split in range(len(final_list) + 1):
        if _simulate(final_list[:split], contributions) == final_list:
            return tuple(final_list[:split])

    # No split works: locate the first event whose contribution diverges,
    # using the split that survives the longest.
    best_seq = contributions[0][0] if contributions else 0
    best_ok = -1
    for split in range(len(final_list) + 1):
        state = final_list[:split]
        ok = 0
        fail_seq = None
        for seq, value in contributions:
            if value not in state:
                state.append(value)
            if state != final_list[: len(state)]:
                fail_seq = seq
                break
            ok += 1
        if fail_seq is None:
            fail_seq = contributions[-1][0] if contributions else 0
        if ok > best_ok:
            best_ok, best_seq = ok, fail_seq
    raise _Inconsistent(best_seq, "derived values do not match recorded events")


def _original_fields(record: UmsRecord) -> dict[str, tuple]:
    """Original value of every derived list, or raise _Inconsistent."""
    out: dict[str, tuple] = {}
    for kind, field in DERIVED_FIELDS.items():
        contributions = []
        for event in record.history:
            if event.kind != kind:
                continue
            try:
                payload = _normalize_payload(kind, event.payload)
            except MalformedPayload as exc:
                raise _Inconsistent(event.seq, str(exc)) from None
            contributions.append((event.seq, _derived_value(kind, payload)))
        out[field] = _reconstruct_original(getattr(record, field), contributions)
    return out


def verify_history(record: UmsRecord) -> VerifyResult:
    """Recompute the digest chain and replay consistency; report first break."""
    history = record.history
    if not history:
        return VerifyResult(ok=True, chain_length=0)

    genesis = history[0]
    if genesis.kind != "create":
        return VerifyResult(False, len(history), 0, "first event is not create")
    if genesis.payload != "":
        return VerifyResult(False, len(history), 0, "create event carries a payload")
    if genesis.prev != GENESIS_PREV:
        return VerifyResult(False, len(history), 0, "genesis prev is not all zeros")
    if record.date is not None and genesis.timestamp != record.date:
        return VerifyResult(
            False, len(history), 0, "create timestamp differs from record date"
        )

    for i in range(1, len(history)):
        if history[i].kind == "create":
            return VerifyResult(
                False, len(history), history[i].seq, "create after genesis"
            )
        expected = event_digest(history[i - 1])
        if history[i].prev != expected:
            return VerifyResult(
                False,
                len(history),
                history[i].seq,
                f"prev digest mismatch (expected {expected})",
            )

    try:
        _original_fields(record)
    except _Inconsistent as exc:
        return VerifyResult(False, len(history), exc.seq, exc.detail)
    return VerifyResult(ok=True, chain_length=len(history))


def original_view(record: UmsRecord) -> UmsRecord:
    """The record as of its create event, with derived appends removed."""
    result = verify_history(record)
    if not result.ok:
        raise BrokenChain(result.broken_at or 0, result.detail)
    if not record.history:
        return record
    originals = _original_fields(record)
    return replace(record, history=record.history[:1], **originals)
