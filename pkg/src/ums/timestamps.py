"""Canonical timestamp handling.

Two lexical forms are canonical everywhere in the toolkit: a full UTC
instant ``YYYY-MM-DDThh:mm:ssZ`` or a bare date ``YYYY-MM-DD``.  Carrier
formats (exiftool-style ``2011:03:01 16:35:22Z``, PDF ``D:`` strings,
ISO 8601 with offsets) are accepted as inputs and converted.
"""

from __future__ import annotations

import re
from datetime import datetime, timedelta, timezone

from .errors import InvalidTimestamp

_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$", re.ASCII)
_INSTANT_RE = re.compile(r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z$", re.ASCII)
_DISPLAY_RE = re.compile(
    r"^(\d{4}):(\d{2}):(\d{2}) (\d{2}):(\d{2}):(\d{2})(Z|[+-]\d{2}:\d{2})$", re.ASCII
)
_ISO_OFFSET_RE = re.compile(
    r"^(\d{4})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(Z|[+-]\d{2}:\d{2})$", re.ASCII
)
_PDF_RE = re.compile(
    r"^D:(\d{4})(\d{2})?(\d{2})?(\d{2})?(\d{2})?(\d{2})?"
    r"(Z|[+-]\d{2}'(?:\d{2})'?)?$",
    re.ASCII,
)


def is_canonical(value: str) -> bool:
    """True when *value* is already in one of the two canonical forms."""
    if _DATE_RE.match(value):
        return _calendar_ok(value[:10])
    if _INSTANT_RE.match(value):
        return _calendar_ok(value[:10]) and _clock_ok(value[11:19])
    return False


def ensure_canonical(value: str) -> str:
    """Return *value* unchanged if canonical, else raise InvalidTimestamp."""
    if not is_canonical(value):
        raise InvalidTimestamp(f"not a canonical UTC timestamp: {value!r}")
    return value


def _calendar_ok(date_part: str) -> bool:
    try:
        datetime.strptime(date_part, "%Y-%m-%d")
    except ValueError:
        return False
    return True


def _clock_ok(time_part: str) -> bool:
    h, m, s = (int(x) for x in time_part.split(":"))
    return h < 24 and m < 60 and s < 60


def _utc_string(dt: datetime) -> str:
    dt = dt.astimezone(timezone.utc)
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def _offset_delta(tz: str) -> timedelta:
    sign = 1 if tz[0] == "+" else -1
    hours, minutes = int(tz[1:3]), int(tz[4:6])
    return sign * timedelta(hours=hours, minutes=minutes)


def normalize(value: str) -> str:
    """Convert any accepted timestamp shape to canonical form.

    Accepted inputs: canonical forms, extractor display form
    ``YYYY:MM:DD hh:mm:ss(Z|±hh:mm)``, ISO 8601 with offset, and PDF
    ``D:YYYYMMDDhhmmss(Z|±hh'mm')`` strings.  Raises InvalidTimestamp
    for anything else.
    """
    value = value.strip()
    if is_canonical(value):
        return value

    m = _DISPLAY_RE.match(value) or _ISO_OFFSET_RE.match(value)
    if m:
        y, mo, d, h, mi, s, tz = m.groups()
        dt = _build(y, mo, d, h, mi, s)
        if tz != "Z":
            dt -= _offset_delta(tz)
        return _utc_string(dt.replace(tzinfo=timezone.utc))

    m = _PDF_RE.match(value)
    if m:
        y, mo, d, h, mi, s, tz = m.groups()
        dt = _build(y, mo or "01", d or "01", h or "00", mi or "00", s or "00")
        if tz and tz != "Z":
            tz = tz.replace("'", ":").rstrip(":")
            if len(tz) == 3:
                tz += ":00"
            dt -= _offset_delta(tz)
        return _utc_string(dt.replace(tzinfo=timezone.utc))

    raise InvalidTimestamp(f"unrecognized timestamp: {value!r}")


def _build(y: str, mo: str, d: str, h: str, mi: str, s: str) -> datetime:
    try:
        return datetime(int(y), int(mo), int(d), int(h), int(mi), int(s))
    except ValueError as exc:
        raise InvalidTimestamp(str(exc)) from None


def as_datetime(value: str) -> datetime:
    """Parse a canonical timestamp into an aware UTC datetime.

    Bare dates count as midnight UTC.
    """
    ensure_canonical(value)
    if len(value) == 10:
        dt = datetime.strptime(value, "%Y-%m-%d")
    else:
        dt = datetime.strptime(value, "%Y-%m-%dT%H:%M:%SZ")
    return dt.replace(tzinfo=timezone.utc)
