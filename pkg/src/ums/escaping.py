"""Value escaping shared by the sidecar format and canonical names.

Three escapes exist: ``\\\\`` for a backslash, ``\\n`` for a line feed,
``\\|`` for a pipe.  Escaped text therefore never contains a raw LF and
never a raw ``|``, which is what makes ``|`` usable as a field separator
in compound values.
"""

from __future__ import annotations

from .errors import SidecarSyntaxError


def escape(value: str) -> str:
    """Escape one value component."""
    return (
        value.replace("\\", "\\\\")
        .replace("\n", "\\n")
        .replace("|", "\\|")
    )


def unescape(value: str) -> str:
    """Decode the escapes; reject stray backslashes."""
    out: list[str] = []
    i = 0
    n = len(value)
    while i < n:
        ch = value[i]
        if ch == "\\":
            if i + 1 >= n:
                raise ValueError("dangling backslash")
            nxt = value[i + 1]
            if nxt == "\\":
                out.append("\\")
            elif nxt == "n":
                out.append("\n")
            elif nxt == "|":
                out.append("|")
            else:
                raise ValueError(f"bad escape \\{nxt}")
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def split_fields(value: str) -> list[str]:
    """Split a compound value on unescaped ``|``; fields stay escaped."""
    fields: list[str] = []
    current: list[str] = []
    i = 0
    n = len(value)
    while i < n:
        ch = value[i]
        if ch == "\\" and i + 1 < n:
            current.append(value[i : i + 2])
            i += 2
        elif ch == "|":
            fields.append("".join(current))
            current = []
            i += 1
        else:
            current.append(ch)
            i += 1
    fields.append("".join(current))
    return fields


def join_fields(fields: list[str]) -> str:
    """Escape each field and join with ``|``."""
    return "|".join(escape(f) for f in fields)


def decode_fields(value: str, expected: int, line: int, what: str) -> list[str]:
    """Split, arity-check, and unescape a compound sidecar value."""
    raw = split_fields(value)
    if len(raw) != expected:
        raise SidecarSyntaxError(
            line, f"{what} needs {expected} fields, got {len(raw)}"
        )
    try:
        return [unescape(f) for f in raw]
    except ValueError as exc:
        raise SidecarSyntaxError(line, f"{what}: {exc}") from None
