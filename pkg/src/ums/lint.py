"""Metadata pathology detection.

Raw-level rules catch what carrier files typically get wrong: the same
format stated over and over, two different creatorship claims, creation
and modification timestamps that coincide and so say nothing, invalid
identity numbers, placeholder values.  Record-level rules catch gaps in
an already-normalized description.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import UnknownSystem
from .extractors import RawMetadata, base_key
from .identifiers import BUILTIN_SYSTEMS, validate_identifier
from .metabase import AUTHORS, Metabase, ORGANIZATIONS, resolve
from .model import UmsRecord

ERROR = "error"
WARNING = "warning"
INFO = "info"
_SEVERITY_RANK = {INFO: 0, WARNING: 1, ERROR: 2}

#: related-systems table: presence in one side suggests the other
DEFAULT_RELATED_SYSTEMS = (("OCLC", "PMID"),)


@dataclass(frozen=True)
class LintFinding:
    code: str
    severity: str
    message: str
    evidence: tuple[tuple[str, str], ...] = ()

    def line(self) -> str:
        return f"{self.code}\t{self.severity}\t{self.message}"


def at_least_warning(findings: Iterable[LintFinding]) -> bool:
    return any(_SEVERITY_RANK[f.severity] >= _SEVERITY_RANK[WARNING] for f in findings)


def _first_pair(raw: RawMetadata, wanted: str) -> Optional[tuple[str, str]]:
    wanted = wanted.lower()
    for key, value in raw.pairs:
        if base_key(key).lower() == wanted:
            return (key, value)
    return None


def _format_evidence(raw: RawMetadata) -> tuple[tuple[str, str], ...]:
    """Pairs that state the carrier format: format-bearing keys, or the
    carrier token inside the value."""
    token = raw.carrier.lower()
    version_key = f"{token}version"
    hits = []
    for key, value in raw.pairs:
        folded = key.lower()
        if "filetype" in folded or "mimetype" in folded or version_key in folded:
            hits.append((key, value))
        elif token in value.lower():
            hits.append((key, value))
    return tuple(hits)


def lint_raw(
    raw: RawMetadata,
    systems: Sequence[str] = BUILTIN_SYSTEMS,
    placeholders: Sequence[str] = (),
) -> list[LintFinding]:
    """Diagnose raw carrier pairs; deterministic rule and evidence order."""
    findings: list[LintFinding] = []

    fmt = _format_evidence(raw)
    if len(fmt) > 1:
        findings.append(
            LintFinding(
                code="FORMAT_REDUNDANCY",
                severity=WARNING,
                message=f"the carrier format is stated {len(fmt)} times",
                evidence=fmt,
            )
        )

    author = _first_pair(raw, "Author")
    creator = _first_pair(raw, "Creator")
    if author is not None and creator is not None and author[1] != creator[1]:
        findings.append(
            LintFinding(
                code="AUTHOR_AMBIGUOUS",
                severity=WARNING,
                message=f"author {author[1]!r} and creator {creator[1]!r} disagree",
                evidence=(author, creator),
            )
        )

    created = _first_pair(raw, "CreateDate")
    modified = _first_pair(raw, "ModifyDate")
    if created is not None and modified is not None and created[1] == modified[1]:
        findings.append(
            LintFinding(
                code="TIMESTAMP_COINCIDENT",
                severity=WARNING,
                message="creation and modification timestamps coincide",
                evidence=(created, modified),
            )
        )

    tokens = {s.upper() for s in systems}
    for key, value in raw.pairs:
        token = base_key(key).upper()
        if token not in tokens:
            continue
        try:
            check = validate_identifier(token, value, registered=tokens)
        except UnknownSystem:  # pragma: no cover - tokens filtered above
            continue
        if not check.valid:
            findings.append(
                LintFinding(
                    code="IDENTIFIER_INVALID",
                    severity=ERROR,
                    message=f"{token} value {value!r} is invalid ({check.reason})",
                    evidence=((key, value),),
                )
            )

    if placeholders:
        marks = {p for p in placeholders}
        for key, value in raw.pairs:
            if value in marks:
                findings.append(
                    LintFinding(
                        code="PLACEHOLDER_VALUE",
                        severity=WARNING,
                        message=f"{key} holds the placeholder {value!r}",
                        evidence=((key, value),),
                    )
                )

    return findings


def _creator_cataloged(metabase: Metabase, creator: str) -> bool:
    for catalog_name in (AUTHORS, ORGANIZATIONS):
        catalog = metabase.get(catalog_name)
        if catalog is not None and resolve(catalog, creator).kind == "exact":
            return True
    return False


def lint_record(
    record: UmsRecord,
    metabase: Optional[Metabase] = None,
    related_systems: Sequence[tuple[str, str]] = DEFAULT_RELATED_SYSTEMS,
) -> list[LintFinding]:
    """Diagnose a normalized record.

    Catalog-dependent rules only run when a metabase is supplied.
    """
    findings: list[LintFinding] = []

    for field, values in (
        ("language", record.languages),
        ("location", record.locations),
        ("creator", record.creators),
    ):
        if not values:
            findings.append(
                LintFinding(
                    code="MISSING_RECOMMENDED",
                    severity=WARNING,
                    message=f"record has no {field}",
                )
            )

    if metabase is not None:
        for creator in record.creators:
            if not _creator_cataloged(metabase, creator):
                findings.append(
                    LintFinding(
                        code="UNCATALOGED_CREATOR",
                        severity=WARNING,
                        message=f"creator not in author/organization catalogs: {creator}",
                    )
                )

    present = {binding.system for binding in record.identifiers}
    for left, right in related_systems:
        left, right = left.upper(), right.upper()
        for have, missing in ((left, right), (right, left)):
            if have in present and missing not in present:
                findings.append(
                    LintFinding(
                        code="SYSTEM_GAP",
                        severity=WARNING,
                        message=(
                            f"record is identified in {have} but not in the"
                            f" related system {missing}"
                        ),
                    )
                )

    if not record.subjects:
        findings.append(
            LintFinding(
                code="EMPTY_SUBJECTS",
                severity=INFO,
                message="record lists no depicted objects or phenomena",
            )
        )

    return findings
