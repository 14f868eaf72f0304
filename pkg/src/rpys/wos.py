"""Readers and writers for Web of Science plain-text exports.

Two export layouts are supported:

* ``tagged`` -- the "savedrecs.txt" field-tagged format: a two-character
  tag followed by one space and a value, values continued on lines
  indented by exactly three spaces, each record terminated by ``ER`` and
  the whole file by ``EF``.  ``FN``/``VR`` file-header lines are skipped.
* ``tab_delimited`` -- one header line of two-character tags, then one
  record per line; the ``CR`` cell packs all cited references separated
  by ``"; "``.

A cited reference is the compact comma-separated string WoS stores per
citation, e.g. ``EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P891``, parsed
here into author / year / source / volume / page / DOI fields.  Parsing
a cited reference never fails: lines that match nothing keep only their
raw text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .textnorm import UNKNOWN_AUTHOR, normalize_author

TAGGED = "tagged"
TAB_DELIMITED = "tab_delimited"

# Tag, one space, value.  The value may be empty; a bare two-char tag is
# also accepted.  ER/EF/FN/VR are structural and handled before this.
_TAG_LINE = re.compile(r"^([A-Z0-9]{2})(?: (.*))?$")
_TAG_NAME = re.compile(r"^[A-Z0-9]{2}$")
_FILE_HEADER_TAGS = ("FN", "VR")


class UnrecognizedFormatError(ValueError):
    """Input is neither a tagged export nor a tab-delimited one."""


class ExportParseError(ValueError):
    """Structural defect in an export file (raised in strict mode only)."""

    def __init__(self, message: str, line: int):
        super().__init__(message)
        self.line = line


@dataclass
class RawRecord:
    """One exported record: ordered map of 2-char field tags to value lines."""

    tags: dict[str, list[str]] = field(default_factory=dict)

    def get(self, tag: str) -> list[str]:
        return self.tags.get(tag, [])

    def first(self, tag: str) -> str | None:
        values = self.tags.get(tag)
        return values[0] if values else None

    def joined(self, tag: str) -> str | None:
        """All value lines of a wrapped-text field joined with spaces."""
        values = self.tags.get(tag)
        if not values:
            return None
        return " ".join(v.strip() for v in values).strip() or None


@dataclass(frozen=True, slots=True)
class CitedReference:
    """One cited-reference string with whatever fields could be recovered."""

    raw: str
    first_author: str | None = None
    year: int | None = None
    source: str | None = None
    volume: str | None = None
    page: str | None = None
    doi: str | None = None


@dataclass
class ParseDiagnostics:
    """Bookkeeping for one parsed export file."""

    records_parsed: int = 0
    cr_lines_parsed: int = 0
    cr_lines_without_year: int = 0
    malformed_positions: list[int] = field(default_factory=list)

    @property
    def malformed_records(self) -> int:
        return len(self.malformed_positions)


def detect_format(text: str) -> str:
    """Classify an export by its first line.

    ``FN ...`` marks a tagged export; a tab-separated header containing
    the PY and CR tags marks a tab-delimited one.  Anything else raises
    :class:`UnrecognizedFormatError`.
    """
    first = text.split("\n", 1)[0].lstrip("﻿").rstrip("\r")
    if first.startswith("FN"):
        return TAGGED
    cells = [cell.strip() for cell in first.split("\t")]
    if len(cells) > 1 and "PY" in cells and "CR" in cells:
        return TAB_DELIMITED
    raise UnrecognizedFormatError(
        f"unrecognized export format; first line starts {first[:40]!r}"
    )


def parse_export(
    text: str, fmt: str = TAGGED, strict: bool = False
) -> tuple[list[RawRecord], ParseDiagnostics]:
    """Parse one export file into records, in file order.

    In lenient mode (the default), malformed record blocks are skipped
    and their line numbers collected in the diagnostics; strict mode
    raises :class:`ExportParseError` at the first defect.
    """
    if fmt == TAGGED:
        return _parse_tagged(text, strict)
    if fmt == TAB_DELIMITED:
        return _parse_tab_delimited(text, strict)
    raise ValueError(f"unknown export format {fmt!r}")


def _finalize_record(tags: dict[str, list[str]]) -> RawRecord:
    # The CR tag must only carry non-empty reference lines.
    if "CR" in tags:
        kept = [v for v in tags["CR"] if v.strip()]
        if kept:
            tags["CR"] = kept
        else:
            del tags["CR"]
    return RawRecord(tags)


def _summarize_cr(records: list[RawRecord], diag: ParseDiagnostics) -> None:
    for record in records:
        for line in record.get("CR"):
            diag.cr_lines_parsed += 1
            if parse_cited_reference(line).year is None:
                diag.cr_lines_without_year += 1


def _parse_tagged(text: str, strict: bool) -> tuple[list[RawRecord], ParseDiagnostics]:
    records: list[RawRecord] = []
    diag = ParseDiagnostics()
    lines = text.split("\n")
    tags: dict[str, list[str]] | None = None
    current_tag: str | None = None
    skipping = False  # resyncing to the next ER after a malformed block
    seen_ef = False

    for lineno, rawline in enumerate(lines, start=1):
        line = rawline.rstrip("\r")
        if lineno == 1:
            line = line.lstrip("﻿")

        if seen_ef:
            if line.strip():
                if strict:
                    raise ExportParseError(
                        f"line {lineno}: content after EF terminator", lineno
                    )
                diag.malformed_positions.append(lineno)
                break
            continue

        if skipping:
            stripped = line.rstrip()
            if stripped == "ER":
                skipping = False
            elif stripped == "EF":
                skipping = False
                seen_ef = True
            continue

        if tags is None:
            if not line.strip():
                continue
            stripped = line.rstrip()
            if stripped == "EF":
                seen_ef = True
                continue
            if stripped == "ER":
                if strict:
                    raise ExportParseError(
                        f"line {lineno}: record terminator without an open record",
                        lineno,
                    )
                diag.malformed_positions.append(lineno)
                continue
            match = _TAG_LINE.match(line)
            if match:
                tag = match.group(1)
                if tag in _FILE_HEADER_TAGS:
                    continue
                tags = {tag: [match.group(2) or ""]}
                current_tag = tag
                continue
            if strict:
                raise ExportParseError(f"line {lineno}: expected a tag line", lineno)
            diag.malformed_positions.append(lineno)
            skipping = True
            continue

        # Inside a record.  Continuation lines take priority so values
        # that happen to read "ER" cannot terminate the block.
        if line.startswith("   "):
            tags[current_tag].append(line[3:])
            continue
        stripped = line.rstrip()
        if stripped == "ER":
            records.append(_finalize_record(tags))
            tags = None
            current_tag = None
            continue
        if stripped == "EF":
            if strict:
                raise ExportParseError(
                    f"line {lineno}: record not terminated by ER before EF", lineno
                )
            diag.malformed_positions.append(lineno)
            tags = None
            current_tag = None
            seen_ef = True
            continue
        match = _TAG_LINE.match(line)
        if match:
            tag = match.group(1)
            tags.setdefault(tag, []).append(match.group(2) or "")
            current_tag = tag
            continue
        if not line.strip():
            continue
        if strict:
            raise ExportParseError(f"line {lineno}: malformed line inside record", lineno)
        diag.malformed_positions.append(lineno)
        tags = None
        current_tag = None
        skipping = True

    if tags is not None:
        last = len(lines)
        if strict:
            raise ExportParseError(
                f"line {last}: record not terminated by ER at end of input", last
            )
        diag.malformed_positions.append(last)

    diag.records_parsed = len(records)
    _summarize_cr(records, diag)
    return records, diag


def _parse_tab_delimited(
    text: str, strict: bool
) -> tuple[list[RawRecord], ParseDiagnostics]:
    records: list[RawRecord] = []
    diag = ParseDiagnostics()
    lines = text.split("\n")
    header = [c.strip() for c in lines[0].lstrip("﻿").rstrip("\r").split("\t")]
    columns = [(i, tag) for i, tag in enumerate(header) if _TAG_NAME.match(tag)]

    for lineno, rawline in enumerate(lines[1:], start=2):
        line = rawline.rstrip("\r")
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != len(header):
            if strict:
                raise ExportParseError(
                    f"line {lineno}: expected {len(header)} columns, found {len(cells)}",
                    lineno,
                )
            diag.malformed_positions.append(lineno)
            continue
        tags: dict[str, list[str]] = {}
        for idx, tag in columns:
            value = cells[idx].strip()
            if not value:
                continue
            if tag == "CR":
                refs = [r for r in (p.strip() for p in value.split("; ")) if r]
                if refs:
                    tags[tag] = refs
            else:
                tags[tag] = [value]
        records.append(RawRecord(tags))

    diag.records_parsed = len(records)
    _summarize_cr(records, diag)
    return records, diag


def _is_rpy(segment: str) -> bool:
    return (
        len(segment) == 4
        and segment.isascii()
        and segment.isdigit()
        and 1000 <= int(segment) <= 2100
    )


def _is_volume(segment: str) -> bool:
    return len(segment) >= 2 and segment[0] == "V" and segment[1].isdigit()


def _is_page(segment: str) -> bool:
    return len(segment) >= 2 and segment[0] == "P" and segment[1:].isalnum()


def _is_doi(segment: str) -> bool:
    return segment.startswith("DOI ") and len(segment) > 4


def _doi_value(segment: str) -> str:
    while segment.startswith("DOI "):
        segment = segment[4:]
    return segment.strip()


def parse_cited_reference(cr_line: str) -> CitedReference:
    """Parse one cited-reference string.

    Grammar: segments split on ``", "``.  The first segment is the
    author token, except when it is itself the year (anonymous works
    shift the year into first position, leaving the author absent).
    The year is the first standalone 4-digit segment in [1000, 2100];
    the segment after it is the source unless it looks like a volume,
    page or DOI segment.  ``Vnn`` / ``Pnn`` / ``DOI ...`` segments fill
    volume, page and doi; everything else is ignored.  Never raises on
    a non-empty line, and the raw text is always preserved verbatim.
    """
    stripped = cr_line.strip()
    if not stripped:
        raise ValueError("cited-reference line is empty")
    segments = [seg.strip() for seg in stripped.split(", ")]

    year: int | None = None
    year_idx: int | None = None
    for idx, seg in enumerate(segments):
        if _is_rpy(seg):
            year = int(seg)
            year_idx = idx
            break

    first_author: str | None = None
    if year_idx != 0:
        candidate = normalize_author(segments[0])
        if candidate != UNKNOWN_AUTHOR:
            first_author = candidate

    claimed = {0}
    source: str | None = None
    if year_idx is not None:
        claimed.add(year_idx)
        if year_idx + 1 < len(segments):
            nxt = segments[year_idx + 1]
            if nxt and not (_is_volume(nxt) or _is_page(nxt) or _is_doi(nxt)):
                source = nxt
                claimed.add(year_idx + 1)

    volume: str | None = None
    page: str | None = None
    doi: str | None = None
    for idx, seg in enumerate(segments):
        if idx in claimed or not seg:
            continue
        if volume is None and _is_volume(seg):
            volume = seg[1:]
        elif page is None and _is_page(seg):
            page = seg[1:]
        elif doi is None and _is_doi(seg):
            doi = _doi_value(seg)

    return CitedReference(
        raw=cr_line,
        first_author=first_author,
        year=year,
        source=source,
        volume=volume,
        page=page,
        doi=doi,
    )


def serialize_record(record: RawRecord) -> str:
    """Render one record in tagged format, terminated by ``ER``."""
    parts: list[str] = []
    for tag, values in record.tags.items():
        vals = values or [""]
        parts.append(f"{tag} {vals[0]}")
        parts.extend("   " + v for v in vals[1:])
    parts.append("ER")
    return "\n".join(parts) + "\n"


def serialize_export(records: list[RawRecord]) -> str:
    """Render a whole tagged export file (FN/VR header, records, EF)."""
    blocks = "\n".join(serialize_record(r) for r in records)
    return "FN RPYS tagged export\nVR 1.0\n" + blocks + "EF\n"


def decode_export_bytes(data: bytes) -> str:
    """Decode raw export bytes line by line: UTF-8 first, Latin-1 fallback.

    Mixed-era exports occasionally carry single Latin-1 lines inside an
    otherwise UTF-8 file; decoding per line keeps the rest intact.
    """
    lines = []
    for bline in data.split(b"\n"):
        bline = bline.rstrip(b"\r")
        try:
            lines.append(bline.decode("utf-8"))
        except UnicodeDecodeError:
            lines.append(bline.decode("latin-1"))
    return "\n".join(lines)


def load_export(
    path: str | Path, fmt: str = "auto", strict: bool = False
) -> tuple[list[RawRecord], ParseDiagnostics, str]:
    """Read, decode and parse one export file; returns the format used."""
    text = decode_export_bytes(Path(path).read_bytes())
    resolved = detect_format(text) if fmt == "auto" else fmt
    records, diag = parse_export(text, resolved, strict=strict)
    return records, diag, resolved
