"""Bibliographic record parsing and rendering.

Two input formats are understood: a tolerant BibTeX subset and DBLP-style
XML (article and inproceedings elements). A malformed entry never aborts
the run; it is skipped and itemized in the parse report with its position.
Stream-level corruption (unreadable bytes, broken XML) stays a hard error.

Only the fields this system uses survive parsing: author, title, year,
journal/booktitle (merged into venue) and ee/url (merged into uri). The
title is mandatory. Exotic BibTeX constructs (string macros, crossref,
concatenation with #) are out of scope and skip the entry with a report.
"""

from __future__ import annotations

import io
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import ParseError, ValidationError

FORMATS = ("bibtex", "dblp-xml")

_AND_RE = re.compile(r"\s+and\s+")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-:]*")
_WS_RE = re.compile(r"\s+")


@dataclass
class ArticleRecord:
    key: str
    title: str
    authors: tuple[str, ...] = ()
    year: int | None = None
    venue: str = ""
    uri: str | None = None
    # Filled at ingest time; parsing leaves them empty.
    title_lemmas: frozenset[str] = frozenset()
    assigned_nodes: frozenset[str] = frozenset()
    orphan_host: str | None = None

    def same_fields(self, other: "ArticleRecord") -> bool:
        return (
            self.title == other.title
            and self.authors == other.authors
            and self.year == other.year
            and self.venue == other.venue
            and self.uri == other.uri
        )


@dataclass
class SkippedEntry:
    position: str
    key: str | None
    reason: str


@dataclass
class ParseReport:
    parsed: int = 0
    skipped: list[SkippedEntry] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def skip(self, position: str, key: str | None, reason: str) -> None:
        self.skipped.append(SkippedEntry(position, key, reason))


def _read_source(source: str | bytes | IO) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8")
        except UnicodeDecodeError:
            # Legacy exports are routinely Latin-1; fall back rather than die.
            return source.decode("latin-1")
    return source


def parse_records(
    source: str | bytes | IO, format: str = "bibtex"
) -> tuple[list[ArticleRecord], ParseReport]:
    text = _read_source(source)
    if format == "bibtex":
        return parse_bibtex(text)
    if format == "dblp-xml":
        return parse_dblp_xml(text)
    raise ValidationError(f"unknown record format {format!r}")


# ----------------------------------------------------------------------
# BibTeX


class _EntrySkip(Exception):
    def __init__(self, reason: str):
        self.reason = reason


class _BibScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def line(self, pos: int | None = None) -> int:
        end = self.pos if pos is None else pos
        return self.text.count("\n", 0, end) + 1

    def eof(self) -> bool:
        return self.pos >= len(self.text)

    def skip_ws(self) -> None:
        while not self.eof() and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char: str) -> None:
        self.skip_ws()
        if self.eof() or self.text[self.pos] != char:
            found = "end of input" if self.eof() else repr(self.text[self.pos])
            raise _EntrySkip(f"expected {char!r}, found {found}")
        self.pos += 1

    def read_ident(self) -> str:
        self.skip_ws()
        match = _IDENT_RE.match(self.text, self.pos)
        if not match:
            raise _EntrySkip("expected an identifier")
        self.pos = match.end()
        return match.group(0)

    def read_key(self) -> str:
        self.skip_ws()
        start = self.pos
        while not self.eof() and self.text[self.pos] not in ",}\n":
            self.pos += 1
        return self.text[start:self.pos].strip()

    def read_value(self) -> str:
        self.skip_ws()
        if self.eof():
            raise _EntrySkip("unterminated field value")
        ch = self.text[self.pos]
        if ch == "{":
            return self._read_braced()
        if ch == '"':
            return self._read_quoted()
        # Bare values: numbers or single words up to , or }
        start = self.pos
        while not self.eof() and self.text[self.pos] not in ",}#\n":
            self.pos += 1
        if not self.eof() and self.text[self.pos] == "#":
            raise _EntrySkip("string concatenation is not supported")
        value = self.text[start:self.pos].strip()
        if not value:
            raise _EntrySkip("empty field value")
        return value

    def _read_braced(self) -> str:
        depth = 0
        start = self.pos
        while not self.eof():
            ch = self.text[self.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.text[start + 1 : self.pos - 1]
            self.pos += 1
        raise _EntrySkip("unbalanced braces in field value")

    def _read_quoted(self) -> str:
        self.pos += 1
        start = self.pos
        depth = 0
        while not self.eof():
            ch = self.text[self.pos]
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            elif ch == '"' and depth == 0:
                value = self.text[start:self.pos]
                self.pos += 1
                return value
            self.pos += 1
        raise _EntrySkip("unterminated quoted value")


def _clean_value(value: str) -> str:
    # Braces only protect casing in BibTeX; the text itself is what we keep.
    return _WS_RE.sub(" ", value.replace("{", "").replace("}", "")).strip()


def _record_from_fields(
    key: str, fields: dict[str, str], position: str, report: ParseReport
) -> ArticleRecord | None:
    title = _clean_value(fields.get("title", ""))
    if not title:
        report.skip(position, key or None, "missing mandatory field: title")
        return None
    year: int | None = None
    raw_year = _clean_value(fields.get("year", ""))
    if raw_year:
        if raw_year.isdigit():
            year = int(raw_year)
        else:
            report.notes.append(f"{position}: unparseable year {raw_year!r} dropped")
    authors = tuple(
        name.strip()
        for name in _AND_RE.split(_clean_value(fields.get("author", "")))
        if name.strip()
    )
    venue = _clean_value(fields.get("journal", "") or fields.get("booktitle", ""))
    uri = _clean_value(fields.get("ee", "") or fields.get("url", "")) or None
    if not key:
        report.skip(position, None, "entry has no citation key")
        return None
    return ArticleRecord(
        key=key, title=title, authors=authors, year=year, venue=venue, uri=uri
    )


def parse_bibtex(text: str) -> tuple[list[ArticleRecord], ParseReport]:
    scanner = _BibScanner(text)
    report = ParseReport()
    records: list[ArticleRecord] = []
    while True:
        at = text.find("@", scanner.pos)
        if at == -1:
            break
        scanner.pos = at + 1
        position = f"line {scanner.line(at)}"
        try:
            entry_type = scanner.read_ident().lower()
        except _EntrySkip as exc:
            report.skip(position, None, exc.reason)
            continue
        if entry_type == "comment":
            continue
        if entry_type in ("string", "preamble"):
            report.notes.append(f"{position}: @{entry_type} directive ignored")
            continue
        try:
            scanner.expect("{")
            key = scanner.read_key()
            fields: dict[str, str] = {}
            while True:
                scanner.skip_ws()
                if scanner.eof():
                    raise _EntrySkip("unterminated entry")
                ch = scanner.text[scanner.pos]
                if ch == "}":
                    scanner.pos += 1
                    break
                if ch == ",":
                    scanner.pos += 1
                    continue
                name = scanner.read_ident().lower()
                scanner.expect("=")
                fields[name] = scanner.read_value()
        except _EntrySkip as exc:
            report.skip(position, None, exc.reason)
            # Resync at the next entry marker.
            nxt = text.find("@", at + 1)
            scanner.pos = len(text) if nxt == -1 else nxt
            continue
        record = _record_from_fields(key, fields, position, report)
        if record is not None:
            records.append(record)
            report.parsed += 1
    return records, report


# ----------------------------------------------------------------------
# DBLP XML

_DBLP_KINDS = ("article", "inproceedings")


def parse_dblp_xml(text: str) -> tuple[list[ArticleRecord], ParseReport]:
    report = ParseReport()
    records: list[ArticleRecord] = []
    try:
        stream = io.StringIO(text)
        index = 0
        for event, elem in ET.iterparse(stream, events=("end",)):
            tag = elem.tag.rsplit("}", 1)[-1]
            if tag not in _DBLP_KINDS:
                continue
            index += 1
            position = f"entry #{index}"
            key = elem.get("key") or ""
            title_el = elem.find("title")
            title = ""
            if title_el is not None:
                # itertext flattens markup like <i> inside titles.
                title = " ".join("".join(title_el.itertext()).split())
            if not key:
                report.skip(position, None, "element has no key attribute")
                elem.clear()
                continue
            if not title:
                report.skip(position, key, "missing mandatory field: title")
                elem.clear()
                continue
            authors = tuple(
                " ".join("".join(a.itertext()).split())
                for a in elem.findall("author")
            )
            year: int | None = None
            year_el = elem.find("year")
            if year_el is not None and (year_el.text or "").strip().isdigit():
                year = int(year_el.text.strip())
            venue_el = elem.find("journal")
            if venue_el is None:
                venue_el = elem.find("booktitle")
            venue = (venue_el.text or "").strip() if venue_el is not None else ""
            ee = elem.find("ee")
            uri = (ee.text or "").strip() or None if ee is not None else None
            records.append(
                ArticleRecord(
                    key=key,
                    title=title,
                    authors=authors,
                    year=year,
                    venue=venue,
                    uri=uri,
                )
            )
            report.parsed += 1
            elem.clear()
    except ET.ParseError as exc:
        raise ParseError(f"broken XML stream: {exc}") from None
    return records, report


# ----------------------------------------------------------------------
# rendering


def render_bibtex(records: Iterable[ArticleRecord]) -> str:
    """UTF-8 BibTeX with the supported field subset; no LaTeX escaping."""
    chunks = []
    for record in records:
        lines = [f"@article{{{record.key},"]
        lines.append(f"  title = {{{record.title}}},")
        if record.authors:
            lines.append(f"  author = {{{' and '.join(record.authors)}}},")
        if record.year is not None:
            lines.append(f"  year = {{{record.year}}},")
        if record.venue:
            lines.append(f"  journal = {{{record.venue}}},")
        if record.uri:
            lines.append(f"  url = {{{record.uri}}},")
        lines[-1] = lines[-1].rstrip(",")
        lines.append("}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + ("\n" if chunks else "")
