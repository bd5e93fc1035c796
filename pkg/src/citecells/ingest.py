"""Reading and writing publication data files (CSV and JSONL).

Publications CSV schema (header required, UTF-8):
    pub_id,year,doc_type,categories,citations,authors
where categories joins codes with ";", citations joins "YYYY:count" entries
with "|" (absent years mean zero), and authors joins researcher ids with ";".
The JSONL alternative carries the same field names, with citations as a
year -> count object. Category registry CSV: code,name.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import (
    DuplicateId,
    EmptyCategorySet,
    InvalidCategoryCode,
    RowParseError,
    TemporalViolation,
)
from .model import Corpus, PublicationRecord, validate_code

log = logging.getLogger(__name__)

PUBLICATION_FIELDS = ("pub_id", "year", "doc_type", "categories", "citations", "authors")
CATEGORY_FIELDS = ("code", "name")
FORMATS = ("csv", "jsonl")


@dataclass(frozen=True)
class RejectedRow:
    """One input row that failed validation, with its 1-based line number."""

    line: int
    pub_id: str | None
    reason: str


@dataclass(frozen=True)
class IngestResult:
    """Parsed corpus plus the rows that were rejected on the way."""

    corpus: Corpus
    rejected: tuple[RejectedRow, ...]


def _read_text(source: Any) -> str:
    """Return decoded text. Path objects are read as files; str and bytes
    are taken as file content."""
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _parse_citations_field(text: str) -> dict[int, int]:
    citations: dict[int, int] = {}
    text = text.strip()
    if not text:
        return citations
    for entry in text.split("|"):
        year_part, sep, count_part = entry.partition(":")
        if not sep:
            raise ValueError(f"citation entry {entry!r} is not YYYY:count")
        year = int(year_part)
        count = int(count_part)
        if count < 0:
            raise ValueError(f"negative citation count in entry {entry!r}")
        if year in citations:
            raise ValueError(f"duplicate citation year {year}")
        citations[year] = count
    return citations


def _split_tokens(text: str) -> list[str]:
    return [token.strip() for token in text.split(";") if token.strip()]


def _record_from_csv_row(row: Mapping[str, str]) -> PublicationRecord:
    pub_id = (row.get("pub_id") or "").strip()
    if not pub_id:
        raise ValueError("missing pub_id")
    try:
        year = int((row.get("year") or "").strip())
    except ValueError:
        raise ValueError(f"year {row.get('year')!r} is not an integer") from None
    return PublicationRecord(
        pub_id=pub_id,
        year=year,
        doc_type=(row.get("doc_type") or ""),
        categories=frozenset(_split_tokens(row.get("categories") or "")),
        citations_by_year=_parse_citations_field(row.get("citations") or ""),
        author_ids=frozenset(_split_tokens(row.get("authors") or "")),
    )


def _record_from_json_obj(obj: Any) -> PublicationRecord:
    if not isinstance(obj, dict):
        raise ValueError("line is not a JSON object")
    missing = [k for k in ("pub_id", "year", "doc_type", "categories") if k not in obj]
    if missing:
        raise ValueError(f"missing fields {missing}")
    citations_raw = obj.get("citations") or {}
    if not isinstance(citations_raw, dict):
        raise ValueError("citations must be a year -> count object")
    citations = {int(year): int(count) for year, count in citations_raw.items()}
    if any(count < 0 for count in citations.values()):
        raise ValueError("negative citation count")
    return PublicationRecord(
        pub_id=str(obj["pub_id"]),
        year=int(obj["year"]),
        doc_type=str(obj["doc_type"]),
        categories=frozenset(str(c) for c in obj["categories"]),
        citations_by_year=citations,
        author_ids=frozenset(str(a) for a in obj.get("authors") or ()),
    )


def parse_publications(
    source: Any,
    fmt: str = "csv",
    registry: Mapping[str, str] | None = None,
    strict: bool = False,
) -> IngestResult:
    """Parse a publications file into a corpus, collecting rejected rows.

    In strict mode the first invalid row raises (RowParseError, DuplicateId,
    or TemporalViolation); otherwise invalid rows are skipped, logged, and
    reported with their line numbers in the result. When a registry is given,
    rows using codes outside it are rejected; otherwise the registry is
    inferred from the codes seen.
    """
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
    text = _read_text(source)
    publications: dict[str, PublicationRecord] = {}
    rejected: list[RejectedRow] = []

    def reject(line: int, pub_id: str | None, reason: str, error: Exception | None = None):
        if strict:
            if isinstance(error, (DuplicateId, TemporalViolation)):
                raise error
            raise RowParseError(line, reason)
        rejected.append(RejectedRow(line, pub_id, reason))
        log.warning("rejected row at line %d: %s", line, reason)

    def admit(line: int, record: PublicationRecord):
        if record.pub_id in publications:
            reject(line, record.pub_id, f"duplicate pub_id {record.pub_id!r}", DuplicateId(record.pub_id))
            return
        if registry is not None:
            unknown = record.categories - registry.keys()
            if unknown:
                reject(line, record.pub_id, f"unknown category codes {sorted(unknown)}")
                return
        publications[record.pub_id] = record

    parse_failures = (ValueError, EmptyCategorySet, InvalidCategoryCode, TemporalViolation)
    if fmt == "csv":
        reader = csv.DictReader(io.StringIO(text))
        if reader.fieldnames is None:
            raise RowParseError(1, "missing header row")
        header = [name.strip() for name in reader.fieldnames]
        missing = [name for name in PUBLICATION_FIELDS if name not in header]
        if missing:
            raise RowParseError(1, f"header is missing columns {missing}")
        for row in reader:
            line = reader.line_num
            pub_id_hint = (row.get("pub_id") or "").strip() or None
            try:
                record = _record_from_csv_row(row)
            except parse_failures as exc:
                reject(line, pub_id_hint, str(exc), exc)
                continue
            admit(line, record)
    else:
        for line, raw in enumerate(text.splitlines(), start=1):
            if not raw.strip():
                continue
            try:
                record = _record_from_json_obj(json.loads(raw))
            except json.JSONDecodeError as exc:
                reject(line, None, f"invalid JSON: {exc.msg}")
                continue
            except parse_failures as exc:
                reject(line, None, str(exc), exc)
                continue
            admit(line, record)

    if registry is None:
        used = sorted({c for rec in publications.values() for c in rec.categories})
        registry = {code: code for code in used}
    corpus = Corpus(publications, dict(registry))
    return IngestResult(corpus=corpus, rejected=tuple(rejected))


def parse_category_registry(source: Any) -> dict[str, str]:
    """Parse a code,name registry CSV into a mapping, enforcing uniqueness."""
    text = _read_text(source)
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise RowParseError(1, "missing header row")
    header = [name.strip() for name in reader.fieldnames]
    missing = [name for name in CATEGORY_FIELDS if name not in header]
    if missing:
        raise RowParseError(1, f"header is missing columns {missing}")
    registry: dict[str, str] = {}
    names: set[str] = set()
    for row in reader:
        line = reader.line_num
        code = (row.get("code") or "").strip()
        name = (row.get("name") or "").strip()
        try:
            validate_code(code)
        except InvalidCategoryCode as exc:
            raise RowParseError(line, str(exc)) from None
        if not name:
            raise RowParseError(line, f"category {code!r} has an empty name")
        if code in registry:
            raise RowParseError(line, f"duplicate category code {code!r}")
        if name in names:
            raise RowParseError(line, f"duplicate category name {name!r}")
        registry[code] = name
        names.add(name)
    return registry


def _citations_field(record: PublicationRecord) -> str:
    return "|".join(f"{year}:{count}" for year, count in sorted(record.citations_by_year.items()))


def write_publications(corpus: Corpus, fmt: str = "csv") -> bytes:
    """Serialize the corpus publications, sorted by pub_id, as CSV or JSONL."""
    if fmt not in FORMATS:
        raise ValueError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
    records = [corpus.publications[pub_id] for pub_id in sorted(corpus.publications)]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(PUBLICATION_FIELDS)
        for rec in records:
            writer.writerow(
                [
                    rec.pub_id,
                    rec.year,
                    rec.doc_type,
                    ";".join(sorted(rec.categories)),
                    _citations_field(rec),
                    ";".join(sorted(rec.author_ids)),
                ]
            )
        return buffer.getvalue().encode("utf-8")
    lines = []
    for rec in records:
        obj = {
            "pub_id": rec.pub_id,
            "year": rec.year,
            "doc_type": rec.doc_type,
            "categories": sorted(rec.categories),
            "citations": {str(y): c for y, c in sorted(rec.citations_by_year.items())},
            "authors": sorted(rec.author_ids),
        }
        lines.append(json.dumps(obj, ensure_ascii=False))
    return ("\n".join(lines) + "\n" if lines else "").encode("utf-8")


def write_category_registry(corpus: Corpus) -> bytes:
    """Serialize the corpus category registry as code,name CSV."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CATEGORY_FIELDS)
    for code in sorted(corpus.categories):
        writer.writerow([code, corpus.categories[code]])
    return buffer.getvalue().encode("utf-8")
