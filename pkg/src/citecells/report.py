"""Report emission: reference tables, researcher profile matrices, difference summaries.

Every report is a pure function of its inputs and spec, so identical inputs
produce byte-identical files. Values are kept at full precision internally
and rounded only here. CSV reports start with "# key: value" metadata
comment lines; JSON reports carry the same pairs in a "meta" object.
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .compare import DifferenceRecord, DimensionSummary, ResearcherProfile
from .errors import EmptyReport
from .metrics import CssScores, ReferenceTable, ReferenceValues
from .model import CellKey

REPORT_KINDS = ("reference_table", "profile_matrix", "difference_summary")

# Rounding mirrors the published-table conventions: reference values at one
# decimal, shares and per-researcher means as whole numbers, r as a one
# decimal percentage. Compared values x and y keep more digits because r is
# rounding-sensitive.
DEFAULT_ROUNDING = {
    "e": 1,
    "t": 1,
    "css": 1,
    "x": 4,
    "y": 4,
    "r_percent": 1,
    "share_percent": 0,
    "mean_citations": 0,
}


@dataclass(frozen=True)
class ReportSpec:
    """Output options for one report: format, per-field rounding, metadata echo."""

    kind: str = ""
    format: str = "csv"
    rounding: Mapping[str, int] = field(default_factory=dict)
    meta: Mapping[str, str] = field(default_factory=dict)
    path: Path | None = None

    def __post_init__(self) -> None:
        if self.kind and self.kind not in REPORT_KINDS:
            raise ValueError(f"unknown report kind {self.kind!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown report format {self.format!r}")
        merged = {**DEFAULT_ROUNDING, **dict(self.rounding)}
        for name, places in merged.items():
            if places < 0:
                raise ValueError(f"rounding for {name!r} must be non-negative")
        object.__setattr__(self, "rounding", merged)
        object.__setattr__(self, "meta", dict(self.meta))

    def places(self, name: str) -> int:
        return self.rounding[name]


def _fmt(value: float, places: int) -> str:
    return f"{value:.{places}f}"


def _rounded(value: float, places: int) -> float | int:
    return int(round(value)) if places == 0 else round(value, places)


def _meta_pairs(spec: ReportSpec) -> dict[str, str]:
    pairs = {"tool": f"citecells {__version__}"}
    pairs.update({str(k): str(v) for k, v in sorted(spec.meta.items())})
    return pairs


def _csv_buffer(spec: ReportSpec):
    buffer = io.StringIO()
    for key, value in _meta_pairs(spec).items():
        buffer.write(f"# {key}: {value}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    return buffer, writer


def _json_bytes(payload: dict[str, Any]) -> bytes:
    return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def write_report(payload: bytes, path: Path) -> Path:
    """Write emitted report bytes to disk, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(payload)
    return path


def _css_headers(k: int) -> list[str]:
    return [f"css_b{i}" for i in range(1, k + 1)]


def emit_reference_table(entries: Sequence[ReferenceValues], spec: ReportSpec) -> bytes:
    """Emit reference values sorted by (cell, year, window)."""
    entries = sorted(entries, key=lambda rv: (rv.cell, rv.year, rv.window))
    if not entries:
        raise EmptyReport("no reference values to report")
    k_values = {rv.css.k for rv in entries}
    if len(k_values) > 1:
        raise ValueError(f"entries carry mixed css lengths {sorted(k_values)}")
    k = k_values.pop()
    header = ["cell", "year", "window", "n", "e", "t", *_css_headers(k)]
    if spec.format == "csv":
        buffer, writer = _csv_buffer(spec)
        writer.writerow(header)
        for rv in entries:
            writer.writerow(
                [
                    str(rv.cell),
                    rv.year,
                    rv.window,
                    rv.n,
                    _fmt(rv.e, spec.places("e")),
                    _fmt(rv.t, spec.places("t")),
                    *(_fmt(b, spec.places("css")) for b in rv.css.scores),
                ]
            )
        return buffer.getvalue().encode("utf-8")
    rows = []
    for rv in entries:
        row: dict[str, Any] = {
            "cell": str(rv.cell),
            "year": rv.year,
            "window": rv.window,
            "n": rv.n,
            "e": _rounded(rv.e, spec.places("e")),
            "t": _rounded(rv.t, spec.places("t")),
        }
        for name, score in zip(_css_headers(k), rv.css.scores):
            row[name] = _rounded(score, spec.places("css"))
        rows.append(row)
    return _json_bytes({"meta": _meta_pairs(spec), "rows": rows})


def load_reference_table(source: Any, fmt: str = "csv") -> ReferenceTable:
    """Parse an emitted (or hand-curated) reference table back into a lookup table.

    Path objects are read as files; str and bytes are taken as file content.
    """
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    if fmt == "json":
        rows = json.loads(text)["rows"]
    elif fmt == "csv":
        lines = [line for line in text.splitlines() if line and not line.startswith("#")]
        rows = list(csv.DictReader(io.StringIO("\n".join(lines))))
    else:
        raise ValueError(f"unknown reference table format {fmt!r}")
    entries = []
    for row in rows:
        css_names = sorted(
            (name for name in row if name.startswith("css_b")),
            key=lambda name: int(name[5:]),
        )
        scores = tuple(float(row[name]) for name in css_names)
        entries.append(
            ReferenceValues(
                cell=CellKey.from_text(str(row["cell"])),
                year=int(row["year"]),
                window=int(row["window"]),
                n=int(row["n"]),
                e=float(row["e"]),
                css=CssScores(scores),
                t=float(row["t"]),
            )
        )
    return ReferenceTable(tuple(entries))


def emit_profile_matrix(profiles: Sequence[ResearcherProfile], spec: ReportSpec) -> bytes:
    """Emit a cells x researchers share matrix with top-cell markers and a mean footer.

    Rows cover every cell holding articles of at least one profiled
    researcher; zero shares stay blank. The top_cells marker row joins each
    researcher's maximal-share cells with "|", and the footer row carries the
    per-researcher mean citations.
    """
    if not profiles:
        raise EmptyReport("no researcher profiles to report")
    cells = sorted({cell for profile in profiles for cell in profile.shares})
    share_places = spec.places("share_percent")
    mean_places = spec.places("mean_citations")
    if spec.format == "csv":
        buffer, writer = _csv_buffer(spec)
        writer.writerow(["cell", *(p.researcher_id for p in profiles)])
        writer.writerow(["n_articles", *(p.n_articles for p in profiles)])
        for cell in cells:
            row: list[str] = [str(cell)]
            for profile in profiles:
                share = profile.shares.get(cell)
                row.append("" if share is None else _fmt(share * 100.0, share_places))
            writer.writerow(row)
        writer.writerow(
            ["top_cells", *("|".join(str(c) for c in sorted(p.top_cells)) for p in profiles)]
        )
        writer.writerow(
            ["mean_citations", *(_fmt(p.mean_citations, mean_places) for p in profiles)]
        )
        return buffer.getvalue().encode("utf-8")
    payload_profiles = []
    for profile in profiles:
        payload_profiles.append(
            {
                "researcher": profile.researcher_id,
                "n_articles": profile.n_articles,
                "shares_percent": {
                    str(cell): _rounded(share * 100.0, share_places)
                    for cell, share in sorted(profile.shares.items())
                },
                "top_cells": [str(c) for c in sorted(profile.top_cells)],
                "mean_citations": _rounded(profile.mean_citations, mean_places),
            }
        )
    return _json_bytes(
        {
            "meta": _meta_pairs(spec),
            "cells": [str(c) for c in cells],
            "profiles": payload_profiles,
        }
    )


DIFFERENCE_HEADER = ["dimension", "metric", "left", "right", "x", "y", "r_percent"]
SUMMARY_HEADER = ["dimension", "metric", "count", "min_r_percent", "max_r_percent"]


def _difference_rows(records: Sequence[DifferenceRecord], spec: ReportSpec) -> list[list[str]]:
    ordered = sorted(records, key=lambda r: (r.dimension, r.metric, r.left_label, r.right_label))
    return [
        [
            rec.dimension,
            rec.metric,
            rec.left_label,
            rec.right_label,
            _fmt(rec.x, spec.places("x")),
            _fmt(rec.y, spec.places("y")),
            _fmt(rec.r * 100.0, spec.places("r_percent")),
        ]
        for rec in ordered
    ]


def _summary_rows(summaries: Sequence[DimensionSummary], spec: ReportSpec) -> list[list[str]]:
    ordered = sorted(summaries, key=lambda s: (s.dimension, s.metric))
    return [
        [
            s.dimension,
            s.metric,
            str(s.count),
            _fmt(s.min_r * 100.0, spec.places("r_percent")),
            _fmt(s.max_r * 100.0, spec.places("r_percent")),
        ]
        for s in ordered
    ]


def _difference_objects(records: Sequence[DifferenceRecord], spec: ReportSpec) -> list[dict[str, Any]]:
    return [
        {
            "dimension": row[0],
            "metric": row[1],
            "left": row[2],
            "right": row[3],
            "x": float(row[4]),
            "y": float(row[5]),
            "r_percent": float(row[6]),
        }
        for row in _difference_rows(records, spec)
    ]


def emit_difference_records(records: Sequence[DifferenceRecord], spec: ReportSpec) -> bytes:
    """Emit the record-level difference listing."""
    if not records:
        raise EmptyReport("no difference records to report")
    if spec.format == "csv":
        buffer, writer = _csv_buffer(spec)
        writer.writerow(DIFFERENCE_HEADER)
        writer.writerows(_difference_rows(records, spec))
        return buffer.getvalue().encode("utf-8")
    return _json_bytes({"meta": _meta_pairs(spec), "records": _difference_objects(records, spec)})


def emit_difference_summary(
    records: Sequence[DifferenceRecord],
    summaries: Sequence[DimensionSummary],
    spec: ReportSpec,
) -> bytes:
    """Emit the full record listing followed by per-(dimension, metric) range blocks."""
    if not records:
        raise EmptyReport("no difference records to report")
    if spec.format == "csv":
        buffer, writer = _csv_buffer(spec)
        buffer.write("# section: records\n")
        writer.writerow(DIFFERENCE_HEADER)
        writer.writerows(_difference_rows(records, spec))
        buffer.write("# section: summary\n")
        writer.writerow(SUMMARY_HEADER)
        writer.writerows(_summary_rows(summaries, spec))
        return buffer.getvalue().encode("utf-8")
    summary_objects = [
        {
            "dimension": row[0],
            "metric": row[1],
            "count": int(row[2]),
            "min_r_percent": float(row[3]),
            "max_r_percent": float(row[4]),
        }
        for row in _summary_rows(summaries, spec)
    ]
    return _json_bytes(
        {
            "meta": _meta_pairs(spec),
            "records": _difference_objects(records, spec),
            "summaries": summary_objects,
        }
    )
