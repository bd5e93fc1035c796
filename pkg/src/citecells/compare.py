"""Sensitivity of reference values across years, window lengths, and adjacent cells.

Reference values computed one year off, one window-length off, or one cell
over quantify how much a slightly misplaced reference context would distort
a normalized result. Each comparison of two positive values x and y yields
the absolute relative difference r = 2|x - y| / (x + y), a symmetric,
scale-free quantity in [0, 2).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import (
    EmptyDistribution,
    EmptyProfile,
    MixedDimensions,
    NonPositiveValue,
)
from .metrics import ReferenceTable, citation_count
from .model import AdjacentTriple, CellKey, CellPartition, Corpus

log = logging.getLogger(__name__)

DIM_YEAR = "publication_year"
DIM_WINDOW = "window_length"
DIM_CELL = "adjacent_cell"
DIMENSIONS = (DIM_YEAR, DIM_WINDOW, DIM_CELL)
METRICS = ("e", "t")


def relative_difference(x: float, y: float) -> float:
    """Absolute relative difference 2|x - y| / (x + y) of two positive values."""
    if x <= 0 or y <= 0:
        raise NonPositiveValue(f"relative difference needs positive values, got {x} and {y}")
    return 2.0 * abs(x - y) / (x + y)


@dataclass(frozen=True)
class DifferenceRecord:
    """One pairwise comparison of reference values in a single dimension."""

    dimension: str
    metric: str
    left_label: str
    right_label: str
    x: float
    y: float
    r: float


@dataclass(frozen=True)
class DimensionSummary:
    """Range of r values observed in one (dimension, metric)."""

    dimension: str
    metric: str
    count: int
    min_r: float
    max_r: float

    def __post_init__(self) -> None:
        if not (0 <= self.min_r <= self.max_r <= 2):
            raise ValueError(f"invalid r range [{self.min_r}, {self.max_r}]")


def _context_label(cell: CellKey, year: int, window: int) -> str:
    return f"{cell}|{year}|w{window}"


def _pair_record(
    dimension: str,
    metric: str,
    left_label: str,
    right_label: str,
    x: float | None,
    y: float | None,
) -> DifferenceRecord | None:
    if x is None or y is None:
        log.warning("skipping %s vs %s (%s): missing reference value", left_label, right_label, metric)
        return None
    if x <= 0 or y <= 0:
        log.warning("skipping %s vs %s (%s): non-positive reference value", left_label, right_label, metric)
        return None
    return DifferenceRecord(
        dimension=dimension,
        metric=metric,
        left_label=left_label,
        right_label=right_label,
        x=x,
        y=y,
        r=relative_difference(x, y),
    )


def _sorted_records(records: list[DifferenceRecord]) -> list[DifferenceRecord]:
    return sorted(records, key=lambda rec: (rec.dimension, rec.metric, rec.left_label, rec.right_label))


def year_dimension_pairs(
    table: ReferenceTable,
    year_pairs: Sequence[tuple[int, int]],
    cells: Iterable[CellKey] | None = None,
    windows: Iterable[int] | None = None,
    metric: str = "e",
) -> list[DifferenceRecord]:
    """Compare reference values of subsequent publication years, context by context.

    Pairs whose values are missing or non-positive are skipped with a logged
    reason; with a complete table the result holds one record per
    (cell, window, year pair).
    """
    cells = list(cells) if cells is not None else table.cells()
    windows = list(windows) if windows is not None else table.windows()
    records = []
    for cell in cells:
        for window in windows:
            for year_a, year_b in year_pairs:
                record = _pair_record(
                    DIM_YEAR,
                    metric,
                    _context_label(cell, year_a, window),
                    _context_label(cell, year_b, window),
                    table.value(cell, year_a, window, metric),
                    table.value(cell, year_b, window, metric),
                )
                if record:
                    records.append(record)
    return _sorted_records(records)


def window_dimension_pairs(
    table: ReferenceTable,
    window_pairs: Sequence[tuple[int, int]],
    cells: Iterable[CellKey] | None = None,
    years: Iterable[int] | None = None,
    metric: str = "e",
) -> list[DifferenceRecord]:
    """Compare reference values of subsequent citation window lengths."""
    cells = list(cells) if cells is not None else table.cells()
    years = list(years) if years is not None else table.years()
    records = []
    for cell in cells:
        for year in years:
            for window_a, window_b in window_pairs:
                record = _pair_record(
                    DIM_WINDOW,
                    metric,
                    _context_label(cell, year, window_a),
                    _context_label(cell, year, window_b),
                    table.value(cell, year, window_a, metric),
                    table.value(cell, year, window_b, metric),
                )
                if record:
                    records.append(record)
    return _sorted_records(records)


def cell_dimension_pairs(
    table: ReferenceTable,
    triples: Sequence[AdjacentTriple],
    years: Iterable[int] | None = None,
    windows: Iterable[int] | None = None,
    metric: str = "e",
) -> list[DifferenceRecord]:
    """Compare reference values of adjacent cells: i-only vs combined, combined vs j-only."""
    years = list(years) if years is not None else table.years()
    windows = list(windows) if windows is not None else table.windows()
    records = []
    for triple in triples:
        for cell_a, cell_b in triple.pairs():
            for year in years:
                for window in windows:
                    record = _pair_record(
                        DIM_CELL,
                        metric,
                        _context_label(cell_a, year, window),
                        _context_label(cell_b, year, window),
                        table.value(cell_a, year, window, metric),
                        table.value(cell_b, year, window, metric),
                    )
                    if record:
                        records.append(record)
    return _sorted_records(records)


def summarize_dimension(records: Sequence[DifferenceRecord]) -> DimensionSummary:
    """Count and range of r over records that share one (dimension, metric)."""
    if not records:
        raise EmptyDistribution("cannot summarize an empty record list")
    contexts = {(rec.dimension, rec.metric) for rec in records}
    if len(contexts) > 1:
        raise MixedDimensions(f"records span multiple (dimension, metric) contexts: {sorted(contexts)}")
    values = [rec.r for rec in records]
    dimension, metric = next(iter(contexts))
    return DimensionSummary(
        dimension=dimension,
        metric=metric,
        count=len(values),
        min_r=min(values),
        max_r=max(values),
    )


@dataclass(frozen=True)
class ResearcherProfile:
    """How one researcher's articles distribute over partition cells."""

    researcher_id: str
    n_articles: int
    shares: Mapping[CellKey, float]
    top_cells: frozenset[CellKey]
    mean_citations: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "shares", dict(self.shares))
        object.__setattr__(self, "top_cells", frozenset(self.top_cells))
        if self.n_articles < 1:
            raise ValueError("a profile needs at least one article")
        total = math.fsum(self.shares.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"shares sum to {total}, expected 1")
        best = max(self.shares.values())
        exact_top = {cell for cell, share in self.shares.items() if share == best}
        if self.top_cells != exact_top:
            raise ValueError("top_cells must be exactly the cells attaining the maximum share")


def researcher_profile(
    corpus: Corpus,
    partition: CellPartition,
    researcher_id: str,
    period: tuple[int, int] = (2000, 2007),
    window: int = 5,
) -> ResearcherProfile:
    """Cell shares, top cells, and mean window citations of one researcher.

    Only articles admitted to the partition and published within the period
    count. The mean is taken jointly over all those articles.
    """
    low, high = period
    if low > high:
        raise ValueError(f"empty period {period!r}")
    counts: dict[CellKey, int] = {}
    total_citations = 0
    n = 0
    for cell, pub_ids in partition.cells.items():
        for pub_id in pub_ids:
            pub = corpus.publications[pub_id]
            if researcher_id in pub.author_ids and low <= pub.year <= high:
                counts[cell] = counts.get(cell, 0) + 1
                total_citations += citation_count(pub, window)
                n += 1
    if n == 0:
        raise EmptyProfile(
            f"researcher {researcher_id!r} has no admitted articles in {low}-{high}"
        )
    shares = {cell: counts[cell] / n for cell in sorted(counts)}
    best = max(counts.values())
    top_cells = frozenset(cell for cell, c in counts.items() if c == best)
    return ResearcherProfile(
        researcher_id=researcher_id,
        n_articles=n,
        shares=shares,
        top_cells=top_cells,
        mean_citations=total_citations / n,
    )


def profile_overlap(a: ResearcherProfile, b: ResearcherProfile) -> float:
    """Cosine similarity of two share vectors over the union of their cells."""
    if not a.shares or not b.shares:
        raise EmptyProfile("profile overlap needs non-empty profiles")
    cells = set(a.shares) | set(b.shares)
    dot = math.fsum(a.shares.get(cell, 0.0) * b.shares.get(cell, 0.0) for cell in cells)
    norm_a = math.sqrt(math.fsum(s * s for s in a.shares.values()))
    norm_b = math.sqrt(math.fsum(s * s for s in b.shares.values()))
    return min(1.0, dot / (norm_a * norm_b))
