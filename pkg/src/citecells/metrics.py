"""Per-cell citation reference values and publication-level scoring.

Two reference values are computed for every populated (cell, publication
year, citation window) context:

* e, the mean expected number of citations per article, and
* t, the threshold for outstandingly cited articles, obtained by iterated
  truncated means: b_1 is the plain mean of the distribution, and each
  subsequent b_m is the mean of the values at or above b_{m-1}. With the
  default of three iterations, t = b_3.

Individual publications are then normalized against e (observed/expected)
or flagged as highly cited when their window count reaches t.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import (
    EmptyDistribution,
    MissingReference,
    ZeroExpectation,
)
from .model import CellKey, CellPartition, Corpus, PublicationRecord

DEFAULT_CSS_K = 3

AGGREGATION_MODES = ("mean_of_ratios", "ratio_of_sums")


def citation_count(pub: PublicationRecord, window: int) -> int:
    """Citations collected in the first `window` calendar years, publication year included."""
    if window < 1:
        raise ValueError(f"citation window must be at least 1 year, got {window}")
    last = pub.year + window - 1
    return sum(count for year, count in pub.citations_by_year.items() if pub.year <= year <= last)


def cell_distribution(
    partition: CellPartition,
    corpus: Corpus,
    cell: CellKey,
    year: int,
    window: int,
) -> list[int]:
    """Window citation counts for the cell's publications of one year, in pub_id order."""
    counts: list[int] = []
    for pub_id in partition.cells.get(cell, ()):
        pub = corpus.publications[pub_id]
        if pub.year == year:
            counts.append(citation_count(pub, window))
    return counts


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def mean_expected_citations(distribution: Sequence[float]) -> float:
    """Arithmetic mean citations per article of a non-empty distribution."""
    if not distribution:
        raise EmptyDistribution("cannot take the mean of an empty distribution")
    return _mean(distribution)


@dataclass(frozen=True)
class CssScores:
    """Iterated truncated-mean scores b_1 <= b_2 <= ... <= b_k.

    b_1 is the plain mean of the source distribution; later scores are means
    of progressively truncated upper tails.
    """

    scores: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "scores", tuple(float(s) for s in self.scores))
        if not self.scores:
            raise ValueError("scores must be non-empty")
        if self.scores[0] < 0:
            raise ValueError("scores must be non-negative")
        if any(later < earlier for earlier, later in zip(self.scores, self.scores[1:])):
            raise ValueError(f"scores {self.scores!r} are not non-decreasing")

    @property
    def k(self) -> int:
        return len(self.scores)


def css_scores(distribution: Sequence[float], k: int = DEFAULT_CSS_K) -> CssScores:
    """Compute k iterated truncated-mean scores of a citation distribution.

    Truncation is non-strict: each step retains the values >= the previous
    score. Once truncation stops shrinking the retained set, the score is a
    fixed point and the remaining iterations repeat it.
    """
    if not distribution:
        raise EmptyDistribution("cannot score an empty distribution")
    if k < 1:
        raise ValueError(f"iteration count k must be at least 1, got {k}")
    current = list(distribution)
    scores: list[float] = []
    while len(scores) < k:
        b = _mean(current)
        if scores and b < scores[-1]:
            b = scores[-1]  # guard against sub-ulp float regression
        scores.append(b)
        retained = [v for v in current if v >= b]
        if len(retained) == len(current):
            scores.extend([b] * (k - len(scores)))
            break
        current = retained
    return CssScores(tuple(scores))


def outstanding_threshold(distribution: Sequence[float], k: int = DEFAULT_CSS_K) -> float:
    """Threshold for outstandingly cited articles: the k-th truncated-mean score."""
    return css_scores(distribution, k).scores[-1]


@dataclass(frozen=True)
class ReferenceValues:
    """Reference values of one (cell, publication year, citation window) context."""

    cell: CellKey
    year: int
    window: int
    n: int
    e: float
    css: CssScores
    t: float

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError(f"citation window must be at least 1 year, got {self.window}")
        if self.n < 1:
            raise ValueError("reference values require at least one article")
        if self.e < 0 or self.t < 0:
            raise ValueError("reference values must be non-negative")
        if self.t < self.e:
            raise ValueError(f"threshold {self.t} cannot fall below the mean {self.e}")


@dataclass(frozen=True)
class ReferenceTable:
    """Reference values indexed by (cell, year, window), sorted for stable output."""

    entries: tuple[ReferenceValues, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.entries, key=lambda rv: (rv.cell, rv.year, rv.window)))
        object.__setattr__(self, "entries", ordered)
        index: dict[tuple[CellKey, int, int], ReferenceValues] = {}
        for rv in ordered:
            key = (rv.cell, rv.year, rv.window)
            if key in index:
                raise ValueError(f"duplicate reference entry for {key}")
            index[key] = rv
        object.__setattr__(self, "_index", index)

    def get(self, cell: CellKey, year: int, window: int) -> ReferenceValues | None:
        return self._index.get((cell, year, window))  # type: ignore[attr-defined]

    def lookup(self, cell: CellKey, year: int, window: int) -> ReferenceValues:
        entry = self.get(cell, year, window)
        if entry is None:
            raise MissingReference(f"no reference values for ({cell}, {year}, w{window})")
        return entry

    def value(self, cell: CellKey, year: int, window: int, metric: str) -> float | None:
        """The e or t value of a context, or None when the context is absent."""
        if metric not in ("e", "t"):
            raise ValueError(f"unknown metric {metric!r}; expected 'e' or 't'")
        entry = self.get(cell, year, window)
        if entry is None:
            return None
        return entry.e if metric == "e" else entry.t

    def cells(self) -> list[CellKey]:
        return sorted({rv.cell for rv in self.entries})

    def years(self) -> list[int]:
        return sorted({rv.year for rv in self.entries})

    def windows(self) -> list[int]:
        return sorted({rv.window for rv in self.entries})

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def build_reference_table(
    partition: CellPartition,
    corpus: Corpus,
    years: Iterable[int],
    windows: Iterable[int],
    k: int = DEFAULT_CSS_K,
) -> ReferenceTable:
    """Compute reference values for every populated (cell, year, window) context.

    Contexts without articles simply produce no entry; consumers must treat
    the gap as MissingReference rather than as zero.
    """
    years = list(years)
    windows = list(windows)
    if not years:
        raise ValueError("years must be non-empty")
    if not windows:
        raise ValueError("windows must be non-empty")
    entries: list[ReferenceValues] = []
    for cell in sorted(partition.cells):
        by_year: dict[int, list[str]] = {}
        for pub_id in partition.cells[cell]:
            by_year.setdefault(corpus.publications[pub_id].year, []).append(pub_id)
        for year in sorted(set(years)):
            pub_ids = by_year.get(year)
            if not pub_ids:
                continue
            for window in sorted(set(windows)):
                distribution = [
                    citation_count(corpus.publications[pub_id], window) for pub_id in pub_ids
                ]
                css = css_scores(distribution, k)
                entries.append(
                    ReferenceValues(
                        cell=cell,
                        year=year,
                        window=window,
                        n=len(distribution),
                        e=css.scores[0],
                        css=css,
                        t=css.scores[-1],
                    )
                )
    return ReferenceTable(tuple(entries))


@dataclass(frozen=True)
class NormalizedScore:
    """A publication's citation count relative to its cell's expectation."""

    pub_id: str
    observed: int
    expected: float
    ratio: float


def normalized_citation_score(
    pub: PublicationRecord,
    table: ReferenceTable,
    window: int,
) -> NormalizedScore:
    """Observed/expected citation ratio of one publication within its own cell."""
    entry = table.get(pub.cell_key(), pub.year, window)
    if entry is None:
        raise MissingReference(
            f"no reference values for ({pub.cell_key()}, {pub.year}, w{window})"
        )
    if entry.e == 0:
        raise ZeroExpectation(
            f"expected citation rate is zero for ({entry.cell}, {entry.year}, w{entry.window})"
        )
    observed = citation_count(pub, window)
    return NormalizedScore(
        pub_id=pub.pub_id,
        observed=observed,
        expected=entry.e,
        ratio=observed / entry.e,
    )


def aggregate_normalized(scores: Sequence[NormalizedScore], mode: str = "mean_of_ratios") -> float:
    """Aggregate normalized scores as a mean of ratios or a ratio of sums."""
    if not scores:
        raise EmptyDistribution("cannot aggregate an empty score list")
    if mode == "mean_of_ratios":
        return _mean([s.ratio for s in scores])
    if mode == "ratio_of_sums":
        total_expected = math.fsum(s.expected for s in scores)
        if total_expected <= 0:
            raise ZeroExpectation("aggregate expectation is zero")
        return math.fsum(s.observed for s in scores) / total_expected
    raise ValueError(f"unknown aggregation mode {mode!r}; expected one of {AGGREGATION_MODES}")


def flag_highly_cited(pub: PublicationRecord, table: ReferenceTable, window: int) -> bool:
    """True when the publication's window count reaches its cell's threshold t."""
    entry = table.get(pub.cell_key(), pub.year, window)
    if entry is None:
        raise MissingReference(
            f"no reference values for ({pub.cell_key()}, {pub.year}, w{window})"
        )
    return citation_count(pub, window) >= entry.t
