"""Corpus data model: categories, cell keys, publications, and the cell partition.

A partition cell is identified by the exact combination of subject categories
assigned to a publication's journal. Two publications land in the same cell
if and only if their category sets are equal, so the cells partition every
admitted corpus.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from .errors import (
    DegenerateTriple,
    DuplicateId,
    EmptyCategorySet,
    InvalidCategoryCode,
    InvalidRegistry,
    TemporalViolation,
    UnknownCategory,
)


def validate_code(code: str) -> str:
    """Check a subject-category code against the naming rules and return it."""
    if not code:
        raise InvalidCategoryCode("category code is empty")
    if ";" in code:
        raise InvalidCategoryCode(f"category code {code!r} contains ';'")
    if any(ch.isspace() for ch in code):
        raise InvalidCategoryCode(f"category code {code!r} contains whitespace")
    return code


@dataclass(frozen=True)
class SubjectCategory:
    """A journal classification label, e.g. code "MA" for applied mathematics."""

    code: str
    name: str

    def __post_init__(self) -> None:
        validate_code(self.code)


@dataclass(frozen=True, order=True)
class CellKey:
    """Canonical form of an exact subject-category combination.

    Codes are kept strictly ascending so that equal category sets always
    produce equal keys; the textual form joins the codes with ";".
    """

    codes: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.codes:
            raise EmptyCategorySet("a cell key needs at least one category code")
        for code in self.codes:
            validate_code(code)
        if list(self.codes) != sorted(set(self.codes)):
            raise InvalidCategoryCode(
                f"cell key codes {self.codes!r} are not in canonical order"
            )

    @classmethod
    def from_text(cls, text: str) -> "CellKey":
        """Parse a ";"-joined key, canonicalizing along the way."""
        return canonical_cell_key(text.split(";"))

    def __str__(self) -> str:
        return ";".join(self.codes)


def canonical_cell_key(categories: Iterable[str]) -> CellKey:
    """Build the canonical cell key for a set of category codes.

    Duplicates collapse and codes are sorted, so the result is independent of
    input order and idempotent on its own codes.
    """
    codes = sorted(set(categories))
    if not codes:
        raise EmptyCategorySet("cannot build a cell key from an empty category set")
    for code in codes:
        validate_code(code)
    return CellKey(tuple(codes))


@dataclass(frozen=True)
class PublicationRecord:
    """One publication: identity, venue categories, and per-year citation counts.

    Zero citation-count entries are dropped at construction so that absent
    years and explicit zeros are the same record (file round-trips rely on
    this). doc_type is normalized to a lowercase token.
    """

    pub_id: str
    year: int
    doc_type: str
    categories: frozenset[str]
    citations_by_year: Mapping[int, int] = field(default_factory=dict)
    author_ids: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if not self.pub_id:
            raise ValueError("pub_id must be non-empty")
        if not self.doc_type or not self.doc_type.strip():
            raise ValueError(f"publication {self.pub_id!r} has an empty doc_type")
        object.__setattr__(self, "doc_type", self.doc_type.strip().lower())
        object.__setattr__(self, "categories", frozenset(self.categories))
        if not self.categories:
            raise EmptyCategorySet(f"publication {self.pub_id!r} has no categories")
        for code in self.categories:
            validate_code(code)
        cleaned: dict[int, int] = {}
        for cite_year, count in self.citations_by_year.items():
            cite_year = int(cite_year)
            count = int(count)
            if count < 0:
                raise ValueError(
                    f"publication {self.pub_id!r} has a negative citation count in {cite_year}"
                )
            if cite_year < self.year:
                raise TemporalViolation(
                    self.pub_id,
                    f"citations in {cite_year} precede publication year {self.year}",
                )
            if count > 0:
                cleaned[cite_year] = count
        object.__setattr__(self, "citations_by_year", cleaned)
        object.__setattr__(self, "author_ids", frozenset(self.author_ids))

    def cell_key(self) -> CellKey:
        """The partition cell this publication belongs to."""
        return canonical_cell_key(self.categories)


@dataclass(frozen=True)
class Corpus:
    """Immutable collection of publications plus the category registry they use."""

    publications: Mapping[str, PublicationRecord]
    categories: Mapping[str, str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "publications", dict(self.publications))
        object.__setattr__(self, "categories", dict(self.categories))
        names = list(self.categories.values())
        if len(set(names)) != len(names):
            raise InvalidRegistry("category names must be unique within a corpus")
        for code in self.categories:
            validate_code(code)
        for pub_id, pub in self.publications.items():
            if pub_id != pub.pub_id:
                raise ValueError(
                    f"corpus key {pub_id!r} does not match record id {pub.pub_id!r}"
                )
            missing = pub.categories - self.categories.keys()
            if missing:
                raise UnknownCategory(
                    f"publication {pub.pub_id!r} uses unregistered categories {sorted(missing)}"
                )

    @classmethod
    def from_records(
        cls,
        records: Iterable[PublicationRecord],
        categories: Mapping[str, str] | None = None,
    ) -> "Corpus":
        """Assemble a corpus, inferring a code->code registry when none is given."""
        publications: dict[str, PublicationRecord] = {}
        for record in records:
            if record.pub_id in publications:
                raise DuplicateId(record.pub_id)
            publications[record.pub_id] = record
        if categories is None:
            used = sorted({c for rec in publications.values() for c in rec.categories})
            categories = {code: code for code in used}
        return cls(publications, categories)

    def researcher_ids(self) -> list[str]:
        """All researcher identifiers linked to any publication, sorted."""
        return sorted({r for pub in self.publications.values() for r in pub.author_ids})


@dataclass(frozen=True)
class CellPartition:
    """Disjoint grouping of admitted publications by exact category combination.

    Each value is a tuple of pub_ids in ascending order; no id appears in more
    than one cell.
    """

    cells: Mapping[CellKey, tuple[str, ...]]

    def __post_init__(self) -> None:
        cells = {key: tuple(ids) for key, ids in self.cells.items()}
        object.__setattr__(self, "cells", cells)
        seen: set[str] = set()
        for key, ids in cells.items():
            for pub_id in ids:
                if pub_id in seen:
                    raise ValueError(f"publication {pub_id!r} appears in more than one cell")
                seen.add(pub_id)
        object.__setattr__(self, "_admitted", frozenset(seen))

    @property
    def admitted_ids(self) -> frozenset[str]:
        return self._admitted  # type: ignore[attr-defined]

    def __contains__(self, pub_id: str) -> bool:
        return pub_id in self.admitted_ids

    def __len__(self) -> int:
        return len(self.admitted_ids)


def build_partition(
    corpus: Corpus,
    doc_type: str = "article",
    year_range: tuple[int, int] = (2000, 2007),
) -> CellPartition:
    """Partition the corpus publications that match a document type and year range.

    Admission is an exact match on the normalized doc_type token and an
    inclusive year-range test; each admitted publication lands in the cell of
    its canonical category combination.
    """
    low, high = year_range
    if low > high:
        raise ValueError(f"empty year range {year_range!r}")
    wanted = doc_type.strip().lower()
    groups: dict[CellKey, list[str]] = {}
    for pub_id in sorted(corpus.publications):
        pub = corpus.publications[pub_id]
        if pub.doc_type != wanted or not (low <= pub.year <= high):
            continue
        groups.setdefault(pub.cell_key(), []).append(pub_id)
    return CellPartition({key: tuple(groups[key]) for key in sorted(groups)})


@dataclass(frozen=True)
class AdjacentTriple:
    """The three cells tied to a category pair: i alone, i and j combined, j alone."""

    left: CellKey
    middle: CellKey
    right: CellKey

    def __post_init__(self) -> None:
        if len(self.left.codes) != 1 or len(self.right.codes) != 1:
            raise ValueError("outer keys of an adjacent triple must be single categories")
        expected = canonical_cell_key(self.left.codes + self.right.codes)
        if self.middle != expected:
            raise ValueError(
                f"middle key {self.middle} is not the union of {self.left} and {self.right}"
            )

    def pairs(self) -> list[tuple[CellKey, CellKey]]:
        """The two compared cell pairs: (left, middle) and (middle, right)."""
        return [(self.left, self.middle), (self.middle, self.right)]


def adjacent_triple(i: str, j: str) -> AdjacentTriple:
    """Build the adjacent-cell triple for two distinct category codes.

    The outer keys keep the requested orientation (i on the left), while the
    middle key is the canonical two-category combination. The cells need not
    be populated in any particular partition.
    """
    if i == j:
        raise DegenerateTriple(f"adjacent triple needs two distinct categories, got {i!r} twice")
    return AdjacentTriple(
        left=canonical_cell_key([i]),
        middle=canonical_cell_key([i, j]),
        right=canonical_cell_key([j]),
    )


def shared_category_graph(
    partition: CellPartition,
) -> dict[tuple[CellKey, CellKey], frozenset[str]]:
    """Generalized adjacency over populated cells: pairs sharing a category.

    Utility for exploring cell neighborhoods; the headline sensitivity
    analysis sticks to the explicit triple pattern.
    """
    by_code: dict[str, list[CellKey]] = {}
    for key in partition.cells:
        for code in key.codes:
            by_code.setdefault(code, []).append(key)
    graph: dict[tuple[CellKey, CellKey], set[str]] = {}
    for code, keys in by_code.items():
        keys = sorted(keys)
        for index, first in enumerate(keys):
            for second in keys[index + 1 :]:
                graph.setdefault((first, second), set()).add(code)
    return {pair: frozenset(codes) for pair, codes in sorted(graph.items())}
