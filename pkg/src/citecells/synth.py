"""Deterministic synthetic corpus generation for desk-scale pipeline testing.

A generator spec declares the partition cells to populate, how article volume
splits across them, and per-cell citation rates. Each article draws its cell
from the weight distribution and collects Poisson citation counts year by
year, so empirical per-cell means converge to the configured rates as counts
grow. Identical (spec, seed) pairs always produce identical corpora.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InvalidSpec
from .model import CellKey, Corpus, PublicationRecord, canonical_cell_key


@dataclass(frozen=True)
class CellProfile:
    """Target weight and citation-rate shape for one partition cell.

    rate_profile[d] is the mean number of citations an article in this cell
    collects d years after publication, so a citation window of length w is
    expected to capture sum(rate_profile[:w]) citations per article.
    """

    categories: tuple[str, ...]
    weight: float
    rate_profile: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "categories", tuple(self.categories))
        object.__setattr__(self, "rate_profile", tuple(float(r) for r in self.rate_profile))
        if not self.categories:
            raise InvalidSpec("cell profile has no categories")
        if self.weight <= 0:
            raise InvalidSpec(f"cell weight must be positive, got {self.weight}")
        if not self.rate_profile:
            raise InvalidSpec("cell rate_profile must be non-empty")
        if any(rate < 0 for rate in self.rate_profile):
            raise InvalidSpec("cell rate_profile entries must be non-negative")

    def key(self) -> CellKey:
        return canonical_cell_key(self.categories)


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for one synthetic corpus."""

    cells: tuple[CellProfile, ...]
    articles_per_year: Mapping[int, int]
    categories: Mapping[str, str] = field(default_factory=dict)
    researchers: int = 0
    doc_type: str = "article"

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        object.__setattr__(
            self, "articles_per_year", {int(y): int(n) for y, n in self.articles_per_year.items()}
        )
        object.__setattr__(self, "categories", dict(self.categories))
        if not self.cells:
            raise InvalidSpec("generator spec declares no cells")
        if not self.articles_per_year:
            raise InvalidSpec("generator spec declares no publication years")
        for year, count in self.articles_per_year.items():
            if count <= 0:
                raise InvalidSpec(f"article count for year {year} must be positive, got {count}")
        if self.researchers < 0:
            raise InvalidSpec(f"researcher count must be non-negative, got {self.researchers}")
        if not self.doc_type.strip():
            raise InvalidSpec("doc_type must be non-empty")


def load_generator_spec(source: Any) -> GeneratorSpec:
    """Read a generator spec from JSON. Path objects are read as files;
    plain strings and bytes are taken as JSON text."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    elif isinstance(source, bytes):
        text = source.decode("utf-8")
    elif hasattr(source, "read"):
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    else:
        text = str(source)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidSpec(f"generator spec is not valid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InvalidSpec("generator spec must be a JSON object")
    try:
        cells = tuple(
            CellProfile(
                categories=tuple(c["categories"]),
                weight=float(c["weight"]),
                rate_profile=tuple(c["rate_profile"]),
            )
            for c in obj.get("cells", [])
        )
        return GeneratorSpec(
            cells=cells,
            articles_per_year=obj.get("articles_per_year", {}),
            categories=obj.get("categories", {}),
            researchers=int(obj.get("researchers", 0)),
            doc_type=str(obj.get("doc_type", "article")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"malformed generator spec: {exc}") from None


def generate_synthetic_corpus(spec: GeneratorSpec, seed: int) -> Corpus:
    """Generate a corpus from the spec, deterministically for a given seed."""
    rng = np.random.default_rng(seed)
    keys = [profile.key() for profile in spec.cells]
    weights = np.array([profile.weight for profile in spec.cells], dtype=float)
    probabilities = weights / weights.sum()
    max_offsets = max(len(profile.rate_profile) for profile in spec.cells)
    rates = np.zeros((len(spec.cells), max_offsets), dtype=float)
    for index, profile in enumerate(spec.cells):
        rates[index, : len(profile.rate_profile)] = profile.rate_profile

    registry = dict(spec.categories)
    for key in keys:
        for code in key.codes:
            registry.setdefault(code, code)

    records: list[PublicationRecord] = []
    counter = 0
    for year in sorted(spec.articles_per_year):
        count = spec.articles_per_year[year]
        cell_index = rng.choice(len(spec.cells), size=count, p=probabilities)
        citations = rng.poisson(rates[cell_index])
        if spec.researchers > 0:
            authors = rng.integers(1, spec.researchers + 1, size=count)
        else:
            authors = None
        for i in range(count):
            counter += 1
            per_year = {
                year + offset: int(c)
                for offset, c in enumerate(citations[i])
                if c > 0
            }
            author_ids = frozenset({f"r{authors[i]}"}) if authors is not None else frozenset()
            records.append(
                PublicationRecord(
                    pub_id=f"p{counter:06d}",
                    year=year,
                    doc_type=spec.doc_type,
                    categories=frozenset(keys[cell_index[i]].codes),
                    citations_by_year=per_year,
                    author_ids=author_ids,
                )
            )
    return Corpus.from_records(records, registry)
