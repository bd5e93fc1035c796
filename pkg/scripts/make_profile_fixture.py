#!/usr/bin/env python3
"""Regenerate data/profile_fixture_pubs.csv and data/profile_fixture_cats.csv.

Four researchers with known profile columns:

  M1  11 articles, 100% in cell M,      mean 6 citations (5-year window)
  M2   6 articles, 100% in cell M,      mean 11
  F1  34 articles, top 74% in PPF,      mean 23 (displayed shares sum to 101)
  F2  19 articles, top 63% in AA;PPF,   mean 47

Each article's citations are split between publication year + 1 and
publication year + 4, so a 3-year window sees roughly half of them. Two
extra records (a review, and an article outside 2000-2007) exercise the
admission filters without touching the expected numbers.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from citecells import Corpus, PublicationRecord, write_category_registry, write_publications

DATA_DIR = Path(__file__).resolve().parents[1] / "data"

CATEGORIES = {
    "AA": "Astronomy & Astrophysics",
    "M": "Mathematics",
    "MA": "Mathematics, Applied",
    "MS": "Multidisciplinary Sciences",
    "PMd": "Physics, Multidisciplinary",
    "PPF": "Physics, Particles & Fields",
}

# researcher -> list of (category set, window-5 citation total)
COLUMNS = {
    "M1": [({"M"}, c) for c in (2, 4, 6, 8, 10, 6, 6, 3, 9, 5, 7)],           # mean 6
    "M2": [({"M"}, c) for c in (5, 9, 11, 13, 14, 14)],                        # mean 11
    "F1": (
        [({"PPF"}, 23)] * 25
        + [({"PMd"}, 23)] * 7
        + [({"AA", "PMd", "PPF"}, 23)]
        + [({"MS"}, 23)]
    ),                                                                          # mean 23
    "F2": (
        [({"AA", "PPF"}, c) for c in (30, 35, 40, 45, 50, 55, 60, 65, 70, 75, 80, 85)]
        + [({"PMd"}, c) for c in (40, 45, 50, 55)]
        + [({"AA", "PMd"}, 5)]
        + [({"PPF"}, 4), ({"PPF"}, 4)]
    ),                                                                          # mean 47
}


def spread_citations(year: int, total: int) -> dict[int, int]:
    """Split a window-5 total so a 3-year window sees only part of it."""
    early = total // 2
    late = total - early
    cites = {}
    if early:
        cites[year + 1] = early
    if late:
        cites[year + 4] = late
    return cites


def build_records() -> list[PublicationRecord]:
    records = []
    for researcher, articles in COLUMNS.items():
        years = itertools.cycle(range(2000, 2008))
        for index, (categories, total) in enumerate(articles, start=1):
            year = next(years)
            records.append(
                PublicationRecord(
                    pub_id=f"{researcher.lower()}-{index:02d}",
                    year=year,
                    doc_type="article",
                    categories=frozenset(categories),
                    citations_by_year=spread_citations(year, total),
                    author_ids=frozenset({researcher}),
                )
            )
    # excluded by the doc-type filter
    records.append(
        PublicationRecord(
            pub_id="m1-rev-01",
            year=2004,
            doc_type="review",
            categories=frozenset({"M"}),
            citations_by_year={2005: 50},
            author_ids=frozenset({"M1"}),
        )
    )
    # excluded by the 2000-2007 year range
    records.append(
        PublicationRecord(
            pub_id="m2-old-01",
            year=1999,
            doc_type="article",
            categories=frozenset({"M"}),
            citations_by_year={2000: 40},
            author_ids=frozenset({"M2"}),
        )
    )
    return records


def main() -> None:
    corpus = Corpus.from_records(build_records(), CATEGORIES)
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    pubs_path = DATA_DIR / "profile_fixture_pubs.csv"
    cats_path = DATA_DIR / "profile_fixture_cats.csv"
    pubs_path.write_bytes(write_publications(corpus, fmt="csv"))
    cats_path.write_bytes(write_category_registry(corpus))
    print(f"wrote {pubs_path} ({len(corpus.publications)} records)")
    print(f"wrote {cats_path} ({len(corpus.categories)} categories)")


if __name__ == "__main__":
    main()
