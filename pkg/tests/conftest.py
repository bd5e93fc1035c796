from pathlib import Path

import pytest

from citecells import (
    Corpus,
    PublicationRecord,
    build_partition,
    load_reference_table,
    parse_category_registry,
    parse_publications,
)

DATA_DIR = Path(__file__).resolve().parents[1] / "data"


def make_pub(pub_id, year=2005, doc_type="article", categories=("M",),
             citations=None, authors=()):
    return PublicationRecord(
        pub_id=pub_id,
        year=year,
        doc_type=doc_type,
        categories=frozenset(categories),
        citations_by_year=dict(citations or {}),
        author_ids=frozenset(authors),
    )


@pytest.fixture(scope="session")
def published_table():
    """Reference values of the bundled two-domain study table."""
    return load_reference_table(DATA_DIR / "published_refvalues.csv")


@pytest.fixture(scope="session")
def fixture_corpus():
    """The researcher-profile fixture corpus shipped in data/."""
    registry = parse_category_registry(DATA_DIR / "profile_fixture_cats.csv")
    result = parse_publications(DATA_DIR / "profile_fixture_pubs.csv", registry=registry)
    assert not result.rejected
    return result.corpus


@pytest.fixture(scope="session")
def fixture_partition(fixture_corpus):
    return build_partition(fixture_corpus, "article", (2000, 2007))


@pytest.fixture
def tiny_corpus():
    """Three articles: two in cell M, one in M;MA."""
    return Corpus.from_records(
        [
            make_pub("a1", 2005, categories={"M"}, citations={2005: 1, 2006: 2}),
            make_pub("a2", 2006, categories={"M"}, citations={2007: 3}),
            make_pub("a3", 2005, categories={"M", "MA"}, citations={2005: 5}),
        ]
    )
