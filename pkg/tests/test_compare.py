import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from citecells import (
    DIM_CELL,
    DIM_WINDOW,
    DIM_YEAR,
    CellKey,
    DifferenceRecord,
    EmptyDistribution,
    EmptyProfile,
    MixedDimensions,
    NonPositiveValue,
    ReferenceTable,
    ResearcherProfile,
    adjacent_triple,
    cell_dimension_pairs,
    profile_overlap,
    relative_difference,
    researcher_profile,
    summarize_dimension,
    window_dimension_pairs,
    year_dimension_pairs,
)

YEAR_PAIRS = [(2005, 2006), (2006, 2007)]
WINDOW_PAIRS = [(3, 4), (4, 5)]
TRIPLES = [adjacent_triple("M", "MA"), adjacent_triple("AA", "PPF")]

positive = st.floats(min_value=1e-6, max_value=1e9)


def record_for(records, left, right):
    match = [r for r in records if r.left_label == left and r.right_label == right]
    assert len(match) == 1, f"no unique record {left} vs {right}"
    return match[0]


class TestRelativeDifference:
    def test_spot_value_means(self):
        assert relative_difference(2.0, 2.8) == pytest.approx(0.3333, abs=1e-4)

    def test_spot_value_thresholds(self):
        assert relative_difference(6.1, 8.3) == pytest.approx(0.3056, abs=1e-4)

    def test_identity(self):
        assert relative_difference(69.8, 69.8) == 0.0

    @pytest.mark.parametrize("x,y", [(0, 1), (1, 0), (-1, 2), (2, -1)])
    def test_non_positive_rejected(self, x, y):
        with pytest.raises(NonPositiveValue):
            relative_difference(x, y)

    @given(positive, positive)
    def test_symmetric(self, x, y):
        assert relative_difference(x, y) == relative_difference(y, x)

    @given(positive, positive)
    def test_bounds(self, x, y):
        r = relative_difference(x, y)
        assert 0 <= r < 2
        assert (r == 0) == (x == y)

    @given(positive, positive, st.integers(-20, 20))
    def test_scale_invariant(self, x, y, exponent):
        c = 2.0 ** exponent
        assert relative_difference(c * x, c * y) == pytest.approx(
            relative_difference(x, y), rel=1e-12
        )


class TestYearDimension(object):
    def test_complete_table_yields_36(self, published_table):
        for metric in ("e", "t"):
            records = year_dimension_pairs(published_table, YEAR_PAIRS, metric=metric)
            assert len(records) == 36
            assert {r.dimension for r in records} == {DIM_YEAR}

    def test_spot_record(self, published_table):
        records = year_dimension_pairs(published_table, YEAR_PAIRS, metric="e")
        rec = record_for(records, "M|2005|w5", "M|2006|w5")
        assert (rec.x, rec.y) == (2.8, 3.0)
        assert rec.r == pytest.approx(0.0690, abs=5e-4)

    def test_missing_year_skipped(self, published_table):
        truncated = ReferenceTable(
            tuple(rv for rv in published_table if not (rv.cell == CellKey(("M",)) and rv.year == 2006))
        )
        records = year_dimension_pairs(truncated, YEAR_PAIRS, metric="e")
        assert len(records) == 30  # cell M loses both pairs in all 3 windows

    def test_explicit_cells_and_windows(self, published_table):
        records = year_dimension_pairs(
            published_table, YEAR_PAIRS, cells=[CellKey(("M",))], windows=[5], metric="e"
        )
        assert len(records) == 2


class TestWindowDimension:
    def test_complete_table_yields_36(self, published_table):
        records = window_dimension_pairs(published_table, WINDOW_PAIRS, metric="e")
        assert len(records) == 36
        assert {r.dimension for r in records} == {DIM_WINDOW}

    def test_spot_record_mean(self, published_table):
        records = window_dimension_pairs(published_table, WINDOW_PAIRS, metric="e")
        rec = record_for(records, "M|2005|w3", "M|2005|w4")
        assert (rec.x, rec.y) == (1.2, 2.0)
        assert rec.r == pytest.approx(0.5000, abs=1e-4)

    def test_spot_record_threshold(self, published_table):
        records = window_dimension_pairs(published_table, WINDOW_PAIRS, metric="t")
        rec = record_for(records, "M;MA|2005|w3", "M;MA|2005|w4")
        assert (rec.x, rec.y) == (6.3, 11.6)
        assert rec.r == pytest.approx(0.5922, abs=1e-4)


class TestCellDimension:
    def test_complete_table_yields_36(self, published_table):
        records = cell_dimension_pairs(published_table, TRIPLES, metric="e")
        assert len(records) == 36
        assert {r.dimension for r in records} == {DIM_CELL}

    def test_spot_record_mean(self, published_table):
        records = cell_dimension_pairs(published_table, TRIPLES, metric="e")
        rec = record_for(records, "M;MA|2005|w3", "MA|2005|w3")
        assert (rec.x, rec.y) == (1.3, 2.0)
        assert rec.r == pytest.approx(0.4242, abs=1e-4)

    def test_equal_thresholds_give_zero(self, published_table):
        records = cell_dimension_pairs(published_table, TRIPLES, metric="t")
        rec = record_for(records, "AA|2005|w5", "AA;PPF|2005|w5")
        assert (rec.x, rec.y) == (69.8, 69.8)
        assert rec.r == 0.0


def test_all_records_match_direct_formula(published_table):
    # oracle: recompute r from the stored x and y, independent of the pair walk
    for metric in ("e", "t"):
        all_records = (
            year_dimension_pairs(published_table, YEAR_PAIRS, metric=metric)
            + window_dimension_pairs(published_table, WINDOW_PAIRS, metric=metric)
            + cell_dimension_pairs(published_table, TRIPLES, metric=metric)
        )
        assert len(all_records) == 108
        for rec in all_records:
            assert rec.r == 2.0 * abs(rec.x - rec.y) / (rec.x + rec.y)


class TestSummarize:
    def test_published_cell_ranges(self, published_table):
        records = cell_dimension_pairs(published_table, TRIPLES, metric="e")
        summary = summarize_dimension(records)
        assert summary.count == 36
        assert summary.min_r == 0.0
        assert summary.max_r == pytest.approx(0.4242, abs=1e-4)

    def test_singleton(self):
        rec = DifferenceRecord(DIM_YEAR, "e", "a", "b", 1.0, 1.0, 0.1)
        summary = summarize_dimension([rec])
        assert (summary.min_r, summary.max_r, summary.count) == (0.1, 0.1, 1)

    def test_plain_arithmetic(self):
        values = [0.0, 0.5, 2 * 0.9 / 1.1]
        records = [
            DifferenceRecord(DIM_WINDOW, "t", f"l{i}", f"r{i}", 1.0, 1.0, v)
            for i, v in enumerate(values)
        ]
        summary = summarize_dimension(records)
        assert summary.min_r == 0.0
        assert summary.max_r == pytest.approx(1.6364, abs=1e-4)

    def test_empty_rejected(self):
        with pytest.raises(EmptyDistribution):
            summarize_dimension([])

    def test_mixed_dimensions_rejected(self):
        records = [
            DifferenceRecord(DIM_YEAR, "e", "a", "b", 1.0, 1.0, 0.0),
            DifferenceRecord(DIM_WINDOW, "e", "a", "b", 1.0, 1.0, 0.0),
        ]
        with pytest.raises(MixedDimensions):
            summarize_dimension(records)
        records = [
            DifferenceRecord(DIM_YEAR, "e", "a", "b", 1.0, 1.0, 0.0),
            DifferenceRecord(DIM_YEAR, "t", "a", "b", 1.0, 1.0, 0.0),
        ]
        with pytest.raises(MixedDimensions):
            summarize_dimension(records)


class TestResearcherProfile:
    def test_fully_concentrated(self, fixture_corpus, fixture_partition):
        profile = researcher_profile(fixture_corpus, fixture_partition, "M1")
        assert profile.n_articles == 11
        assert profile.shares == {CellKey(("M",)): 1.0}
        assert profile.top_cells == frozenset({CellKey(("M",))})
        assert profile.mean_citations == 6.0

    def test_top_share_cell(self, fixture_corpus, fixture_partition):
        profile = researcher_profile(fixture_corpus, fixture_partition, "F2")
        assert profile.n_articles == 19
        assert profile.top_cells == frozenset({CellKey(("AA", "PPF"))})
        assert profile.shares[CellKey(("AA", "PPF"))] == pytest.approx(12 / 19)
        assert profile.mean_citations == 47.0

    def test_doc_type_and_period_filters_apply(self, fixture_corpus, fixture_partition):
        # the review and the 1999 article are not admitted
        m1 = researcher_profile(fixture_corpus, fixture_partition, "M1")
        m2 = researcher_profile(fixture_corpus, fixture_partition, "M2")
        assert m1.n_articles == 11
        assert m2.n_articles == 6
        assert m2.mean_citations == 11.0

    def test_period_subsets_articles(self, fixture_corpus, fixture_partition):
        profile = researcher_profile(
            fixture_corpus, fixture_partition, "M1", period=(2000, 2003)
        )
        assert profile.n_articles < 11

    def test_tied_top_cells(self, fixture_corpus, fixture_partition):
        profile = researcher_profile(
            fixture_corpus, fixture_partition, "F2", period=(2000, 2007)
        )
        assert len(profile.top_cells) == 1
        # construct an exact tie: restrict to a period with one article in
        # each of two cells
        from citecells import Corpus, build_partition
        from conftest import make_pub

        corpus = Corpus.from_records(
            [
                make_pub("t1", 2005, categories={"M"}, authors={"R"}),
                make_pub("t2", 2005, categories={"MA"}, authors={"R"}),
            ]
        )
        partition = build_partition(corpus, "article", (2005, 2005))
        tied = researcher_profile(corpus, partition, "R", period=(2005, 2005))
        assert tied.top_cells == frozenset({CellKey(("M",)), CellKey(("MA",))})

    def test_no_articles_raises(self, fixture_corpus, fixture_partition):
        with pytest.raises(EmptyProfile):
            researcher_profile(fixture_corpus, fixture_partition, "nobody")

    def test_shares_sum_to_one(self, fixture_corpus, fixture_partition):
        for rid in ("M1", "M2", "F1", "F2"):
            profile = researcher_profile(fixture_corpus, fixture_partition, rid)
            assert math.fsum(profile.shares.values()) == pytest.approx(1.0, abs=1e-9)
            best = max(profile.shares.values())
            assert all(profile.shares[c] == best for c in profile.top_cells)


class TestProfileOverlap:
    def make(self, rid, shares, mean=1.0):
        cells = {CellKey.from_text(k): v for k, v in shares.items()}
        best = max(cells.values())
        top = frozenset(c for c, s in cells.items() if s == best)
        return ResearcherProfile(rid, max(1, len(cells)), cells, top, mean)

    def test_identical(self):
        a = self.make("a", {"M": 0.5, "MA": 0.5})
        assert profile_overlap(a, a) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint(self):
        a = self.make("a", {"M": 1.0})
        b = self.make("b", {"AA": 1.0})
        assert profile_overlap(a, b) == 0.0

    def test_known_value(self):
        a = self.make("a", {"M": 1.0})
        b = self.make("b", {"M": 0.5, "MA": 0.5})
        assert profile_overlap(a, b) == pytest.approx(0.7071, abs=1e-4)
