import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from citecells.cli import main

from conftest import DATA_DIR

SPEC = DATA_DIR / "demo_generator.json"
PUBS = DATA_DIR / "profile_fixture_pubs.csv"
CATS = DATA_DIR / "profile_fixture_cats.csv"
REF = DATA_DIR / "published_refvalues.csv"


def read_csv(path: Path):
    lines = [l for l in path.read_text().splitlines() if not l.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(lines))))


@pytest.fixture()
def gen_dir(tmp_path):
    out = tmp_path / "gen"
    assert main(["generate", "--spec", str(SPEC), "--seed", "7", "--out-dir", str(out)]) == 0
    return out


class TestGenerate:
    def test_writes_corpus_files_and_manifest(self, gen_dir):
        assert (gen_dir / "pubs.csv").exists()
        assert (gen_dir / "cats.csv").exists()
        manifest = json.loads((gen_dir / "manifest.json").read_text())
        assert manifest["command"] == "generate"
        assert set(manifest["outputs"]) == {"pubs.csv", "cats.csv"}

    def test_deterministic(self, gen_dir, tmp_path):
        other = tmp_path / "gen2"
        assert main(["generate", "--spec", str(SPEC), "--seed", "7", "--out-dir", str(other)]) == 0
        assert (gen_dir / "pubs.csv").read_bytes() == (other / "pubs.csv").read_bytes()
        assert (gen_dir / "cats.csv").read_bytes() == (other / "cats.csv").read_bytes()

    def test_generated_files_validate_cleanly(self, gen_dir, capsys):
        code = main(["validate", "--pubs", str(gen_dir / "pubs.csv"), "--cats", str(gen_dir / "cats.csv")])
        assert code == 0
        out = capsys.readouterr().out
        assert "rejected_rows: 0" in out

    def test_missing_spec_is_io_error(self, tmp_path):
        assert main(["generate", "--spec", str(tmp_path / "nope.json"), "--out-dir", str(tmp_path)]) == 3

    def test_bad_spec_is_usage_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"cells": []}')
        assert main(["generate", "--spec", str(bad), "--out-dir", str(tmp_path)]) == 1


class TestRefvalues:
    def test_reference_table_from_generated_corpus(self, gen_dir, tmp_path):
        out = tmp_path / "ref"
        code = main([
            "refvalues", "--pubs", str(gen_dir / "pubs.csv"), "--cats", str(gen_dir / "cats.csv"),
            "--years", "2005-2007", "--windows", "3,4,5", "--out-dir", str(out),
        ])
        assert code == 0
        rows = read_csv(out / "refvalues.csv")
        assert rows[0][:6] == ["cell", "year", "window", "n", "e", "t"]
        # 6 populated cells x 3 years x 3 windows
        assert len(rows) == 1 + 54
        by_key = {(r[0], r[1], r[2]): r for r in rows[1:]}
        m5 = by_key[("M", "2005", "5")]
        assert float(m5[4]) == pytest.approx(2.8, abs=0.3)  # generator noise only
        assert float(m5[5]) >= float(m5[4])

        # emitted values equal a library-side recomputation at 4 decimals
        from citecells import (
            CellKey,
            build_partition,
            build_reference_table,
            parse_category_registry,
            parse_publications,
        )

        registry = parse_category_registry(gen_dir / "cats.csv")
        corpus = parse_publications(gen_dir / "pubs.csv", registry=registry).corpus
        partition = build_partition(corpus, "article", (2005, 2007))
        table = build_reference_table(partition, corpus, [2005, 2006, 2007], [3, 4, 5])
        for (cell, year, window), row in by_key.items():
            expected = table.lookup(CellKey.from_text(cell), int(year), int(window))
            assert int(row[3]) == expected.n
            assert float(row[4]) == pytest.approx(expected.e, abs=5e-5)
            assert float(row[5]) == pytest.approx(expected.t, abs=5e-5)

    def test_invalid_year_range_is_usage_error(self, gen_dir, tmp_path):
        code = main([
            "refvalues", "--pubs", str(gen_dir / "pubs.csv"), "--cats", str(gen_dir / "cats.csv"),
            "--years", "2007-2005", "--out-dir", str(tmp_path / "x"),
        ])
        assert code == 1

    def test_no_admitted_publications_is_empty_result(self, gen_dir, tmp_path):
        code = main([
            "refvalues", "--pubs", str(gen_dir / "pubs.csv"), "--cats", str(gen_dir / "cats.csv"),
            "--doc-type", "review", "--out-dir", str(tmp_path / "x"),
        ])
        assert code == 2

    def test_missing_input_is_io_error(self, tmp_path):
        code = main([
            "refvalues", "--pubs", str(tmp_path / "nope.csv"), "--cats", str(CATS),
            "--out-dir", str(tmp_path / "x"),
        ])
        assert code == 3

    def test_json_format(self, gen_dir, tmp_path):
        out = tmp_path / "refj"
        code = main([
            "refvalues", "--pubs", str(gen_dir / "pubs.csv"), "--cats", str(gen_dir / "cats.csv"),
            "--format", "json", "--out-dir", str(out),
        ])
        assert code == 0
        doc = json.loads((out / "refvalues.json").read_text())
        assert len(doc["rows"]) == 54


class TestCompare:
    def test_fixture_table_counts_and_ranges(self, tmp_path):
        out = tmp_path / "cmp"
        code = main([
            "compare", "--ref-table", str(REF), "--out-dir", str(out),
            "--triples", "M:MA,AA:PPF",
            "--year-pairs", "2005:2006,2006:2007", "--window-pairs", "3:4,4:5",
        ])
        assert code == 0
        text = (out / "difference_summary.csv").read_text()
        summary = text.split("# section: summary\n")[1]
        rows = list(csv.reader(io.StringIO(summary)))[1:]
        assert len(rows) == 6
        assert all(r[2] == "36" for r in rows)

    def test_spot_difference_row(self, tmp_path):
        out = tmp_path / "cmp"
        main([
            "compare", "--ref-table", str(REF), "--out-dir", str(out),
            "--triples", "M:MA,AA:PPF",
        ])
        rows = read_csv(out / "differences.csv")
        spot = [
            r for r in rows
            if r[:4] == ["window_length", "e", "M|2005|w4", "M|2005|w5"]
        ]
        assert spot and spot[0][6] == "33.3"

    def test_unknown_triple_code_is_usage_error(self, tmp_path):
        code = main([
            "compare", "--ref-table", str(REF), "--out-dir", str(tmp_path / "x"),
            "--triples", "M:XX",
        ])
        assert code == 1

    def test_degenerate_triple_is_usage_error(self, tmp_path):
        code = main([
            "compare", "--ref-table", str(REF), "--out-dir", str(tmp_path / "x"),
            "--triples", "M:M",
        ])
        assert code == 1

    def test_from_corpus_without_triples(self, gen_dir, tmp_path):
        out = tmp_path / "cmp2"
        code = main([
            "compare", "--pubs", str(gen_dir / "pubs.csv"), "--cats", str(gen_dir / "cats.csv"),
            "--years", "2005-2007", "--out-dir", str(out),
        ])
        assert code == 0
        summary = (out / "difference_summary.csv").read_text().split("# section: summary\n")[1]
        rows = list(csv.reader(io.StringIO(summary)))[1:]
        dimensions = {r[0] for r in rows}
        assert dimensions == {"publication_year", "window_length"}

    def test_missing_contexts_are_skipped_not_fatal(self, tmp_path):
        # drop one (cell, year) block from the fixture table
        lines = [
            l for l in REF.read_text().splitlines()
            if not l.startswith("M;MA,2006")
        ]
        trimmed = tmp_path / "trimmed.csv"
        trimmed.write_text("\n".join(lines) + "\n")
        out = tmp_path / "cmp3"
        code = main([
            "compare", "--ref-table", str(trimmed), "--out-dir", str(out),
            "--triples", "M:MA,AA:PPF",
        ])
        assert code == 0
        summary = (out / "difference_summary.csv").read_text().split("# section: summary\n")[1]
        rows = {(r[0], r[1]): int(r[2]) for r in list(csv.reader(io.StringIO(summary)))[1:]}
        assert rows[("publication_year", "e")] == 30  # M;MA loses both pairs x 3 windows
        assert rows[("adjacent_cell", "e")] == 30  # M;MA 2006 absent on both sides


class TestProfile:
    def test_fixture_columns(self, tmp_path):
        out = tmp_path / "prof"
        code = main([
            "profile", "--pubs", str(PUBS), "--cats", str(CATS),
            "--researchers", "M1,M2,F2", "--out-dir", str(out),
        ])
        assert code == 0
        rows = read_csv(out / "profile_matrix.csv")
        assert rows[0] == ["cell", "M1", "M2", "F2"]
        by_cell = {r[0]: r[1:] for r in rows[1:]}
        assert by_cell["n_articles"] == ["11", "6", "19"]
        assert by_cell["M"] == ["100", "100", ""]
        assert by_cell["AA;PPF"] == ["", "", "63"]
        assert by_cell["top_cells"] == ["M", "M", "AA;PPF"]
        assert by_cell["mean_citations"] == ["6", "11", "47"]

    def test_window_changes_footer(self, tmp_path):
        out = tmp_path / "prof3"
        main([
            "profile", "--pubs", str(PUBS), "--cats", str(CATS),
            "--researchers", "M1", "--window", "3", "--out-dir", str(out),
        ])
        rows = read_csv(out / "profile_matrix.csv")
        footer = [r for r in rows if r[0] == "mean_citations"][0]
        assert footer[1] == "3"  # half of each article's citations arrive late

    def test_default_profiles_everyone(self, tmp_path):
        out = tmp_path / "prof4"
        assert main(["profile", "--pubs", str(PUBS), "--cats", str(CATS), "--out-dir", str(out)]) == 0
        rows = read_csv(out / "profile_matrix.csv")
        assert rows[0] == ["cell", "F1", "F2", "M1", "M2"]

    def test_unknown_researcher_warned_and_omitted(self, tmp_path, caplog):
        out = tmp_path / "prof5"
        code = main([
            "profile", "--pubs", str(PUBS), "--cats", str(CATS),
            "--researchers", "M1,ghost", "--out-dir", str(out),
        ])
        assert code == 0
        rows = read_csv(out / "profile_matrix.csv")
        assert rows[0] == ["cell", "M1"]

    def test_all_unknown_is_empty_result(self, tmp_path):
        code = main([
            "profile", "--pubs", str(PUBS), "--cats", str(CATS),
            "--researchers", "ghost", "--out-dir", str(tmp_path / "x"),
        ])
        assert code == 2


class TestValidate:
    def test_reports_reject_counts(self, tmp_path, capsys):
        pubs = tmp_path / "pubs.csv"
        pubs.write_text(
            "pub_id,year,doc_type,categories,citations,authors\n"
            "p1,2005,article,M,2005:1,\n"
            "p2,2005,article,M,2003:1,\n"
        )
        cats = tmp_path / "cats.csv"
        cats.write_text("code,name\nM,Mathematics\n")
        assert main(["validate", "--pubs", str(pubs), "--cats", str(cats)]) == 0
        out = capsys.readouterr().out
        assert "publications: 1" in out
        assert "rejected_rows: 1" in out

    def test_strict_mode_aborts(self, tmp_path):
        pubs = tmp_path / "pubs.csv"
        pubs.write_text(
            "pub_id,year,doc_type,categories,citations,authors\n"
            "p1,2005,article,M,2003:1,\n"
        )
        cats = tmp_path / "cats.csv"
        cats.write_text("code,name\nM,Mathematics\n")
        assert main(["validate", "--pubs", str(pubs), "--cats", str(cats), "--strict"]) == 2


class TestUsability:
    def test_no_command_is_usage_error(self):
        assert main([]) == 1

    def test_unknown_flag_is_usage_error(self):
        assert main(["refvalues", "--bogus"]) == 1

    def test_missing_required_flag_is_usage_error(self, tmp_path):
        assert main(["refvalues", "--out-dir", str(tmp_path)]) == 1

    def test_config_file_supplies_defaults_flags_win(self, tmp_path, gen_dir):
        config = tmp_path / "run.conf"
        config.write_text(
            f"pubs = {gen_dir / 'pubs.csv'}\n"
            f"cats = {gen_dir / 'cats.csv'}\n"
            "years = 2005-2006\n"
            "# comment\n"
        )
        out = tmp_path / "conf_out"
        code = main([
            "refvalues", "--config", str(config), "--years", "2005-2007",
            "--out-dir", str(out),
        ])
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["params"]["years"] == "2005-2007"  # flag beat config

    def test_unknown_config_key_is_usage_error(self, tmp_path):
        config = tmp_path / "run.conf"
        config.write_text("wibble = 3\n")
        assert main(["refvalues", "--config", str(config)]) == 1

    def test_manifest_digests_inputs(self, gen_dir):
        manifest = json.loads((gen_dir / "manifest.json").read_text())
        assert manifest["version"]
        assert all(v.startswith("sha256:") for v in manifest["inputs"].values())
        assert all(v.startswith("sha256:") for v in manifest["outputs"].values())

    def test_module_entrypoint(self):
        result = subprocess.run(
            [sys.executable, "-m", "citecells", "--help"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 0
        assert "refvalues" in result.stdout
