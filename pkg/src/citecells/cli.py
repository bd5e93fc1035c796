"""Command-line front end: validate, refvalues, compare, profile, generate.

Exit codes are stable across commands: 0 success, 1 usage error, 2 empty or
invalid analysis result, 3 I/O failure. Logs go to standard error; data goes
to report files, so runs are pipeline-safe. Every report-producing run also
writes a manifest.json with the resolved parameters and input/output digests.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .compare import (
    cell_dimension_pairs,
    summarize_dimension,
    researcher_profile,
    window_dimension_pairs,
    year_dimension_pairs,
)
from .errors import (
    CitecellsError,
    DegenerateTriple,
    EmptyDistribution,
    EmptyProfile,
    EmptyReport,
    InvalidSpec,
)
from .ingest import (
    parse_category_registry,
    parse_publications,
    write_category_registry,
    write_publications,
)
from .metrics import build_reference_table
from .model import adjacent_triple, build_partition
from .report import (
    ReportSpec,
    emit_difference_records,
    emit_difference_summary,
    emit_profile_matrix,
    emit_reference_table,
    load_reference_table,
    write_report,
)
from .synth import generate_synthetic_corpus, load_generator_spec

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_EMPTY = 2
EXIT_IO = 3

# Study-design defaults: reference values over 2005-2007 with windows 3-5,
# researcher profiles over the 8-year period 2000-2007 with a 5-year window.
REF_YEARS = (2005, 2007)
PROFILE_YEARS = (2000, 2007)
WINDOWS = (3, 4, 5)


class UsageError(Exception):
    """Bad flags, config values, or argument combinations."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        raise UsageError(message)


def _parse_year_range(text: str) -> tuple[int, int]:
    low_part, sep, high_part = text.partition("-")
    if not sep:
        raise UsageError(f"year range {text!r} must look like 2005-2007")
    try:
        low, high = int(low_part), int(high_part)
    except ValueError:
        raise UsageError(f"year range {text!r} must contain integers") from None
    if low > high:
        raise UsageError(f"year range {text!r} is empty (start after end)")
    return low, high


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None
    if not values:
        raise UsageError(f"{flag} must not be empty")
    return values


def _parse_int_pairs(text: str, flag: str) -> list[tuple[int, int]]:
    pairs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        left, sep, right = part.partition(":")
        if not sep:
            raise UsageError(f"{flag} entries must look like a:b, got {part!r}")
        try:
            pairs.append((int(left), int(right)))
        except ValueError:
            raise UsageError(f"{flag} entries must be integer pairs, got {part!r}") from None
    if not pairs:
        raise UsageError(f"{flag} must not be empty")
    return pairs


def _parse_code_pairs(text: str) -> list[tuple[str, str]]:
    pairs = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        left, sep, right = part.partition(":")
        if not sep or not left or not right:
            raise UsageError(f"--triples entries must look like i:j, got {part!r}")
        pairs.append((left, right))
    if not pairs:
        raise UsageError("--triples must not be empty")
    return pairs


def _load_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line {line_no} is not key=value: {raw!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(args: argparse.Namespace, config: dict[str, str]) -> None:
    """Fill options the command line left unset; flags always win."""
    for key, value in config.items():
        if not hasattr(args, key):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            if key == "strict":
                setattr(args, key, value.lower() in ("1", "true", "yes", "on"))
            else:
                setattr(args, key, value)


def _sha256(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _write_manifest(
    out_dir: Path,
    command: str,
    params: dict,
    inputs: dict[str, Path],
    outputs: list[Path],
) -> None:
    manifest = {
        "command": command,
        "version": __version__,
        "params": params,
        "inputs": {str(name): f"sha256:{_sha256(path)}" for name, path in sorted(inputs.items())},
        "outputs": {path.name: f"sha256:{_sha256(path)}" for path in sorted(outputs)},
    }
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _input_digest(paths: dict[str, Path]) -> str:
    digest = hashlib.sha256()
    for name in sorted(paths):
        digest.update(name.encode("utf-8"))
        digest.update(_sha256(paths[name]).encode("ascii"))
    return digest.hexdigest()


def _report_meta(params: dict, inputs: dict[str, Path]) -> dict[str, str]:
    return {
        "input_digest": _input_digest(inputs),
        "params": json.dumps(params, sort_keys=True),
    }


def _build_parser() -> _Parser:
    parser = _Parser(prog="citecells", description=__doc__)
    parser.add_argument("--version", action="version", version=f"citecells {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file merged under the flags (flags win)")
    common.add_argument("--out-dir", help="directory for reports and the run manifest")
    common.add_argument("--format", choices=["csv", "json"], help="report format (default csv)")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    corpus_args = argparse.ArgumentParser(add_help=False)
    corpus_args.add_argument("--pubs", help="publications file (CSV or JSONL)")
    corpus_args.add_argument("--cats", help="category registry CSV")
    corpus_args.add_argument("--pubs-format", choices=["csv", "jsonl"], help="publications file format (default csv)")
    corpus_args.add_argument("--doc-type", help="document type to admit (default article)")
    corpus_args.add_argument("--strict", action="store_true", default=None, help="abort on first invalid row")

    analysis_args = argparse.ArgumentParser(add_help=False)
    analysis_args.add_argument("--years", help="publication year range A-B")
    analysis_args.add_argument("--windows", help="citation window lengths, e.g. 3,4,5")
    analysis_args.add_argument("--css-k", type=int, help="truncated-mean iterations for t (default 3)")

    sub = parser.add_subparsers(dest="command", metavar="command")

    sub.add_parser(
        "validate",
        parents=[common, corpus_args],
        help="parse the input files and report rejected rows",
    )
    sub.add_parser(
        "refvalues",
        parents=[common, corpus_args, analysis_args],
        help="compute per-cell reference values e and t",
    )
    compare = sub.add_parser(
        "compare",
        parents=[common, corpus_args, analysis_args],
        help="compare reference values across years, windows, and adjacent cells",
    )
    compare.add_argument("--ref-table", help="precomputed reference table (skips --pubs)")
    compare.add_argument("--triples", help="adjacent-cell category pairs i:j[,i:j...]")
    compare.add_argument("--year-pairs", help="publication year pairs a:b[,a:b...]")
    compare.add_argument("--window-pairs", help="window length pairs a:b[,a:b...]")
    profile = sub.add_parser(
        "profile",
        parents=[common, corpus_args, analysis_args],
        help="researcher distribution over cells, with mean window citations",
    )
    profile.add_argument("--researchers", help="researcher ids id1,id2,... (default: all)")
    profile.add_argument("--window", type=int, help="window for the mean-citations footer (default 5)")
    generate = sub.add_parser(
        "generate",
        parents=[common],
        help="write a synthetic publications corpus from a generator spec",
    )
    generate.add_argument("--spec", help="generator spec JSON file")
    generate.add_argument("--seed", type=int, help="random seed (default 0)")
    return parser


def _require(args: argparse.Namespace, name: str, flag: str) -> str:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def _resolve_out_dir(args: argparse.Namespace) -> Path:
    return Path(args.out_dir or "out")


def _load_corpus(args: argparse.Namespace):
    pubs = Path(_require(args, "pubs", "--pubs"))
    cats = Path(_require(args, "cats", "--cats"))
    registry = parse_category_registry(cats)
    result = parse_publications(
        pubs,
        fmt=args.pubs_format or "csv",
        registry=registry,
        strict=bool(args.strict),
    )
    if result.rejected:
        log.warning("%d rows rejected during ingestion", len(result.rejected))
    return result, {"pubs": pubs, "cats": cats}


def _analysis_params(args: argparse.Namespace, default_years: tuple[int, int]):
    years = _parse_year_range(args.years) if args.years else default_years
    windows = _parse_int_list(args.windows, "--windows") if args.windows else list(WINDOWS)
    if any(w < 1 for w in windows):
        raise UsageError("--windows entries must be at least 1")
    css_k = args.css_k if args.css_k is not None else 3
    if css_k < 1:
        raise UsageError("--css-k must be at least 1")
    return years, windows, css_k


def cmd_validate(args: argparse.Namespace) -> int:
    result, _ = _load_corpus(args)
    print(f"publications: {len(result.corpus.publications)}")
    print(f"categories: {len(result.corpus.categories)}")
    print(f"rejected_rows: {len(result.rejected)}")
    for row in result.rejected:
        print(f"  line {row.line}: {row.reason}")
    return EXIT_OK


def cmd_refvalues(args: argparse.Namespace) -> int:
    result, inputs = _load_corpus(args)
    years, windows, css_k = _analysis_params(args, REF_YEARS)
    doc_type = args.doc_type or "article"
    partition = build_partition(result.corpus, doc_type=doc_type, year_range=years)
    table = build_reference_table(
        partition, result.corpus, range(years[0], years[1] + 1), windows, k=css_k
    )
    if len(table) == 0:
        raise EmptyReport("no publications admitted; nothing to report")
    fmt = args.format or "csv"
    params = {
        "doc_type": doc_type,
        "years": f"{years[0]}-{years[1]}",
        "windows": ",".join(map(str, windows)),
        "css_k": css_k,
        "format": fmt,
    }
    # Machine-oriented export keeps four decimals; r values downstream are
    # sensitive to rounding.
    spec = ReportSpec(
        kind="reference_table",
        format=fmt,
        rounding={"e": 4, "t": 4, "css": 4},
        meta=_report_meta(params, inputs),
    )
    out_dir = _resolve_out_dir(args)
    out_path = write_report(emit_reference_table(table.entries, spec), out_dir / f"refvalues.{fmt}")
    _write_manifest(out_dir, "refvalues", params, inputs, [out_path])
    log.info("wrote %s", out_path)
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    inputs: dict[str, Path] = {}
    years_arg = args.years
    if args.ref_table:
        ref_path = Path(args.ref_table)
        table_fmt = "json" if ref_path.suffix == ".json" else "csv"
        table = load_reference_table(ref_path, fmt=table_fmt)
        inputs["ref_table"] = ref_path
        years = _parse_year_range(years_arg) if years_arg else (table.years()[0], table.years()[-1])
        windows = _parse_int_list(args.windows, "--windows") if args.windows else table.windows()
        css_k = args.css_k if args.css_k is not None else 3
    else:
        result, inputs = _load_corpus(args)
        years, windows, css_k = _analysis_params(args, REF_YEARS)
        doc_type = args.doc_type or "article"
        partition = build_partition(result.corpus, doc_type=doc_type, year_range=years)
        table = build_reference_table(
            partition, result.corpus, range(years[0], years[1] + 1), windows, k=css_k
        )
    if len(table) == 0:
        raise EmptyReport("reference table is empty; nothing to compare")

    year_list = sorted(set(range(years[0], years[1] + 1)) & set(table.years()))
    year_pairs = (
        _parse_int_pairs(args.year_pairs, "--year-pairs")
        if args.year_pairs
        else list(zip(year_list, year_list[1:]))
    )
    window_pairs = (
        _parse_int_pairs(args.window_pairs, "--window-pairs")
        if args.window_pairs
        else list(zip(sorted(windows), sorted(windows)[1:]))
    )
    triples = []
    if args.triples:
        known_codes = {code for cell in table.cells() for code in cell.codes}
        for i, j in _parse_code_pairs(args.triples):
            for code in (i, j):
                if code not in known_codes:
                    raise UsageError(f"unknown category code {code!r} in --triples")
            try:
                triples.append(adjacent_triple(i, j))
            except DegenerateTriple as exc:
                raise UsageError(str(exc)) from None

    cells = table.cells()
    records = []
    summaries = []
    for metric in ("e", "t"):
        groups = [
            year_dimension_pairs(table, year_pairs, cells=cells, windows=windows, metric=metric),
            window_dimension_pairs(table, window_pairs, cells=cells, years=year_list, metric=metric),
        ]
        if triples:
            groups.append(
                cell_dimension_pairs(table, triples, years=year_list, windows=windows, metric=metric)
            )
        for group in groups:
            records.extend(group)
            if group:
                summaries.append(summarize_dimension(group))
            else:
                log.warning("no comparable pairs for metric %r in one dimension", metric)
    if not records:
        raise EmptyReport("no comparable reference-value pairs found")

    fmt = args.format or "csv"
    params = {
        "years": f"{years[0]}-{years[1]}",
        "windows": ",".join(map(str, windows)),
        "css_k": css_k,
        "year_pairs": ",".join(f"{a}:{b}" for a, b in year_pairs),
        "window_pairs": ",".join(f"{a}:{b}" for a, b in window_pairs),
        "triples": args.triples or "",
        "format": fmt,
    }
    meta = _report_meta(params, inputs)
    out_dir = _resolve_out_dir(args)
    spec = ReportSpec(kind="difference_summary", format=fmt, meta=meta)
    records_path = write_report(
        emit_difference_records(records, spec), out_dir / f"differences.{fmt}"
    )
    summary_path = write_report(
        emit_difference_summary(records, summaries, spec), out_dir / f"difference_summary.{fmt}"
    )
    _write_manifest(out_dir, "compare", params, inputs, [records_path, summary_path])
    log.info("wrote %s and %s", records_path, summary_path)
    return EXIT_OK


def cmd_profile(args: argparse.Namespace) -> int:
    result, inputs = _load_corpus(args)
    corpus = result.corpus
    years, _, _ = _analysis_params(args, PROFILE_YEARS)
    doc_type = args.doc_type or "article"
    window = args.window if args.window is not None else 5
    if window < 1:
        raise UsageError("--window must be at least 1")
    partition = build_partition(corpus, doc_type=doc_type, year_range=years)
    known = corpus.researcher_ids()
    if args.researchers:
        requested = [r.strip() for r in args.researchers.split(",") if r.strip()]
    else:
        requested = known
    profiles = []
    for researcher_id in requested:
        if researcher_id not in known:
            log.warning("unknown researcher %r; omitted", researcher_id)
            continue
        try:
            profiles.append(
                researcher_profile(corpus, partition, researcher_id, period=years, window=window)
            )
        except EmptyProfile:
            log.warning("researcher %r has no admitted articles in %s-%s; omitted",
                        researcher_id, years[0], years[1])
    if not profiles:
        raise EmptyReport("no researcher could be profiled")
    fmt = args.format or "csv"
    params = {
        "doc_type": doc_type,
        "years": f"{years[0]}-{years[1]}",
        "window": window,
        "researchers": ",".join(p.researcher_id for p in profiles),
        "format": fmt,
    }
    spec = ReportSpec(kind="profile_matrix", format=fmt, meta=_report_meta(params, inputs))
    out_dir = _resolve_out_dir(args)
    out_path = write_report(emit_profile_matrix(profiles, spec), out_dir / f"profile_matrix.{fmt}")
    _write_manifest(out_dir, "profile", params, inputs, [out_path])
    log.info("wrote %s", out_path)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    spec_path = Path(_require(args, "spec", "--spec"))
    seed = args.seed if args.seed is not None else 0
    try:
        generator_spec = load_generator_spec(spec_path)
    except InvalidSpec as exc:
        raise UsageError(f"invalid generator spec: {exc}") from None
    corpus = generate_synthetic_corpus(generator_spec, seed)
    out_dir = _resolve_out_dir(args)
    out_dir.mkdir(parents=True, exist_ok=True)
    pubs_path = out_dir / "pubs.csv"
    cats_path = out_dir / "cats.csv"
    pubs_path.write_bytes(write_publications(corpus, fmt="csv"))
    cats_path.write_bytes(write_category_registry(corpus))
    params = {"spec": str(spec_path), "seed": seed}
    _write_manifest(out_dir, "generate", params, {"spec": spec_path}, [pubs_path, cats_path])
    log.info("wrote %s and %s (%d publications)", pubs_path, cats_path, len(corpus.publications))
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "refvalues": cmd_refvalues,
    "compare": cmd_compare,
    "profile": cmd_profile,
    "generate": cmd_generate,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required (validate, refvalues, compare, profile, generate)")
        if getattr(args, "config", None):
            _apply_config(args, _load_config(args.config))
        logging.basicConfig(
            stream=sys.stderr,
            level=logging.DEBUG if getattr(args, "verbose", False) else logging.INFO,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmptyReport, EmptyDistribution, EmptyProfile) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except CitecellsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
