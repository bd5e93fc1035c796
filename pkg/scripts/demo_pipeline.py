#!/usr/bin/env python3
"""Run the full pipeline on a synthetic corpus: generate, refvalues, compare, profile.

Everything goes through the CLI entry point, so this doubles as a smoke test
of the command surface. Outputs land in out/demo/.
"""

from __future__ import annotations

import sys
from pathlib import Path

from citecells.cli import main

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "out" / "demo"


def run(argv: list[str]) -> None:
    print(f"$ citecells {' '.join(argv)}")
    code = main(argv)
    if code != 0:
        raise SystemExit(code)


def main_script() -> int:
    spec = str(ROOT / "data" / "demo_generator.json")
    out = str(OUT)
    run(["generate", "--spec", spec, "--seed", "7", "--out-dir", out])
    pubs, cats = str(OUT / "pubs.csv"), str(OUT / "cats.csv")
    run(["refvalues", "--pubs", pubs, "--cats", cats, "--years", "2005-2007",
         "--windows", "3,4,5", "--out-dir", out])
    run(["compare", "--pubs", pubs, "--cats", cats, "--years", "2005-2007",
         "--windows", "3,4,5", "--triples", "M:MA,AA:PPF", "--out-dir", out])
    run(["profile", "--pubs", pubs, "--cats", cats, "--years", "2005-2007",
         "--out-dir", out])
    print(f"\nall reports in {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main_script())
