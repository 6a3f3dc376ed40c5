#!/usr/bin/env python3
"""Run the four-method desk-suite benchmark and print a digest.

Artifacts (cost/profile CSVs, wins.json, runs.json) land in --output,
$CGLAB_OUTPUT_DIR, or ./results.  Extra cglab suite flags pass through.
"""

import json
import sys
from pathlib import Path

from cglab.cli import OUTPUT_DIR_ENV, main


def run(argv: list[str]) -> int:
    args = ["suite", "--methods", "NEW,FR,MFR,HZ", *argv]
    code = main(args)
    if code != 0:
        return code

    out_dir = None
    if "--output" in argv:
        out_dir = Path(argv[argv.index("--output") + 1])
    else:
        import os

        out_dir = Path(os.environ.get(OUTPUT_DIR_ENV) or "results")

    wins = json.loads((out_dir / "wins.json").read_text())
    runs = json.loads((out_dir / "runs.json").read_text())
    solved = {}
    fevals = {}
    for r in runs:
        solved.setdefault(r["solver"], 0)
        fevals.setdefault(r["solver"], 0)
        if r["status"] == "Converged":
            solved[r["solver"]] += 1
            fevals[r["solver"]] += r["f_evals"]
    n_problems = len({(r["problem"], r["dim"]) for r in runs})

    print(f"desk suite: {n_problems} problems, artifacts in {out_dir}/")
    print(f"{'solver':8} {'solved':>6} {'f_evals':>8} {'win rate':>8}")
    for solver in ("NEW", "FR", "MFR", "HZ"):
        print(
            f"{solver:8} {solved[solver]:>6} {fevals[solver]:>8} "
            f"{wins[solver]:>8.2f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
