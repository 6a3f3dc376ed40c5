#!/usr/bin/env python3
"""Sweep the NEW update's tau over the desk suite and print the table.

Writes sweep.csv and cost_fevals.csv to --output, $CGLAB_OUTPUT_DIR, or
./results.  Extra cglab sweep-tau flags (--taus, --problems, ...) pass
through.
"""

import os
import sys
from pathlib import Path

from cglab.cli import OUTPUT_DIR_ENV, main


def run(argv: list[str]) -> int:
    code = main(["sweep-tau", *argv])
    if code != 0:
        return code

    if "--output" in argv:
        out_dir = Path(argv[argv.index("--output") + 1])
    else:
        out_dir = Path(os.environ.get(OUTPUT_DIR_ENV) or "results")

    lines = (out_dir / "sweep.csv").read_text().splitlines()
    header = lines[0].split(",")
    print(f"tau sweep: artifacts in {out_dir}/")
    print(f"{header[0]:>8} {header[1]:>6} {header[2]:>12} {header[3]:>12}")
    for line in lines[1:]:
        tau, solved, total, wins = line.split(",")
        print(f"{float(tau):>8.3g} {solved:>6} {total:>12} {float(wins):>12.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
