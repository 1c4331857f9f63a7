#!/usr/bin/env python3
"""Reproduce the benchmark table from the vendored instance files.

Usage:
    python scripts/run_bench.py [--tsp exact|christofides] [--format text|csv]

Extra instance files dropped into instances/ (nl10.txt, galaxy4.txt, ...)
are picked up automatically; sizes beyond the exact-tour cap get skipped
rows unless matching .tour files are supplied via --tours.
"""

import sys
from pathlib import Path

from uttp.cli import main

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    sys.exit(main(["bench", str(ROOT / "instances"), *sys.argv[1:]]))
