#!/usr/bin/env python3
"""Desk-scale bounded-height search on the first family's preset curve."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ntbounds.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or [
        "search", "--family", "f1", "--n", "1", "--curve", "f1",
        "--height-bound", "25", "--tol", "1e-10", "--shards", "8",
    ]
    if args[0] != "search":
        args = ["search", *args]
    sys.exit(main(args))
