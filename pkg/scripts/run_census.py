#!/usr/bin/env python3
"""Bounded-degree subgroup census over Z (the CLI's census subcommand)."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ntbounds.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or [
        "census", "--ring", "z", "--N", "3", "--r", "2",
        "--max-degree", "40", "--torsion", "10",
    ]
    if args[0] != "census":
        args = ["census", *args]
    sys.exit(main(args))
