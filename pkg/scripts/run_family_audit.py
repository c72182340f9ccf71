#!/usr/bin/env python3
"""Reproduce the curve-family audit: degree, genus, height chain, and the
composed-versus-closed-form comparison over a range of n."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from ntbounds.cli import main

if __name__ == "__main__":
    args = sys.argv[1:] or ["family-audit", "--family", "f2", "--n-range", "1:10"]
    if args[0] != "family-audit":
        args = ["family-audit", *args]
    sys.exit(main(args))
