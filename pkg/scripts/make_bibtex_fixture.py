#!/usr/bin/env python3
"""Emit a deterministic synthetic BibTeX corpus.

    python scripts/make_bibtex_fixture.py 1200 --seed 7 > corpus.bib
"""

from __future__ import annotations

import argparse
import sys

sys.path.insert(0, "src")

from ontonav.fixtures import synthetic_bibtex


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("count", type=int)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sys.stdout.write(synthetic_bibtex(args.count, args.seed))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
