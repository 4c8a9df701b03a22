#!/usr/bin/env python3
"""Generate the seeded synthetic corpus used to verify clone detection
against brute-force enumeration."""

import argparse
from pathlib import Path

from adaptlift.demo import write_clone_benchmark


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/bench")
    parser.add_argument("--files", type=int, default=200)
    parser.add_argument("--examples", type=int, default=10)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    root = write_clone_benchmark(
        Path(args.out), files=args.files, examples=args.examples, seed=args.seed
    )
    print(f"benchmark corpus ({args.files} files) written to {root}")


if __name__ == "__main__":
    main()
