#!/usr/bin/env python3
"""Write the bundled demo corpus to a directory (default: data/demo)."""

import argparse
from pathlib import Path

from adaptlift.demo import write_demo_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data/demo", help="target directory")
    args = parser.parse_args()
    root = write_demo_corpus(Path(args.out))
    print(f"demo corpus written to {root}")
    print("next: adaptlift clones --corpus-dir", root, "--out pairs.jsonl")


if __name__ == "__main__":
    main()
