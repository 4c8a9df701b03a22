#!/usr/bin/env python3
"""End-to-end experiment: demo corpus -> dedup -> clones -> link -> stats,
printing a short summary of what each stage found."""

import argparse
import json
import tempfile
from pathlib import Path

from adaptlift.classify import distinct_types
from adaptlift.corpus import aggregate_stats, dedup_files, pairs_to_jsonl
from adaptlift.demo import write_demo_corpus
from adaptlift.parse import parse_snippet
from adaptlift.pipeline import (
    analyze_pair,
    build_pairs,
    counterpart_text_for,
    link_pairs,
    load_corpus,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--corpus-dir", default=None, help="existing corpus (default: fresh demo)")
    parser.add_argument("--out-dir", default=None)
    parser.add_argument("--threshold", type=float, default=0.7)
    parser.add_argument("--min-tokens", type=int, default=50)
    args = parser.parse_args()

    corpus_dir = Path(args.corpus_dir) if args.corpus_dir else write_demo_corpus(
        Path(tempfile.mkdtemp(prefix="adaptlift-demo-"))
    )
    out_dir = Path(args.out_dir) if args.out_dir else corpus_dir
    corpus = load_corpus(corpus_dir)
    print(f"corpus: {len(corpus.examples)} examples, {len(corpus.counterpart_files)} files")

    files = [(s.id, s.text) for s in corpus.counterpart_files]
    print(f"dedup: {len(dedup_files(files))}/{len(files)} distinct files")

    pairs = build_pairs(corpus, threshold=args.threshold, min_tokens=args.min_tokens)
    print(f"clones: {len(pairs)} candidate pairs at threshold {args.threshold}")

    linked, problems = link_pairs(corpus, pairs)
    attributed = sum(1 for p in linked if p.attributed)
    print(f"link: {len(linked)} pairs after timestamps ({attributed} attributed, "
          f"{len(problems)} records skipped)")
    (out_dir / "pairs.jsonl").write_text(pairs_to_jsonl(linked))

    edit_counts, types_per_pair = {}, {}
    for pair in linked:
        tree = parse_snippet(corpus.snippets[pair.example_id].text)
        analysis = analyze_pair(tree, pair, counterpart_text_for(corpus, pair))
        key = (pair.example_id, pair.counterpart_id)
        edit_counts[key] = len(analysis.script.visible_ops)
        types_per_pair[key] = {i.type for i in analysis.instances if i.type}
    report = aggregate_stats(linked, edit_counts, types_per_pair)
    (out_dir / "stats.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    for eid, row in report["examples"].items():
        print(f"  {eid}: mean edits {row['mean_edits']:.1f}, "
              f"types {', '.join(row['distinct_types']) or '-'}")
    print(f"stats -> {out_dir / 'stats.json'}")
    print(f"serve with: adaptlift serve --data-dir {corpus_dir}")


if __name__ == "__main__":
    main()
