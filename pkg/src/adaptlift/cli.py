"""Command-line entry points for the corpus pipeline and the local service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import aggregate_stats, dedup_files, pairs_from_jsonl, pairs_to_jsonl
from .classify import distinct_types
from .pipeline import (
    analyze_pair,
    build_pairs,
    build_template,
    counterpart_text_for,
    link_pairs,
    load_corpus,
)
from .parse import parse_snippet
from .template import template_to_json


def _add_corpus_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--corpus-dir", required=True, help="corpus directory")


def cmd_dedup(args) -> int:
    corpus = load_corpus(args.corpus_dir)
    files = [(s.id, s.text) for s in sorted(corpus.counterpart_files, key=lambda s: s.id)]
    kept = dedup_files(files)
    doc = {"total": len(files), "distinct": len(kept), "kept": [fid for fid, _ in kept]}
    Path(args.out).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"{len(kept)}/{len(files)} distinct files -> {args.out}")
    return 0


def cmd_clones(args) -> int:
    corpus = load_corpus(args.corpus_dir)
    pairs = build_pairs(
        corpus,
        threshold=args.threshold,
        min_tokens=args.min_tokens,
        brute_force=args.brute_force,
    )
    Path(args.out).write_text(pairs_to_jsonl(pairs))
    print(f"{len(pairs)} clone pairs -> {args.out}")
    return 0


def cmd_link(args) -> int:
    corpus = load_corpus(args.corpus_dir)
    pairs = pairs_from_jsonl(Path(args.pairs).read_text())
    kept, problems = link_pairs(corpus, pairs)
    Path(args.out).write_text(pairs_to_jsonl(kept))
    for problem in problems:
        print(
            f"skipped {problem.example_id} ~ {problem.counterpart_id}: "
            f"missing {problem.missing}",
            file=sys.stderr,
        )
    attributed = sum(1 for p in kept if p.attributed)
    print(f"{len(kept)} pairs after timestamp filter ({attributed} attributed) -> {args.out}")
    return 0


def cmd_stats(args) -> int:
    corpus = load_corpus(args.corpus_dir)
    pairs = pairs_from_jsonl(Path(args.pairs).read_text())
    edit_counts = {}
    types_per_pair = {}
    for pair in pairs:
        tree = parse_snippet(corpus.snippets[pair.example_id].text)
        analysis = analyze_pair(tree, pair, counterpart_text_for(corpus, pair))
        key = (pair.example_id, pair.counterpart_id)
        edit_counts[key] = len(analysis.script.visible_ops)
        types_per_pair[key] = distinct_types([analysis.instances])
    report = aggregate_stats(pairs, edit_counts, types_per_pair)
    Path(args.out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    print(f"stats for {len(report['examples'])} examples -> {args.out}")
    return 0


def cmd_template(args) -> int:
    corpus = load_corpus(args.corpus_dir)
    pairs = pairs_from_jsonl(Path(args.pairs).read_text())
    template, _ = build_template(corpus, args.example_id, pairs)
    Path(args.out).write_text(template_to_json(template))
    print(f"template for {args.example_id} -> {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    serve(args.data_dir, args.port, threshold=args.threshold, min_tokens=args.min_tokens)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="adaptlift",
        description="Adaptation-aware analysis and template lifting for code examples",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dedup", help="deduplicate counterpart files by content hash")
    _add_corpus_arg(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_dedup)

    p = sub.add_parser("clones", help="detect token-based clone pairs")
    _add_corpus_arg(p)
    p.add_argument("--threshold", type=float, default=0.7)
    p.add_argument("--min-tokens", type=int, default=50)
    p.add_argument("--brute-force", action="store_true", help="skip the index (verification)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_clones)

    p = sub.add_parser("link", help="timestamp filtering and attribution scanning")
    _add_corpus_arg(p)
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_link)

    p = sub.add_parser("stats", help="aggregate adaptation statistics")
    _add_corpus_arg(p)
    p.add_argument("--pairs", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("template", help="lift and serialize one example's template")
    _add_corpus_arg(p)
    p.add_argument("--pairs", required=True)
    p.add_argument("--example-id", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--data-dir", required=True)
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--threshold", type=float, default=0.7)
    p.add_argument("--min-tokens", type=int, default=50)
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
