"""End-to-end glue: load a corpus directory, extract counterpart method
candidates, run diff/classify/lift for each example, and build the template
store the service exposes.

Corpus layout:
    <dir>/metadata.jsonl   one record per snippet:
        {id, role: example|counterpart, post_id?, answer_id?, vote_score?,
         repo?, path?, created_at?, stars?, contributors?, watches?}
    <dir>/snippets/<id>.java
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .classify import AdaptationInstance, classify
from .corpus import (
    CloneCandidate,
    ClonePair,
    PostIndex,
    dedup_files,
    detect_clones,
    filter_by_timestamp,
    scan_attribution,
)
from .editscript import EditScript, compute_edit_script, prune_inner_ops
from .parse import ParseError, parse_snippet
from .semantics import collect_facts
from .template import CounterpartInfo, LiftedTemplate, lift_template
from .tree import SyntaxTree


@dataclass
class Snippet:
    id: str
    role: str
    text: str
    post_id: Optional[str] = None
    answer_id: Optional[str] = None
    vote_score: Optional[int] = None
    repo: Optional[str] = None
    path: Optional[str] = None
    created_at: Optional[str] = None
    stars: int = 0
    contributors: int = 0
    watches: int = 0


@dataclass
class Corpus:
    root: Path
    snippets: dict[str, Snippet] = field(default_factory=dict)

    @property
    def examples(self) -> list[Snippet]:
        return [s for s in self.snippets.values() if s.role == "example"]

    @property
    def counterpart_files(self) -> list[Snippet]:
        return [s for s in self.snippets.values() if s.role == "counterpart"]


def load_corpus(root: Path | str) -> Corpus:
    root = Path(root)
    corpus = Corpus(root=root)
    meta_path = root / "metadata.jsonl"
    for line in meta_path.read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        sid = rec["id"]
        text_path = root / "snippets" / f"{sid}.java"
        text = text_path.read_text()
        if not text:
            raise ValueError(f"snippet {sid} has empty text")
        if rec["role"] == "example" and rec.get("post_id") is None:
            raise ValueError(f"example {sid} lacks a post_id")
        if rec["role"] == "counterpart" and rec.get("created_at") is None:
            raise ValueError(f"counterpart {sid} lacks a creation timestamp")
        snippet = Snippet(
            id=sid,
            role=rec["role"],
            text=text,
            post_id=str(rec["post_id"]) if rec.get("post_id") is not None else None,
            answer_id=str(rec["answer_id"]) if rec.get("answer_id") is not None else None,
            vote_score=rec.get("vote_score"),
            repo=rec.get("repo"),
            path=rec.get("path"),
            created_at=rec.get("created_at"),
            stars=rec.get("stars") or 0,
            contributors=rec.get("contributors") or 0,
            watches=rec.get("watches") or 0,
        )
        corpus.snippets[sid] = snippet
    return corpus


def method_candidates(file_id: str, text: str) -> list[CloneCandidate]:
    """Every method body in a file is a clone candidate."""
    try:
        tree = parse_snippet(text)
    except ParseError:
        return []
    out = []
    k = 0
    for nid in tree.preorder():
        node = tree.node(nid)
        if node.label == "MethodDeclaration" and not node.synthetic:
            span = (node.start, node.end)
            out.append(
                CloneCandidate(
                    id=f"{file_id}:{span[0]}-{span[1]}",
                    file_id=file_id,
                    span=span,
                    text=text[span[0] : span[1]],
                )
            )
            k += 1
    return out


def example_shape(tree: SyntaxTree) -> str:
    """statements (method-wrapped), members (class-wrapped), or unit."""
    if not tree.node(tree.root).synthetic:
        return "unit"
    for nid in tree.preorder():
        node = tree.node(nid)
        if node.synthetic and node.label == "MethodDeclaration":
            return "statements"
    return "members"


def comparable_counterpart_text(example: SyntaxTree, candidate_text: str) -> str:
    """Slice or wrap the candidate to the example's granularity: statement
    snippets diff against the method body's interior, full-class examples
    against the method embedded in a same-named class shell."""
    shape = example_shape(example)
    if shape == "members":
        return candidate_text
    try:
        tree = parse_snippet(candidate_text)
    except ParseError:
        return candidate_text
    if shape == "statements":
        for nid in tree.preorder():
            node = tree.node(nid)
            if node.label == "MethodDeclaration" and not node.synthetic:
                blocks = [c for c in tree.children(nid) if tree.label(c) == "Block"]
                if blocks:
                    b = tree.node(blocks[0])
                    inner = candidate_text[b.start + 1 : b.end - 1]
                    return inner.strip("\n")
                break
        return candidate_text
    # unit-shaped example: align roots by wrapping a bare method candidate in
    # a class shell carrying the example's own class name
    if not tree.node(tree.root).synthetic:
        return candidate_text
    class_name = None
    for nid in example.preorder():
        node = example.node(nid)
        if node.label == "ClassDeclaration" and not node.synthetic:
            names = [c for c in example.children(nid) if example.label(c) == "Name"]
            if names:
                class_name = example.value(names[0])
            break
    if class_name is None:
        return candidate_text
    body = "\n".join("  " + line for line in candidate_text.splitlines())
    return f"class {class_name} {{\n{body}\n}}\n"


@dataclass
class PairAnalysis:
    pair: ClonePair
    counterpart_text: str
    script: EditScript  # full script (round-trip capable)
    pruned: EditScript
    instances: list[AdaptationInstance]


def analyze_pair(
    example_tree: SyntaxTree, pair: ClonePair, counterpart_text: str
) -> PairAnalysis:
    text = comparable_counterpart_text(example_tree, counterpart_text)
    counterpart_tree = parse_snippet(text)
    script = compute_edit_script(example_tree, counterpart_tree)
    pruned = prune_inner_ops(script)
    instances = classify(
        pruned, collect_facts(example_tree), collect_facts(counterpart_tree)
    )
    return PairAnalysis(
        pair=pair,
        counterpart_text=text,
        script=script,
        pruned=pruned,
        instances=instances,
    )


def build_pairs(
    corpus: Corpus,
    threshold: float,
    min_tokens: int,
    brute_force: bool = False,
) -> list[ClonePair]:
    files = [(s.id, s.text) for s in sorted(corpus.counterpart_files, key=lambda s: s.id)]
    candidates: list[CloneCandidate] = []
    for fid, text in dedup_files(files):
        candidates.extend(method_candidates(fid, text))
    examples = [
        (s.id, s.text) for s in sorted(corpus.examples, key=lambda s: s.id)
    ]
    pairs = detect_clones(
        examples, candidates, threshold=threshold, min_tokens=min_tokens,
        brute_force=brute_force,
    )
    stamped = []
    for pair in pairs:
        ex = corpus.snippets[pair.example_id]
        cf = corpus.snippets[pair.counterpart_file]
        stamped.append(
            ClonePair(
                example_id=pair.example_id,
                counterpart_id=pair.counterpart_id,
                similarity=pair.similarity,
                example_time=ex.created_at,
                counterpart_time=cf.created_at,
                attributed=False,
                counterpart_file=pair.counterpart_file,
                method_span=pair.method_span,
            )
        )
    return stamped


def link_pairs(
    corpus: Corpus, pairs: list[ClonePair]
) -> tuple[list[ClonePair], list]:
    """Timestamp filtering plus attribution scanning."""
    kept, problems = filter_by_timestamp(pairs)
    index = PostIndex.from_examples(
        [
            {"id": s.id, "post_id": s.post_id, "answer_id": s.answer_id}
            for s in corpus.examples
        ]
    )
    attributed_by_file: dict[str, set[str]] = {}
    for snip in corpus.counterpart_files:
        attributed_by_file[snip.id] = scan_attribution(snip.text, index)
    out = []
    for pair in kept:
        attributed = pair.example_id in attributed_by_file.get(
            pair.counterpart_file or "", set()
        )
        out.append(
            ClonePair(
                example_id=pair.example_id,
                counterpart_id=pair.counterpart_id,
                similarity=pair.similarity,
                example_time=pair.example_time,
                counterpart_time=pair.counterpart_time,
                attributed=attributed,
                counterpart_file=pair.counterpart_file,
                method_span=pair.method_span,
            )
        )
    return out, problems


def counterpart_text_for(corpus: Corpus, pair: ClonePair) -> str:
    snip = corpus.snippets[pair.counterpart_file]
    if pair.method_span:
        s, e = pair.method_span
        return snip.text[s:e]
    return snip.text


def build_template(
    corpus: Corpus, example_id: str, pairs: list[ClonePair]
) -> tuple[LiftedTemplate, list[PairAnalysis]]:
    example = corpus.snippets[example_id]
    tree = parse_snippet(example.text)
    mine = [p for p in pairs if p.example_id == example_id]
    analyses = []
    for pair in mine:
        analyses.append(analyze_pair(tree, pair, counterpart_text_for(corpus, pair)))
    infos = []
    for pair in mine:
        cf = corpus.snippets[pair.counterpart_file]
        infos.append(
            CounterpartInfo(
                id=pair.counterpart_id,
                repo=cf.repo,
                url=cf.path,
                stars=cf.stars,
                contributors=cf.contributors,
                watches=cf.watches,
            )
        )
    template = lift_template(
        example_id,
        tree,
        [a.pruned for a in analyses],
        [a.instances for a in analyses],
        infos,
    )
    return template, analyses
