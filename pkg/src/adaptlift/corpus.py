"""Dataset construction over local corpora: file dedup, token-based clone
detection, timestamp filtering, attribution scanning, and adaptation
statistics.

Corpora are directories with one plain-text snippet file per id plus a
line-delimited metadata sidecar.
"""

from __future__ import annotations

import hashlib
import json
import re
from collections import Counter
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Optional

from .lex import TokenStream, countable_lexemes, measured_token_count, tokenize

DEFAULT_THRESHOLD = 0.7
DEFAULT_MIN_TOKENS = 50

ATTRIBUTION_HOSTS = ("stackoverflow.com",)


@dataclass(frozen=True)
class ClonePair:
    example_id: str
    counterpart_id: str
    similarity: float
    example_time: Optional[str] = None  # ISO-8601 UTC
    counterpart_time: Optional[str] = None
    attributed: bool = False
    counterpart_file: Optional[str] = None
    method_span: Optional[tuple[int, int]] = None

    @property
    def label(self) -> str:
        return "Adaptation" if self.attributed else "Variation"

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["method_span"] = list(self.method_span) if self.method_span else None
        rec["label"] = self.label
        return rec

    @staticmethod
    def from_record(rec: dict) -> "ClonePair":
        return ClonePair(
            example_id=rec["example_id"],
            counterpart_id=rec["counterpart_id"],
            similarity=rec["similarity"],
            example_time=rec.get("example_time"),
            counterpart_time=rec.get("counterpart_time"),
            attributed=rec.get("attributed", False),
            counterpart_file=rec.get("counterpart_file"),
            method_span=tuple(rec["method_span"]) if rec.get("method_span") else None,
        )


@dataclass(frozen=True)
class MissingTimestamp:
    example_id: str
    counterpart_id: str
    missing: str  # which side


def dedup_files(files: list[tuple[str, str]]) -> list[tuple[str, str]]:
    """One representative per identical-content group (first occurrence)."""
    seen: set[str] = set()
    out = []
    for fid, text in files:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        if digest in seen:
            continue
        seen.add(digest)
        out.append((fid, text))
    return out


def clone_similarity(a: TokenStream, b: TokenStream) -> float:
    """Multiset overlap of countable tokens over the larger stream."""
    ca = Counter(countable_lexemes(a))
    cb = Counter(countable_lexemes(b))
    na, nb = sum(ca.values()), sum(cb.values())
    if max(na, nb) == 0:
        return 0.0
    overlap = sum(min(c, cb[t]) for t, c in ca.items())
    return overlap / max(na, nb)


@dataclass(frozen=True)
class CloneCandidate:
    """A counterpart-side unit (one method of one file)."""

    id: str
    file_id: str
    span: tuple[int, int]
    text: str


def _prefix_index_pairs(
    examples: list[tuple[str, list[str]]],
    candidates: list[tuple[str, list[str]]],
    threshold: float,
) -> set[tuple[str, str]]:
    """Prefix-filtering candidate pairs: two token multisets with overlap
    >= threshold*max share at least one of the first
    len(t) - ceil(threshold*len(t)) + 1 rarest tokens of each."""
    freq: Counter = Counter()
    for _, toks in examples:
        freq.update(set(toks))
    for _, toks in candidates:
        freq.update(set(toks))

    def ranked(tokens: list[str]) -> list[str]:
        return sorted(tokens, key=lambda t: (freq[t], t))

    def prefix(tokens: list[str]) -> list[str]:
        n = len(tokens)
        keep = n - int(-(-threshold * n // 1)) + 1  # n - ceil(t*n) + 1
        return ranked(tokens)[: max(keep, 0)]

    postings: dict[str, list[str]] = {}
    for cid, toks in candidates:
        if not toks:
            continue
        for t in set(prefix(toks)):
            postings.setdefault(t, []).append(cid)

    out: set[tuple[str, str]] = set()
    for eid, toks in examples:
        if not toks:
            continue
        for t in set(prefix(toks)):
            for cid in postings.get(t, ()):
                out.add((eid, cid))
    return out


def detect_clones(
    examples: list[tuple[str, str]],
    candidates: list[CloneCandidate],
    threshold: float = DEFAULT_THRESHOLD,
    min_tokens: int = DEFAULT_MIN_TOKENS,
    brute_force: bool = False,
) -> list[ClonePair]:
    """Clone pairs between example snippets and counterpart method
    candidates. Examples below `min_tokens` countable tokens never pair.

    The prefix-filtering index is lossless; `brute_force=True` compares every
    pair and exists for verification.
    """
    ex_streams = {eid: tokenize(text) for eid, text in examples}
    cand_streams = {c.id: tokenize(c.text) for c in candidates}
    eligible = [
        (eid, stream)
        for eid, stream in ex_streams.items()
        if measured_token_count(stream) >= min_tokens
    ]
    cand_by_id = {c.id: c for c in candidates}

    if brute_force:
        todo = {(eid, c.id) for eid, _ in eligible for c in candidates}
    else:
        todo = _prefix_index_pairs(
            [(eid, countable_lexemes(s)) for eid, s in eligible],
            [(cid, countable_lexemes(s)) for cid, s in cand_streams.items()],
            threshold,
        )

    pairs = []
    for eid, cid in sorted(todo):
        sim = clone_similarity(ex_streams[eid], cand_streams[cid])
        if sim >= threshold:
            cand = cand_by_id[cid]
            pairs.append(
                ClonePair(
                    example_id=eid,
                    counterpart_id=cid,
                    similarity=round(sim, 6),
                    counterpart_file=cand.file_id,
                    method_span=cand.span,
                )
            )
    return pairs


def _parse_time(value: Optional[str]) -> Optional[datetime]:
    if not value:
        return None
    ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


def filter_by_timestamp(
    pairs: list[ClonePair],
) -> tuple[list[ClonePair], list[MissingTimestamp]]:
    """Keep pairs whose counterpart is strictly later than the example;
    records with missing timestamps are skipped and reported."""
    kept: list[ClonePair] = []
    problems: list[MissingTimestamp] = []
    for pair in pairs:
        et = _parse_time(pair.example_time)
        ct = _parse_time(pair.counterpart_time)
        if et is None or ct is None:
            missing = "example_time" if et is None else "counterpart_time"
            problems.append(
                MissingTimestamp(pair.example_id, pair.counterpart_id, missing)
            )
            continue
        if ct > et:
            kept.append(pair)
    return kept, problems


class PostIndex:
    """Question/answer post ids behind the bundled examples."""

    def __init__(self) -> None:
        self.by_answer: dict[str, set[str]] = {}
        self.by_question: dict[str, set[str]] = {}

    @staticmethod
    def from_examples(records: Iterable[dict]) -> "PostIndex":
        """records carry {id, post_id (question), answer_id}."""
        index = PostIndex()
        for rec in records:
            eid = rec["id"]
            answer = rec.get("answer_id")
            question = rec.get("post_id")
            if answer is not None:
                index.by_answer.setdefault(str(answer), set()).add(eid)
            if question is not None:
                index.by_question.setdefault(str(question), set()).add(eid)
        return index


_URL_RE = re.compile(
    r"https?://(?:www\.)?(?P<host>[\w.-]+)/"
    r"(?:questions/(?P<q>\d+)(?:/[\w%-]+)?(?:/(?P<qa>\d+))?"
    r"|q/(?P<q2>\d+)"
    r"|a/(?P<a>\d+))"
    r"(?:[/?#][\w?=&#-]*)?"
)
_ANCHOR_RE = re.compile(r"#answer-?(\d+)")


def scan_attribution(file_text: str, index: PostIndex) -> set[str]:
    """Example ids a file explicitly attributes via forum URLs in comments.

    Answer URLs match directly; question URLs match any example from one of
    that question's answers."""
    matched: set[str] = set()
    for comment in tokenize(file_text).comments():
        for m in _URL_RE.finditer(comment.lexeme):
            if not any(m.group("host").endswith(h) for h in ATTRIBUTION_HOSTS):
                continue
            answer = m.group("a") or m.group("qa")
            anchor = _ANCHOR_RE.search(comment.lexeme, m.start())
            if anchor:
                answer = answer or anchor.group(1)
            question = m.group("q") or m.group("q2")
            if answer and answer in index.by_answer:
                matched |= index.by_answer[answer]
            elif question and question in index.by_question:
                matched |= index.by_question[question]
    return matched


def aggregate_stats(
    pairs: list[ClonePair],
    edit_counts: dict[tuple[str, str], int],
    types_per_pair: dict[tuple[str, str], set],
) -> dict:
    """Per-example mean edit counts (average over multiple counterparts) and
    distinct-type frequencies, per dataset label.

    The Adaptation dataset is the attributed subset of the Variation one."""
    by_example: dict[str, list[ClonePair]] = {}
    for pair in pairs:
        by_example.setdefault(pair.example_id, []).append(pair)

    examples_report = {}
    for eid, plist in sorted(by_example.items()):
        counts = [edit_counts[(p.example_id, p.counterpart_id)] for p in plist]
        distinct = set()
        for p in plist:
            distinct |= types_per_pair[(p.example_id, p.counterpart_id)]
        examples_report[eid] = {
            "counterparts": len(plist),
            "mean_edits": sum(counts) / len(counts) if counts else 0.0,
            "distinct_types": sorted(
                t.value if hasattr(t, "value") else str(t) for t in distinct
            ),
        }

    def label_stats(selector) -> dict:
        chosen: dict[str, list[ClonePair]] = {}
        for pair in pairs:
            if selector(pair):
                chosen.setdefault(pair.example_id, []).append(pair)
        freqs: Counter = Counter()
        means = []
        for eid, plist in chosen.items():
            distinct = set()
            for p in plist:
                distinct |= types_per_pair[(p.example_id, p.counterpart_id)]
            for t in distinct:
                freqs[t.value if hasattr(t, "value") else str(t)] += 1
            counts = [edit_counts[(p.example_id, p.counterpart_id)] for p in plist]
            means.append(sum(counts) / len(counts))
        means.sort()
        median = 0.0
        if means:
            mid = len(means) // 2
            median = (
                means[mid]
                if len(means) % 2
                else (means[mid - 1] + means[mid]) / 2
            )
        return {
            "examples": len(chosen),
            "type_frequencies": dict(sorted(freqs.items())),
            "median_mean_edits": median,
        }

    return {
        "examples": examples_report,
        "by_label": {
            "Variation": label_stats(lambda p: True),
            "Adaptation": label_stats(lambda p: p.attributed),
        },
    }


def pairs_to_jsonl(pairs: list[ClonePair]) -> str:
    return "".join(json.dumps(p.to_record(), sort_keys=True) + "\n" for p in pairs)


def pairs_from_jsonl(text: str) -> list[ClonePair]:
    return [
        ClonePair.from_record(json.loads(line))
        for line in text.splitlines()
        if line.strip()
    ]
