import itertools

import pytest

from adaptlift.corpus import (
    CloneCandidate,
    ClonePair,
    PostIndex,
    clone_similarity,
    dedup_files,
    detect_clones,
    filter_by_timestamp,
    pairs_from_jsonl,
    pairs_to_jsonl,
    scan_attribution,
    aggregate_stats,
)
from adaptlift.demo import write_demo_corpus
from adaptlift.lex import tokenize
from adaptlift.pipeline import build_pairs, link_pairs, load_corpus
from adaptlift.taxonomy import AdaptationType


# --- dedup -------------------------------------------------------------------


def test_dedup_keeps_one_per_identical_group():
    files = [("a", "x();"), ("b", "x();"), ("c", "y();")]
    kept = dedup_files(files)
    assert kept == [("a", "x();"), ("c", "y();")]


def test_dedup_all_distinct_unchanged():
    files = [("a", "1"), ("b", "2"), ("c", "3")]
    assert dedup_files(files) == files


def test_dedup_group_count_matches_bruteforce_oracle():
    texts = ["alpha();", "beta();", "gamma();"]
    files = [(f"f{i}", texts[i % 3]) for i in range(9)]
    kept = dedup_files(files)
    # oracle: pairwise comparison partition
    groups = []
    for fid, text in files:
        for g in groups:
            if g[0][1] == text:
                g.append((fid, text))
                break
        else:
            groups.append([(fid, text)])
    assert len(kept) == len(groups) == 3


# --- similarity ---------------------------------------------------------------


def test_identical_streams_similarity_one():
    s = tokenize("int a = b + c;")
    assert clone_similarity(s, s) == 1.0


def test_disjoint_streams_similarity_zero():
    assert clone_similarity(tokenize("a(b);"), tokenize("x(y);")) == 0.0
    assert clone_similarity(tokenize(""), tokenize("")) == 0.0


def test_crafted_pair_shares_seven_of_max_ten():
    # countable tokens: a b c d e f g h i j vs a b c d e f g x y z
    left = tokenize("a(b, c, d, e, f, g, h, i, j);")
    right = tokenize("a(b, c, d, e, f, g, x, y, z);")
    assert clone_similarity(left, right) == pytest.approx(0.7)


def test_similarity_counts_multiset_duplicates():
    left = tokenize("x(x, x, y);")  # countable: x x x y
    right = tokenize("x(x, z, z);")  # countable: x x z z
    assert clone_similarity(left, right) == pytest.approx(2 / 4)


# --- detection -----------------------------------------------------------------


def _mk_candidates(texts):
    return [
        CloneCandidate(id=f"c{i}", file_id=f"f{i}", span=(0, len(t)), text=t)
        for i, t in enumerate(texts)
    ]


LONG = (
    "int q0 = seed; q0 += 1; report(q0, \"alpha\", 1); report(q0, \"beta\", 2); "
    "int q1 = q0 * 3; report(q1, \"gamma\", 3); int q2 = q1 - q0; "
    "report(q2, \"delta\", 4); int q3 = q2 + q1; report(q3, \"epsilon\", 5); "
    "int q4 = q3 + q2; report(q4, \"zeta\", 6); return q4;"
)


def test_small_examples_never_pair():
    small = "use(a);"
    cands = _mk_candidates([small])
    assert detect_clones([("e", small)], cands, threshold=0.1, min_tokens=50) == []


def test_exact_copy_pairs_with_similarity_one():
    cands = _mk_candidates([LONG])
    pairs = detect_clones([("e", LONG)], cands, threshold=0.7, min_tokens=50)
    assert len(pairs) == 1
    assert pairs[0].similarity == 1.0


def test_index_equals_bruteforce_on_mixed_corpus():
    base = LONG
    variants = [
        base,
        base.replace("q0", "w0"),
        base.replace("report", "emit"),
        base.replace("1", "9"),
        "void tiny() { }",
        base.replace("int", "long"),
    ]
    cands = _mk_candidates(variants * 3)
    examples = [("e0", base), ("e1", base.replace("q1", "r1"))]
    for threshold in (0.5, 0.7, 0.9):
        fast = detect_clones(examples, cands, threshold=threshold, min_tokens=50)
        slow = detect_clones(
            examples, cands, threshold=threshold, min_tokens=50, brute_force=True
        )
        assert fast == slow


def test_threshold_monotonicity():
    cands = _mk_candidates([LONG, LONG.replace("report", "emit")])
    examples = [("e", LONG)]
    sets = []
    for threshold in (0.5, 0.7, 0.9):
        pairs = detect_clones(examples, cands, threshold=threshold, min_tokens=10)
        sets.append({(p.example_id, p.counterpart_id) for p in pairs})
    assert sets[0] >= sets[1] >= sets[2]


# --- timestamps ------------------------------------------------------------------


def _pair(et, ct):
    return ClonePair(
        example_id="e", counterpart_id="c", similarity=1.0,
        example_time=et, counterpart_time=ct,
    )


def test_counterpart_earlier_excluded():
    kept, problems = filter_by_timestamp([_pair("2012-01-01T00:00:00Z", "2011-01-01T00:00:00Z")])
    assert kept == [] and problems == []


def test_counterpart_later_retained():
    kept, _ = filter_by_timestamp([_pair("2012-01-01T00:00:00Z", "2013-01-01T00:00:00Z")])
    assert len(kept) == 1


def test_equal_timestamps_excluded():
    kept, problems = filter_by_timestamp([_pair("2012-01-01T00:00:00Z", "2012-01-01T00:00:00Z")])
    assert kept == [] and problems == []


def test_missing_timestamp_skipped_and_reported():
    kept, problems = filter_by_timestamp([_pair(None, "2013-01-01T00:00:00Z")])
    assert kept == []
    assert len(problems) == 1 and problems[0].missing == "example_time"


# --- attribution ------------------------------------------------------------------


INDEX = PostIndex.from_examples(
    [
        {"id": "ex1", "post_id": 433392, "answer_id": 433421},
        {"id": "ex2", "post_id": 9855330, "answer_id": 9855338},
    ]
)


def test_answer_url_matches_directly():
    text = "// copied from https://stackoverflow.com/a/9855338\nclass A { }"
    assert scan_attribution(text, INDEX) == {"ex2"}


def test_question_url_matches_any_indexed_answer():
    text = "/* https://stackoverflow.com/questions/433392/read-assets */ class B { }"
    assert scan_attribution(text, INDEX) == {"ex1"}


def test_unrelated_url_matches_nothing():
    text = "// https://stackoverflow.com/a/777777 unrelated\nclass C { }"
    assert scan_attribution(text, INDEX) == set()


def test_url_outside_comment_is_ignored():
    text = 'String s = "https://stackoverflow.com/a/9855338";'
    assert scan_attribution(text, INDEX) == set()


def test_question_slug_answer_id_url():
    text = "// https://stackoverflow.com/questions/9855330/how-to-hexify/9855338\nclass D { }"
    assert scan_attribution(text, INDEX) == {"ex2"}


# --- aggregation ------------------------------------------------------------------


def test_mean_edits_averages_counterparts():
    pairs = [
        ClonePair("e", "c1", 1.0, attributed=False),
        ClonePair("e", "c2", 1.0, attributed=False),
    ]
    counts = {("e", "c1"): 10, ("e", "c2"): 20}
    types = {("e", "c1"): set(), ("e", "c2"): set()}
    report = aggregate_stats(pairs, counts, types)
    assert report["examples"]["e"]["mean_edits"] == 15


def test_empty_corpus_empty_report():
    report = aggregate_stats([], {}, {})
    assert report["examples"] == {}
    assert report["by_label"]["Variation"]["examples"] == 0


def test_distinct_type_frequencies_use_union_not_sum():
    pairs = [
        ClonePair("e", "c1", 1.0, attributed=True),
        ClonePair("e", "c2", 1.0, attributed=False),
        ClonePair("f", "c3", 1.0, attributed=False),
    ]
    counts = {("e", "c1"): 1, ("e", "c2"): 3, ("f", "c3"): 5}
    types = {
        ("e", "c1"): {AdaptationType.RENAME},
        ("e", "c2"): {AdaptationType.RENAME},
        ("f", "c3"): {AdaptationType.RENAME, AdaptationType.UPDATE_CONSTANT},
    }
    report = aggregate_stats(pairs, counts, types)
    variation = report["by_label"]["Variation"]["type_frequencies"]
    # two examples mention Rename (deduplicated within e), one UpdateConstant
    assert variation == {"Rename": 2, "UpdateConstant": 1}
    adaptation = report["by_label"]["Adaptation"]["type_frequencies"]
    assert adaptation == {"Rename": 1}


def test_adaptation_subset_of_variation(tmp_path):
    corpus = load_corpus(write_demo_corpus(tmp_path / "demo"))
    pairs, _ = link_pairs(corpus, build_pairs(corpus, 0.7, 50))
    adaptation = {(p.example_id, p.counterpart_id) for p in pairs if p.attributed}
    variation = {(p.example_id, p.counterpart_id) for p in pairs}
    assert adaptation <= variation and variation


def test_pairs_jsonl_roundtrip(tmp_path):
    corpus = load_corpus(write_demo_corpus(tmp_path / "demo"))
    pairs, _ = link_pairs(corpus, build_pairs(corpus, 0.7, 50))
    assert pairs_from_jsonl(pairs_to_jsonl(pairs)) == pairs


def test_demo_pipeline_boundary_behavior(tmp_path):
    corpus = load_corpus(write_demo_corpus(tmp_path / "demo"))
    raw = build_pairs(corpus, 0.7, 50)
    raw_ids = {(p.example_id, p.counterpart_file) for p in raw}
    # the short example never pairs; the duplicate file gh5 is deduplicated
    assert not any(e == "ex-short" for e, _ in raw_ids)
    assert not any(f == "gh5" for _, f in raw_ids)
    kept, _ = link_pairs(corpus, raw)
    kept_files = {p.counterpart_file for p in kept}
    assert "gh2" not in kept_files  # earlier than the example
    assert "gh4" not in kept_files  # equal timestamp
    assert {p.counterpart_file for p in kept if p.attributed} == {"gh1", "gh3"}
