import json

import pytest

from adaptlift.cli import main
from adaptlift.demo import write_demo_corpus


@pytest.fixture()
def demo_dir(tmp_path):
    return write_demo_corpus(tmp_path / "demo")


def test_pipeline_subcommands(demo_dir, tmp_path, capsys):
    out = tmp_path

    assert main(["dedup", "--corpus-dir", str(demo_dir), "--out", str(out / "dedup.json")]) == 0
    doc = json.loads((out / "dedup.json").read_text())
    assert doc["distinct"] < doc["total"]
    assert "gh5" not in doc["kept"]

    assert main([
        "clones", "--corpus-dir", str(demo_dir),
        "--threshold", "0.7", "--min-tokens", "50",
        "--out", str(out / "pairs.jsonl"),
    ]) == 0
    raw_lines = (out / "pairs.jsonl").read_text().splitlines()
    assert raw_lines

    # brute-force flag must agree with the indexed run
    assert main([
        "clones", "--corpus-dir", str(demo_dir), "--brute-force",
        "--threshold", "0.7", "--min-tokens", "50",
        "--out", str(out / "pairs-bf.jsonl"),
    ]) == 0
    assert (out / "pairs.jsonl").read_text() == (out / "pairs-bf.jsonl").read_text()

    assert main([
        "link", "--corpus-dir", str(demo_dir),
        "--pairs", str(out / "pairs.jsonl"),
        "--out", str(out / "linked.jsonl"),
    ]) == 0
    linked = [json.loads(l) for l in (out / "linked.jsonl").read_text().splitlines()]
    assert any(rec["attributed"] for rec in linked)
    assert all(rec["label"] in ("Adaptation", "Variation") for rec in linked)

    assert main([
        "stats", "--corpus-dir", str(demo_dir),
        "--pairs", str(out / "linked.jsonl"),
        "--out", str(out / "stats.json"),
    ]) == 0
    report = json.loads((out / "stats.json").read_text())
    assert set(report["by_label"]) == {"Variation", "Adaptation"}
    assert report["examples"]

    example_id = linked[0]["example_id"]
    assert main([
        "template", "--corpus-dir", str(demo_dir),
        "--pairs", str(out / "linked.jsonl"),
        "--example-id", example_id,
        "--out", str(out / "template.json"),
    ]) == 0
    tdoc = json.loads((out / "template.json").read_text())
    assert tdoc["version"] == 1 and tdoc["example_id"] == example_id
