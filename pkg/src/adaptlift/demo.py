"""Deterministic demo corpus and synthetic clone benchmark generators.

The demo corpus is a small linked dataset (examples, counterpart files,
metadata with timestamps/stars/attribution) that exercises the whole
pipeline; the benchmark generator produces a seeded 200-file corpus for
clone-detection verification.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from .lex import measured_token_count, tokenize

EX_HEX = """\
MessageDigest digest = MessageDigest.getInstance("SHA-256");
byte[] bytes = digest.digest(input.getBytes("UTF-8"));
StringBuilder sb = new StringBuilder();
for (int i = 0; i < bytes.length; i++) {
    String hex = Integer.toHexString(0xff & bytes[i]);
    if (hex.length() == 1) {
        sb.append("0");
    }
    sb.append(hex);
}
String result = sb.toString();
return result.toUpperCase();
"""

EX_JSON = """\
class AssetReader {
  String readJson() {
    StringBuilder sb = new StringBuilder();
    InputStream stream = assets.open("locations.json");
    BufferedReader reader = new BufferedReader(new InputStreamReader(stream, "UTF-8"));
    String line = reader.readLine();
    while (line != null) {
      sb.append(line);
      sb.append("\\n");
      line = reader.readLine();
    }
    reader.close();
    stream.close();
    JSONObject json = new JSONObject(sb.toString());
    return json.toString();
  }
}
"""

EX_SHORT = """\
int sum = a + b;
return sum;
"""

GH1 = """\
class HexCodec {
  // adapted from https://stackoverflow.com/a/9855338
  static String hexify(String input) {
    MessageDigest digest = MessageDigest.getInstance("SHA-256");
    byte[] bytes = digest.digest(input.getBytes("UTF-8"));
    StringBuilder builder = new StringBuilder();
    for (int i = 0; i < bytes.length; i++) {
        String hex = Integer.toHexString(0xff & bytes[i]);
        if (hex.length() == 1) {
            builder.append("0");
        }
        builder.append(hex);
    }
    String result = builder.toString();
    return result.toUpperCase();
  }
}
"""

GH2 = """\
class EarlyHex {
  static String hexify(String input) {
    MessageDigest digest = MessageDigest.getInstance("SHA-256");
    byte[] bytes = digest.digest(input.getBytes("UTF-8"));
    StringBuilder sb = new StringBuilder();
    for (int i = 0; i < bytes.length; i++) {
        String hex = Integer.toHexString(0xff & bytes[i]);
        if (hex.length() == 1) {
            sb.append("0");
        }
        sb.append(hex);
    }
    String result = sb.toString();
    return result.toUpperCase();
  }
}
"""

GH3 = """\
class LanguageAssets {
  // see https://stackoverflow.com/questions/433392/how-to-read-assets
  String readJson() {
    StringBuilder sb = new StringBuilder();
    InputStream stream = assets.open("languages.json");
    BufferedReader reader = new BufferedReader(new InputStreamReader(stream, "UTF-8"));
    String line = reader.readLine();
    while (line != null) {
      sb.append(line);
      sb.append("\\n");
      line = reader.readLine();
    }
    reader.close();
    stream.close();
    JSONObject json = new JSONObject(sb.toString());
    return json.toString();
  }
}
"""

GH4 = """\
class SameTimeAssets {
  String readJson() {
    StringBuilder sb = new StringBuilder();
    InputStream stream = assets.open("locations.json");
    BufferedReader reader = new BufferedReader(new InputStreamReader(stream, "UTF-8"));
    String line = reader.readLine();
    while (line != null) {
      sb.append(line);
      sb.append("\\n");
      line = reader.readLine();
    }
    reader.close();
    stream.close();
    JSONObject json = new JSONObject(sb.toString());
    return json.toString();
  }
}
"""

GH6 = """\
class Unrelated {
  // https://stackoverflow.com/a/999999 is about something else
  void tick(long interval) {
    while (running) {
      sleep(interval);
      counter.increment();
    }
  }
}
"""

_METADATA = [
    {
        "id": "ex-hex",
        "role": "example",
        "post_id": 9855330,
        "answer_id": 9855338,
        "vote_score": 412,
        "created_at": "2012-03-25T10:00:00Z",
    },
    {
        "id": "ex-json",
        "role": "example",
        "post_id": 433392,
        "answer_id": 433421,
        "vote_score": 96,
        "created_at": "2009-01-11T09:30:00Z",
    },
    {
        "id": "ex-short",
        "role": "example",
        "post_id": 111,
        "answer_id": 112,
        "vote_score": 3,
        "created_at": "2010-06-01T00:00:00Z",
    },
    {
        "id": "gh1",
        "role": "counterpart",
        "repo": "acme/hex-tools",
        "path": "src/HexCodec.java",
        "created_at": "2014-07-04T12:00:00Z",
        "stars": 321,
        "contributors": 12,
        "watches": 40,
    },
    {
        "id": "gh2",
        "role": "counterpart",
        "repo": "old/early-hex",
        "path": "src/EarlyHex.java",
        "created_at": "2011-01-01T00:00:00Z",
        "stars": 77,
        "contributors": 4,
        "watches": 9,
    },
    {
        "id": "gh3",
        "role": "counterpart",
        "repo": "polyglot/assets",
        "path": "app/LanguageAssets.java",
        "created_at": "2015-02-18T08:45:00Z",
        "stars": 58,
        "contributors": 7,
        "watches": 11,
    },
    {
        "id": "gh4",
        "role": "counterpart",
        "repo": "mirror/assets",
        "path": "app/SameTimeAssets.java",
        "created_at": "2009-01-11T09:30:00Z",
        "stars": 5,
        "contributors": 1,
        "watches": 1,
    },
    {
        "id": "gh5",
        "role": "counterpart",
        "repo": "fork/hex-tools",
        "path": "src/HexCodec.java",
        "created_at": "2016-09-01T16:20:00Z",
        "stars": 12,
        "contributors": 2,
        "watches": 3,
    },
    {
        "id": "gh6",
        "role": "counterpart",
        "repo": "misc/ticker",
        "path": "src/Unrelated.java",
        "created_at": "2017-03-03T03:03:03Z",
        "stars": 9,
        "contributors": 1,
        "watches": 2,
    },
]

_TEXTS = {
    "ex-hex": EX_HEX,
    "ex-json": EX_JSON,
    "ex-short": EX_SHORT,
    "gh1": GH1,
    "gh2": GH2,
    "gh3": GH3,
    "gh4": GH4,
    "gh5": GH1,  # byte-identical duplicate of gh1 (dedup fodder)
    "gh6": GH6,
}


def write_demo_corpus(root: Path | str) -> Path:
    root = Path(root)
    (root / "snippets").mkdir(parents=True, exist_ok=True)
    with open(root / "metadata.jsonl", "w") as fh:
        for rec in _METADATA:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    for sid, text in _TEXTS.items():
        (root / "snippets" / f"{sid}.java").write_text(text)
    # sanity: the long examples clear the default size gate, the short one not
    assert measured_token_count(tokenize(EX_HEX)) >= 50
    assert measured_token_count(tokenize(EX_JSON)) >= 50
    assert measured_token_count(tokenize(EX_SHORT)) < 50
    return root


# --- synthetic clone benchmark ------------------------------------------------

_BENCH_BODIES = [
    """byte[] bytes = digest.digest(input.getBytes());
StringBuilder {sb} = new StringBuilder();
for (int i = 0; i < bytes.length; i++) {{
    String hex = Integer.toHexString(0xff & bytes[i]);
    if (hex.length() == {w}) {{
        {sb}.append("0");
    }}
    {sb}.append(hex);
}}
String {res} = {sb}.toString();
return {res}.toUpperCase();""",
    """StringBuilder {sb} = new StringBuilder();
BufferedReader {rd} = new BufferedReader(new InputStreamReader(assets.open("{file}")));
String {line} = {rd}.readLine();
while ({line} != null) {{
    {sb}.append({line});
    {sb}.append("\\n");
    {line} = {rd}.readLine();
}}
{rd}.close();
return {sb}.toString();""",
    """double lat1 = Math.toRadians({a}.getLatitude());
double lat2 = Math.toRadians({b}.getLatitude());
double dLat = lat2 - lat1;
double dLon = Math.toRadians({b}.getLongitude() - {a}.getLongitude());
double h = Math.sin(dLat / 2) * Math.sin(dLat / 2)
    + Math.cos(lat1) * Math.cos(lat2) * Math.sin(dLon / 2) * Math.sin(dLon / 2);
double c = 2 * Math.atan2(Math.sqrt(h), Math.sqrt(1 - h));
return {radius} * c * {scale};""",
    """HttpURLConnection {conn} = (HttpURLConnection) url.openConnection();
{conn}.setRequestMethod("{verb}");
{conn}.setConnectTimeout({timeout});
{conn}.setReadTimeout({timeout});
InputStream {in} = {conn}.getInputStream();
byte[] {buf} = new byte[{size}];
int n = {in}.read({buf});
while (n > 0) {{
    output.write({buf}, 0, n);
    n = {in}.read({buf});
}}
{in}.close();
output.flush();""",
]

_NAMES = {
    "sb": ["sb", "builder", "out", "acc"],
    "res": ["result", "text", "value"],
    "rd": ["reader", "br", "input"],
    "line": ["line", "row", "cur"],
    "a": ["p1", "from", "start"],
    "b": ["p2", "to", "end"],
    "radius": ["EARTH_RADIUS", "6371", "R"],
    "scale": ["1000", "KM", "factor"],
    "conn": ["conn", "connection", "http"],
    "verb": ["GET", "POST"],
    "timeout": ["1000", "5000", "15000"],
    "in": ["in", "stream", "body"],
    "buf": ["buf", "buffer", "chunk"],
    "size": ["1024", "4096", "8192"],
    "file": ["locations.json", "languages.json", "config.json"],
    "w": ["1", "2"],
}


def _instantiate(rng: random.Random, body: str) -> str:
    import string

    fields = {name for _, name, _, _ in string.Formatter().parse(body) if name}
    values = {name: rng.choice(_NAMES[name]) for name in fields}
    return body.format(**values)


def write_clone_benchmark(
    root: Path | str, files: int = 200, examples: int = 10, seed: int = 7
) -> Path:
    """A seeded corpus: counterpart files are template instantiations (some
    near-identical, some unrelated), examples are instantiations of the same
    templates; several files are exact duplicates and a few are tiny."""
    rng = random.Random(seed)
    root = Path(root)
    (root / "snippets").mkdir(parents=True, exist_ok=True)
    records = []

    texts: dict[str, str] = {}
    for k in range(examples):
        body = _BENCH_BODIES[k % len(_BENCH_BODIES)]
        texts[f"ex{k:03d}"] = _instantiate(rng, body)
        records.append(
            {
                "id": f"ex{k:03d}",
                "role": "example",
                "post_id": 1000 + k,
                "answer_id": 2000 + k,
                "created_at": "2012-01-01T00:00:00Z",
            }
        )

    produced = 0
    while produced < files:
        fid = f"gh{produced:03d}"
        roll = rng.random()
        if roll < 0.1 and produced > 0:
            # exact duplicate of an earlier file
            texts[fid] = texts[f"gh{rng.randrange(produced):03d}"]
        elif roll < 0.2:
            texts[fid] = (
                "class Tiny%d {\n  int get() {\n    return %d;\n  }\n}\n"
                % (produced, produced)
            )
        else:
            body = _instantiate(rng, rng.choice(_BENCH_BODIES))
            indented = "\n".join("    " + ln for ln in body.splitlines())
            texts[fid] = (
                f"class C{produced} {{\n  Object run{produced}(Args args) {{\n"
                f"{indented}\n  }}\n}}\n"
            )
        records.append(
            {
                "id": fid,
                "role": "counterpart",
                "repo": f"bench/r{produced}",
                "created_at": "2015-01-01T00:00:00Z",
                "stars": produced % 40,
            }
        )
        produced += 1

    with open(root / "metadata.jsonl", "w") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    for sid, text in texts.items():
        (root / "snippets" / f"{sid}.java").write_text(text)
    return root
