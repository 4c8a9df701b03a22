"""Template lifting: fixed text plus hot spots with frequency-annotated,
category-colored options, and def-use correlation edges between options.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

from .classify import AdaptationInstance
from .editscript import EditScript
from .regions import ChangeRegion, Span, change_regions
from .semantics import collect_facts, fragment_facts
from .taxonomy import CATEGORY_COLORS, TABLE_ORDER, Category
from .tree import SyntaxTree


class EmptyDiffSet(Exception):
    pass


@dataclass(frozen=True)
class CounterpartInfo:
    id: str
    repo: Optional[str] = None
    url: Optional[str] = None
    stars: int = 0
    contributors: int = 0
    watches: int = 0


@dataclass
class Option:
    content: str
    frequency: int
    contributors: frozenset[str]
    category: Optional[Category] = None  # None for the original option
    extra_categories: tuple[Category, ...] = ()

    @property
    def color(self) -> Optional[str]:
        return None if self.category is None else CATEGORY_COLORS[self.category]


@dataclass
class HotSpot:
    span: Span
    options: list[Option]

    @property
    def original(self) -> Option:
        return self.options[0]


@dataclass(frozen=True)
class FixedText:
    text: str


Segment = Union[FixedText, HotSpot]

# an edge endpoint is (hotspot index, option index)
Edge = tuple[tuple[int, int], tuple[int, int]]


@dataclass
class LiftedTemplate:
    example_id: str
    example_text: str
    segments: list[Segment]
    defuse_edges: frozenset[Edge]
    counterparts: list[CounterpartInfo]

    @property
    def hotspots(self) -> list[HotSpot]:
        return [s for s in self.segments if isinstance(s, HotSpot)]

    def counterpart_ids(self) -> list[str]:
        return [c.id for c in self.counterparts]

    def touchers(self, hotspot: HotSpot) -> frozenset[str]:
        out: set[str] = set()
        for opt in hotspot.options[1:]:
            out |= opt.contributors
        return frozenset(out)


def _merge_hotspot_intervals(intervals: list[Span]) -> list[Span]:
    """Fixed-point merge: identical regions group; overlapping regions merge
    into the enclosing interval (zero-length regions only merge when strictly
    inside or identical)."""
    spans = sorted(set(intervals))
    changed = True
    while changed:
        changed = False
        out: list[Span] = []
        for span in spans:
            if out:
                cs, ce = out[-1]
                s, e = span
                same = (s, e) == (cs, ce)
                overlap = s < ce and e > cs
                zero_inside = s == e and cs < s < ce
                covers_zero = cs == ce and s < cs < e
                if same or overlap or zero_inside or covers_zero:
                    out[-1] = (min(cs, s), max(ce, e))
                    changed = changed or out[-1] != (cs, ce) or not same
                    continue
            out.append(span)
        if out == spans:
            break
        spans = out
    return spans


def _containing(intervals: list[Span], span: Span) -> Span:
    s, e = span
    for hs, he in intervals:
        if (hs, he) == (s, e):
            return (hs, he)
        if s == e and hs < s < he:
            return (hs, he)
        if s != e and hs <= s and e <= he:
            return (hs, he)
    raise AssertionError(f"region {span} not covered by any hot spot")


def _splice(text: str, base: Span, regions: list[ChangeRegion]) -> str:
    s, e = base
    out = []
    pos = s
    for region in sorted(regions, key=lambda r: r.span):
        rs, re_ = region.span
        out.append(text[pos:rs])
        out.append(region.replacement)
        pos = re_
    out.append(text[pos:e])
    return "".join(out)


def _dominant_category(instances: list[AdaptationInstance]) -> tuple[Optional[Category], tuple[Category, ...]]:
    if not instances:
        return None, ()

    def key(inst: AdaptationInstance):
        size = inst.example_span[1] - inst.example_span[0]
        rule = len(TABLE_ORDER) if inst.type is None else TABLE_ORDER.index(inst.type)
        return (-size, rule)

    ordered = sorted(instances, key=key)
    main = ordered[0].category
    extras = tuple(
        dict.fromkeys(i.category for i in ordered[1:] if i.category != main)
    )
    return main, extras


def lift_template(
    example_id: str,
    example: SyntaxTree,
    diffs: list[EditScript],
    instances_per_diff: list[list[AdaptationInstance]],
    counterparts: list[CounterpartInfo],
) -> LiftedTemplate:
    """Group change regions across counterparts into hot spots and render the
    options each counterpart contributes.

    `diffs` must be pruned scripts computed against `example`. Raises
    EmptyDiffSet when no diffs are supplied; all-identical diffs yield a
    template with zero hot spots.
    """
    if not diffs:
        raise EmptyDiffSet("no counterpart diffs supplied")
    assert len(diffs) == len(instances_per_diff) == len(counterparts)

    text = example.text
    by_counterpart: dict[str, list[ChangeRegion]] = {}
    for script, instances, info in zip(diffs, instances_per_diff, counterparts):
        assert script.source is example, "diff computed against a different example"
        by_counterpart[info.id] = change_regions(script, info.id, instances)

    all_spans = [r.span for regions in by_counterpart.values() for r in regions]
    hot_intervals = _merge_hotspot_intervals(all_spans)

    # per hot spot, per counterpart: contributing regions
    assignment: dict[Span, dict[str, list[ChangeRegion]]] = {
        span: {} for span in hot_intervals
    }
    for cid, regions in by_counterpart.items():
        for region in regions:
            home = _containing(hot_intervals, region.span)
            assignment[home].setdefault(cid, []).append(region)

    n = len(counterparts)
    order = {info.id: k for k, info in enumerate(counterparts)}
    stars = {info.id: info.stars for info in counterparts}

    segments: list[Segment] = []
    pos = 0
    for span in hot_intervals:
        hs, he = span
        if hs > pos:
            segments.append(FixedText(text[pos:hs]))
        original = text[hs:he]
        per_content: dict[str, dict] = {}
        for cid, regions in sorted(assignment[span].items(), key=lambda kv: order[kv[0]]):
            content = _splice(text, span, regions)
            if content == original:
                continue
            slot = per_content.setdefault(
                content, {"contributors": set(), "instances": []}
            )
            slot["contributors"].add(cid)
            for region in regions:
                slot["instances"].extend(region.instances)
        touchers = set()
        for slot in per_content.values():
            touchers |= slot["contributors"]
        options = [
            Option(
                content=original,
                frequency=n - len(touchers),
                contributors=frozenset(
                    info.id for info in counterparts if info.id not in touchers
                ),
            )
        ]
        ranked = []
        for content, slot in per_content.items():
            main, extras = _dominant_category(slot["instances"])
            ranked.append(
                Option(
                    content=content,
                    frequency=len(slot["contributors"]),
                    contributors=frozenset(slot["contributors"]),
                    category=main or Category.MISCELLANEOUS,
                    extra_categories=extras,
                )
            )
        ranked.sort(
            key=lambda o: (
                -o.frequency,
                -max((stars[c] for c in o.contributors), default=0),
                o.content,
            )
        )
        options.extend(ranked)
        segments.append(HotSpot(span=span, options=options))
        pos = he
    if pos < len(text) or not segments:
        segments.append(FixedText(text[pos:]))

    ordered_counterparts = sorted(
        counterparts, key=lambda c: (-c.stars, c.id)
    )
    template = LiftedTemplate(
        example_id=example_id,
        example_text=text,
        segments=segments,
        defuse_edges=frozenset(),
        counterparts=ordered_counterparts,
    )
    rebuilt = render_original(template)
    assert rebuilt == text, "template does not reconstruct the example text"
    template.defuse_edges = build_defuse_edges(template, example)
    return template


def render_original(template: LiftedTemplate) -> str:
    out = []
    for seg in template.segments:
        if isinstance(seg, FixedText):
            out.append(seg.text)
        else:
            out.append(seg.original.content)
    return "".join(out)


def build_defuse_edges(template: LiftedTemplate, example: SyntaxTree) -> frozenset[Edge]:
    """Correlate options: an option using a variable links to the option of
    the same counterpart that defines it, when the example itself leaves the
    variable undefined."""
    example_defs = collect_facts(example).defs
    hotspots = template.hotspots
    facts_cache: dict[str, object] = {}

    def facts_of(content: str):
        if content not in facts_cache:
            facts_cache[content] = fragment_facts(content)
        return facts_cache[content]

    edges: set[Edge] = set()
    for hi, hs in enumerate(hotspots):
        for oi, opt in enumerate(hs.options):
            if oi == 0:
                continue
            f_use = facts_of(opt.content)
            wanted = {
                v for v in f_use.uses if v not in example_defs and v not in f_use.defs
            }
            if not wanted:
                continue
            for hj, hs2 in enumerate(hotspots):
                if hj == hi:
                    continue
                for oj, opt2 in enumerate(hs2.options):
                    if oj == 0 or not (opt.contributors & opt2.contributors):
                        continue
                    f_def = facts_of(opt2.content)
                    if wanted & f_def.defs:
                        a, b = (hi, oi), (hj, oj)
                        edges.add((a, b) if a <= b else (b, a))
    return frozenset(edges)


def template_stats(template: LiftedTemplate) -> dict:
    hotspots = template.hotspots
    lines = template.example_text.count("\n") + (
        0 if template.example_text.endswith("\n") or not template.example_text else 1
    )
    mean_options = (
        sum(len(h.options) for h in hotspots) / len(hotspots) if hotspots else 0.0
    )
    return {
        "lines": lines,
        "hotspot_count": len(hotspots),
        "mean_options": mean_options,
    }


def template_to_document(template: LiftedTemplate) -> dict:
    segments = []
    hotspot_index = 0
    for seg in template.segments:
        if isinstance(seg, FixedText):
            segments.append({"kind": "text", "text": seg.text})
        else:
            segments.append({"kind": "hotspot", "hotspot": hotspot_index})
            hotspot_index += 1
    hotspots = []
    for hs in template.hotspots:
        hotspots.append(
            {
                "span": list(hs.span),
                "options": [
                    {
                        "content": o.content,
                        "frequency": o.frequency,
                        "category": None if o.category is None else o.category.value,
                        "color": o.color,
                        "extra_categories": [c.value for c in o.extra_categories],
                        "contributors": sorted(o.contributors),
                    }
                    for o in hs.options
                ],
            }
        )
    return {
        "version": 1,
        "example_id": template.example_id,
        "segments": segments,
        "hotspots": hotspots,
        "edges": sorted(
            [[list(e[0]), list(e[1])] for e in template.defuse_edges]
        ),
        "counterparts": [
            {
                "id": c.id,
                "repo": c.repo,
                "url": c.url,
                "stars": c.stars,
                "contributors": c.contributors,
                "watches": c.watches,
            }
            for c in template.counterparts
        ],
    }


def template_to_json(template: LiftedTemplate) -> str:
    return json.dumps(template_to_document(template), sort_keys=True, indent=2) + "\n"
