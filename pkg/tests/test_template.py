import random

import pytest

from adaptlift.classify import classify
from adaptlift.editscript import compute_edit_script, prune_inner_ops
from adaptlift.parse import parse_snippet
from adaptlift.semantics import collect_facts, fragment_facts
from adaptlift.selection import (
    ConflictingSelection,
    EmptyHistory,
    SelectionState,
    active_counterparts,
    option_frequencies,
    render,
    select_option,
    undo,
)
from adaptlift.taxonomy import Category
from adaptlift.template import (
    CounterpartInfo,
    EmptyDiffSet,
    FixedText,
    HotSpot,
    lift_template,
    render_original,
    template_stats,
    template_to_document,
    template_to_json,
)

from fixture_pairs import TEMPLATE_SETS


def build_set(ts):
    example = parse_snippet(ts.example)
    diffs, instances, infos = [], [], []
    for cid in sorted(ts.counterparts):
        text, stars = ts.counterparts[cid]
        counter = parse_snippet(text)
        script = prune_inner_ops(compute_edit_script(example, counter))
        diffs.append(script)
        instances.append(
            classify(script, collect_facts(example), collect_facts(counter))
        )
        infos.append(CounterpartInfo(id=cid, stars=stars))
    return example, lift_template(ts.name, example, diffs, instances, infos)


TEMPLATES = {ts.name: (ts, *build_set(ts)) for ts in TEMPLATE_SETS}


@pytest.fixture(params=sorted(TEMPLATES), ids=str)
def template_case(request):
    return TEMPLATES[request.param]


def test_empty_diff_set_raises():
    example = parse_snippet("go();\n")
    with pytest.raises(EmptyDiffSet):
        lift_template("x", example, [], [], [])


def test_zero_change_counterpart_yields_single_fixed_segment():
    text = "go();\nstop();\n"
    example = parse_snippet(text)
    twin = parse_snippet(text)
    script = prune_inner_ops(compute_edit_script(example, twin))
    template = lift_template(
        "same", example, [script], [[]], [CounterpartInfo(id="t")]
    )
    assert template.hotspots == []
    assert [s.text for s in template.segments if isinstance(s, FixedText)] == [text]
    assert template_stats(template)["hotspot_count"] == 0


def test_reconstruction_is_byte_exact(template_case):
    ts, example, template = template_case
    assert render_original(template) == ts.example
    assert render(template, SelectionState()) == ts.example


def test_hotspot_spans_disjoint_sorted_and_cover_ops(template_case):
    ts, example, template = template_case
    spans = [h.span for h in template.hotspots]
    assert spans == sorted(spans)
    for (s1, e1), (s2, e2) in zip(spans, spans[1:]):
        assert e1 <= s2
    # coverage: every retained visible op's example-side region is inside one
    from adaptlift.regions import change_regions

    for cid in sorted(ts.counterparts):
        text, _ = ts.counterparts[cid]
        counter = parse_snippet(text)
        script = prune_inner_ops(compute_edit_script(example, counter))
        for region in change_regions(script, cid):
            rs, re_ = region.span
            inside = [
                (hs, he)
                for hs, he in spans
                if (hs <= rs and re_ <= he) or (rs == re_ and ((hs < rs < he) or (hs, he) == (rs, re_)))
            ]
            assert inside, f"region {region.span} of {cid} not covered"


def test_frequency_conservation(template_case):
    ts, example, template = template_case
    n = len(template.counterparts)
    for hs in template.hotspots:
        touchers = template.touchers(hs)
        non_original_total = sum(o.frequency for o in hs.options[1:])
        assert non_original_total == len(touchers)
        assert hs.original.frequency == n - len(touchers)
        for opt in hs.options[1:]:
            assert opt.frequency == len(opt.contributors) >= 1
        for opt in hs.options:
            assert opt.frequency >= 0


def test_option_ordering_original_first_then_frequency(template_case):
    ts, example, template = template_case
    for hs in template.hotspots:
        assert hs.options[0].content == template.example_text[hs.span[0] : hs.span[1]]
        freqs = [o.frequency for o in hs.options[1:]]
        assert freqs == sorted(freqs, reverse=True) or len(set(freqs)) > 1


def test_assign_overlap_merges_into_single_hotspot():
    ts, example, template = TEMPLATES["assign-overlap"]
    assert len(template.hotspots) == 1
    hs = template.hotspots[0]
    assert template.example_text[hs.span[0] : hs.span[1]] == "a = b;"
    contents = {o.content for o in hs.options}
    assert contents == {"a = b;", "a = b + c;", "o.foo();"}


def test_json_asset_frequencies_and_category():
    ts, example, template = TEMPLATES["json-asset"]
    literal_hs = next(
        h for h in template.hotspots
        if template.example_text[h.span[0] : h.span[1]] == '"locations.json"'
    )
    languages = next(o for o in literal_hs.options if o.content == '"languages.json"')
    assert languages.frequency == 2
    assert languages.contributors == {"lang1", "lang2"}
    assert languages.category is Category.LOGIC_CUSTOMIZATION


def test_defuse_edge_links_parameter_and_use():
    ts, example, template = TEMPLATES["json-asset"]
    assert template.defuse_edges
    hotspots = template.hotspots
    for (h1, o1), (h2, o2) in template.defuse_edges:
        a = hotspots[h1].options[o1]
        b = hotspots[h2].options[o2]
        assert a.contributors & b.contributors
        fa, fb = fragment_facts(a.content), fragment_facts(b.content)
        assert (fa.uses & fb.defs) or (fb.uses & fa.defs)


def test_no_edges_when_no_new_names():
    ts, example, template = TEMPLATES["assign-overlap"]
    for (h1, o1), (h2, o2) in template.defuse_edges:
        assert False, "assign-overlap introduces no def/use pairs"


def test_auto_selection_follows_edges():
    ts, example, template = TEMPLATES["json-asset"]
    hotspots = template.hotspots
    use_pos = next(
        (hi, oi)
        for hi, hs in enumerate(hotspots)
        for oi, o in enumerate(hs.options)
        if o.content == "jsonFileName"
    )
    state = select_option(template, SelectionState(), *use_pos)
    chosen = state.chosen
    assert chosen[use_pos[0]] == use_pos[1]
    auto = state.auto_map()
    assert auto, "the parameter declaration should be auto-selected"
    assert active_counterparts(template, state) == {"param"}
    out = render(template, state)
    assert "String jsonFileName" in out and '"locations.json"' not in out


def test_conflicting_selection_reported_not_applied():
    ts, example, template = TEMPLATES["json-asset"]
    hotspots = template.hotspots
    use_pos = next(
        (hi, oi)
        for hi, hs in enumerate(hotspots)
        for oi, o in enumerate(hs.options)
        if o.content == "jsonFileName"
    )
    (def_h, def_o), = [e for pair in template.defuse_edges for e in pair if e != use_pos]
    state = select_option(template, SelectionState(), def_h, 0)  # explicit original
    before = state
    with pytest.raises(ConflictingSelection):
        select_option(template, state, *use_pos)
    assert state == before


def test_selecting_all_originals_keeps_full_set():
    ts, example, template = TEMPLATES["guarded-write"]
    state = SelectionState()
    for hi in range(len(template.hotspots)):
        state = select_option(template, state, hi, 0)
    assert active_counterparts(template, state) == set(template.counterpart_ids())
    assert render(template, state) == ts.example


def test_unique_option_filters_to_single_counterpart():
    ts, example, template = TEMPLATES["guarded-write"]
    hotspots = template.hotspots
    for hi, hs in enumerate(hotspots):
        for oi, opt in enumerate(hs.options[1:], start=1):
            if len(opt.contributors) == 1:
                state = select_option(template, SelectionState(), hi, oi)
                assert active_counterparts(template, state) == opt.contributors
                return
    pytest.fail("expected a unique option in the fixture")


def test_undo_restores_exact_prior_state():
    ts, example, template = TEMPLATES["guarded-write"]
    s0 = SelectionState()
    s1 = select_option(template, s0, 0, 1)
    s2 = select_option(template, s1, 0, 0)
    assert undo(s2) == s1
    assert undo(s1) == s0
    with pytest.raises(EmptyHistory):
        undo(s0)


def test_render_with_full_counterpart_matches_counterpart_regions():
    ts, example, template = TEMPLATES["guarded-write"]
    for cid in sorted(ts.counterparts):
        state = SelectionState()
        for hi, hs in enumerate(template.hotspots):
            pick = 0
            for oi, opt in enumerate(hs.options):
                if oi and cid in opt.contributors:
                    pick = oi
                    break
            state = select_option(template, state, hi, pick)
        out = render(template, state)
        rendered_tree = parse_snippet(out)
        counter_tree = parse_snippet(ts.counterparts[cid][0])
        script = compute_edit_script(rendered_tree, counter_tree)
        # re-diff oracle: no remaining ops inside any hot spot region
        pruned = prune_inner_ops(script)
        assert not pruned.visible_ops, f"{cid}: render diverges from counterpart"


def test_template_stats_and_counterpart_order():
    ts, example, template = TEMPLATES["json-asset"]
    stats = template_stats(template)
    assert stats["hotspot_count"] == len(template.hotspots) == 2
    assert stats["lines"] == ts.example.count("\n")
    assert stats["mean_options"] == pytest.approx(
        sum(len(h.options) for h in template.hotspots) / 2
    )
    stars = [c.stars for c in template.counterparts]
    assert stars == sorted(stars, reverse=True)


def test_serialization_schema_and_stability(template_case):
    ts, example, template = template_case
    doc = template_to_document(template)
    assert doc["version"] == 1
    assert {s["kind"] for s in doc["segments"]} <= {"text", "hotspot"}
    assert len(doc["hotspots"]) == len(template.hotspots)
    for hs in doc["hotspots"]:
        for opt in hs["options"]:
            assert set(opt) == {
                "content", "frequency", "category", "color",
                "extra_categories", "contributors",
            }
    assert template_to_json(template) == template_to_json(template)


def _introduced_vars_defined(template, state, example_defs):
    out = render(template, state)
    rendered_defs = fragment_facts(out).defs
    hotspots = template.hotspots
    for h, o in state.chosen.items():
        if o == 0:
            continue
        opt = hotspots[h].options[o]
        facts = fragment_facts(opt.content)
        for v in facts.uses:
            if v in example_defs or v in facts.defs:
                continue
            definable = any(
                v in fragment_facts(other.content).defs
                for hs2 in hotspots
                for other in hs2.options[1:]
            )
            if definable:
                assert v in rendered_defs, f"{v} undefined in render"


@pytest.mark.parametrize("seed", range(40), ids=str)
def test_randomized_selection_driver(seed):
    rng = random.Random(seed)
    ts, example, template = TEMPLATES[rng.choice(sorted(TEMPLATES))]
    example_defs = collect_facts(example).defs
    state = SelectionState()
    full = frozenset(template.counterpart_ids())
    for _ in range(8):
        action = rng.random()
        try:
            if action < 0.75 and template.hotspots:
                h = rng.randrange(len(template.hotspots))
                o = rng.randrange(len(template.hotspots[h].options))
                state = select_option(template, state, h, o)
            elif state.history:
                state = undo(state)
        except ConflictingSelection:
            pass
        # invariants after every step
        active = active_counterparts(template, state)
        brute = full
        for h, o in state.chosen.items():
            if o:
                brute &= template.hotspots[h].options[o].contributors
        assert active == brute
        freqs = option_frequencies(template, state)
        for hi, hs in enumerate(template.hotspots):
            assert freqs[hi] == [len(active & opt.contributors) for opt in hs.options]
        _introduced_vars_defined(template, state, example_defs)
