from collections import Counter

import pytest

from adaptlift.classify import classify, distinct_types, instances_to_json
from adaptlift.editscript import compute_edit_script, prune_inner_ops
from adaptlift.parse import parse_snippet
from adaptlift.semantics import collect_facts
from adaptlift.taxonomy import (
    TABLE_ORDER,
    TYPE_TO_CATEGORY,
    AdaptationType,
    Category,
)
from adaptlift.tree import NODE_LABELS

from fixture_pairs import PAIRS


def classify_pair(example: str, counterpart: str, **kw):
    a, b = parse_snippet(example), parse_snippet(counterpart)
    script = prune_inner_ops(compute_edit_script(a, b))
    return classify(script, collect_facts(a), collect_facts(b), **kw)


def type_counts(instances) -> Counter:
    return Counter(i.type_name for i in instances if not i.out_of_taxonomy)


def test_taxonomy_is_complete_and_consistent():
    assert len(AdaptationType) == 24
    assert len(Category) == 6
    assert len(TABLE_ORDER) == 24
    assert set(TYPE_TO_CATEGORY) == set(AdaptationType)


def test_rule_referenced_labels_exist_in_vocabulary():
    referenced = {
        "IfStatement", "IfCondition", "LoopCondition", "SwitchCase", "Modifier",
        "VariableDeclaration", "MethodDeclaration", "MethodInvocation",
        "TryStatement", "CatchClause", "FinallyBlock", "Type", "SimpleType",
        "Literal", "Name", "Block", "Annotation", "Comment",
    }
    assert referenced <= NODE_LABELS


@pytest.mark.parametrize("pair", PAIRS, ids=lambda p: p.name)
def test_fixture_pair_matches_hand_labels(pair):
    instances = classify_pair(pair.example, pair.counterpart)
    assert type_counts(instances) == Counter(pair.gold), pair.note


# one positive and one near-miss negative per rule, straight from the corpus
_POSITIVE = {
    "AddConditional": "add-conditional-pos",
    "InsertFinalModifier": "insert-final-pos",
    "HandleNewExceptionType": "handle-exception-pos-try",
    "CleanUpResources": "cleanup-pos",
    "DeclareUndeclaredVariable": "declare-undeclared-pos",
    "SpecifyInvocationTarget": "specify-target-pos-mxbean",
    "RemoveUndeclared": "remove-undeclared-pos-var",
    "InsertDeleteTryCatch": "trycatch-delete-pos",
    "InsertDeleteThrown": "thrown-pos-insert",
    "UpdateExceptionType": "update-exception-pos",
    "ChangeCatchBlock": "catch-block-pos-rich",
    "ChangeFinallyBlock": "finally-pos",
    "ChangeMethodCall": "method-call-pos-arg",
    "UpdateConstant": "update-constant-pos-asset",
    "ChangeConditionalExpr": "conditional-pos-while",
    "ChangeVariableType": "var-type-pos-stringbuilder",
    "Rename": "rename-pos-pure",
    "ReplaceConstantWithVariable": "method-call-pos-arg",
    "InlineField": "inline-field-pos-buffer",
    "ChangeAccessModifier": "access-modifier-pos",
    "ChangeLogStatement": "log-pos-insert",
    "StyleReformat": "style-pos-braces",
    "ChangeAnnotation": "annotation-pos",
    "ChangeComment": "comment-pos",
}

_NEGATIVE = {
    "AddConditional": "add-conditional-neg-loop",
    "InsertFinalModifier": "insert-final-neg-static",
    "HandleNewExceptionType": "handle-exception-neg-same-type",
    "CleanUpResources": "cleanup-neg-local-in-so",
    "DeclareUndeclaredVariable": "declare-undeclared-neg-unused",
    "SpecifyInvocationTarget": "specify-target-neg-both-instance",
    "RemoveUndeclared": "remove-undeclared-neg-defined",
    "InsertDeleteTryCatch": "trycatch-neg-synchronized",
    "InsertDeleteThrown": "thrown-neg-throwable",
    "UpdateExceptionType": "update-exception-neg-throwable",
    "ChangeCatchBlock": "finally-pos",
    "ChangeFinallyBlock": "finally-neg-catch-change",
    "ChangeMethodCall": "method-call-neg-operator",
    "UpdateConstant": "update-constant-neg-to-name",
    "ChangeConditionalExpr": "conditional-neg-body",
    "ChangeVariableType": "var-type-neg-receiver-rename",
    "Rename": "rename-neg-delete",
    "ReplaceConstantWithVariable": "rcwv-neg-index-mismatch",
    "InlineField": "inline-field-neg-whole-stmt",
    "ChangeAccessModifier": "access-modifier-neg-final-sync",
    "ChangeLogStatement": "log-neg-other-method",
    "StyleReformat": "style-neg-content-changed",
    "ChangeAnnotation": "annotation-neg-modifier",
    "ChangeComment": "comment-neg-code-change",
}

_BY_NAME = {p.name: p for p in PAIRS}


@pytest.mark.parametrize("type_name", sorted(_POSITIVE), ids=str)
def test_every_rule_has_a_firing_positive(type_name):
    pair = _BY_NAME[_POSITIVE[type_name]]
    counts = type_counts(classify_pair(pair.example, pair.counterpart))
    assert counts[type_name], f"{type_name} should fire on {pair.name}"
    assert pair.gold.get(type_name), "fixture gold must list the rule"


@pytest.mark.parametrize("type_name", sorted(_NEGATIVE), ids=str)
def test_every_rule_has_a_nonfiring_near_miss(type_name):
    pair = _BY_NAME[_NEGATIVE[type_name]]
    counts = type_counts(classify_pair(pair.example, pair.counterpart))
    assert not counts[type_name], f"{type_name} must not fire on {pair.name}"
    assert not pair.gold.get(type_name)


def test_empty_script_yields_no_instances():
    assert classify_pair("go();\n", "go();\n") == []


def test_insert_if_statement_is_add_conditional_code_hardening():
    instances = classify_pair("run();\n", "if (x > 0) { run(); }\n")
    add = [i for i in instances if i.type is AdaptationType.ADD_CONDITIONAL]
    assert len(add) == 1
    assert add[0].category is Category.CODE_HARDENING


def test_rename_on_slider_update():
    instances = classify_pair(
        "JSlider slider = makeSlider();\nuse(slider);\n",
        "JSlider timeSlider = makeSlider();\nuse(timeSlider);\n",
    )
    renames = [i for i in instances if i.type is AdaptationType.RENAME]
    assert len(renames) == 2


def test_match_rules_are_directional():
    fwd = classify_pair("int[] n = new int[]{0};\n", "int[] n = new int[]{0};\n")
    assert fwd == []
    rcwv = classify_pair("grow(8192);\n", "grow(BUFFER_SIZE);\n")
    inline = classify_pair("grow(BUFFER_SIZE);\n", "grow(8192);\n")
    assert type_counts(rcwv)["ReplaceConstantWithVariable"] == 1
    assert type_counts(inline)["InlineField"] == 1


def test_instances_carry_nonempty_ops_and_spans():
    for pair_name in ("catch-block-pos-rich", "addlibrarypath-exceptions"):
        pair = _BY_NAME[pair_name]
        for inst in classify_pair(pair.example, pair.counterpart):
            assert inst.ops
            s, e = inst.example_span
            assert 0 <= s <= e <= len(pair.example)


def test_classification_is_deterministic():
    pair = _BY_NAME["addlibrarypath-exceptions"]
    first = instances_to_json(classify_pair(pair.example, pair.counterpart))
    second = instances_to_json(classify_pair(pair.example, pair.counterpart))
    assert first == second


def test_single_count_flag_collapses_multifires():
    pair = _BY_NAME["catch-block-pos-rich"]
    a, b = parse_snippet(pair.example), parse_snippet(pair.counterpart)
    script = prune_inner_ops(compute_edit_script(a, b))
    fa, fb = collect_facts(a), collect_facts(b)
    multi = classify(script, fa, fb)
    single = classify(script, fa, fb, single_count=True)
    multi_ops = {id(op) for i in multi for op in i.ops}
    single_op_sets = [frozenset(id(op) for op in i.ops) for i in single]
    covered = set().union(*single_op_sets) if single_op_sets else set()
    assert covered == multi_ops
    assert len(single) < len(multi)
    # dominant category: the first Table rule that claimed each op wins
    assert all(not i.out_of_taxonomy for i in single)


def test_distinct_types_unions_across_counterparts():
    one = classify_pair("use(a);\n", "use(b);\n")
    two = classify_pair("use(a);\n", "use(c);\n")
    types = distinct_types([one, two])
    assert AdaptationType.RENAME in types
    rename_total = sum(
        1 for group in (one, two) for i in group if i.type is AdaptationType.RENAME
    )
    assert rename_total == 2 and len([t for t in types if t is AdaptationType.RENAME]) == 1
    assert distinct_types([]) == set()
    three = [
        classify_pair("f(1);\n", "f(2);\n"),
        classify_pair("int a = 1;\nuse(a);\n", "final int a = 1;\nuse(a);\n"),
        classify_pair("g();\n", "if (ok) { g(); }\n"),
    ]
    got = distinct_types(three)
    assert {
        AdaptationType.UPDATE_CONSTANT,
        AdaptationType.INSERT_FINAL_MODIFIER,
        AdaptationType.ADD_CONDITIONAL,
    } <= got


def test_out_of_taxonomy_ops_are_flagged_not_dropped():
    instances = classify_pair("int x = a + b;\n", "int x = a - b;\n")
    assert len(instances) == 1
    assert instances[0].out_of_taxonomy
    assert instances[0].category is Category.MISCELLANEOUS
    assert instances[0].ops
