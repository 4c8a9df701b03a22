import random

from hypothesis import given, settings
from hypothesis import strategies as st

from adaptlift.parse import parse_snippet
from adaptlift.semantics import (
    DEFAULT_FAMILIES,
    collect_facts,
    fragment_facts,
    is_clean_method,
    is_exception_type,
    is_log_method,
)

from genutil import program_text, rand_stmt, random_program


def facts_of(text):
    return collect_facts(parse_snippet(text))


def test_simple_def_and_use():
    f = facts_of("int a = b;")
    assert f.defs == {"a"}
    assert f.uses == {"b"}


def test_local_vs_instance_calls():
    f = facts_of("foo(); obj.bar();")
    assert f.local_calls == {"foo"}
    assert f.instance_calls == {"bar"}
    assert "obj" in f.uses


def test_class_name_receiver_counts_as_instance_call():
    f = facts_of("double load = ManagementFactory.getOperatingSystemMXBean().getSystemCpuLoad();")
    assert "getOperatingSystemMXBean" in f.instance_calls
    assert "getSystemCpuLoad" in f.instance_calls
    f2 = facts_of("double load = getOperatingSystemMXBean().getSystemCpuLoad();")
    assert "getOperatingSystemMXBean" in f2.local_calls
    assert "getSystemCpuLoad" in f2.instance_calls


def test_exceptions_from_catch_and_throws():
    f = facts_of(
        "class A { void f() throws IOException { try { g(); } "
        "catch (SecurityException | IllegalArgumentException e) { h(e); } } }"
    )
    assert f.exceptions == {"IOException", "SecurityException", "IllegalArgumentException"}


def test_throw_statement_alone_is_not_an_exception_fact():
    f = facts_of("throw new IllegalStateException(msg);")
    assert f.exceptions == set()


def test_catch_parameter_counts_as_def():
    f = facts_of("try { g(); } catch (Exception e) { log(e); }")
    assert "e" in f.defs
    assert "e" in f.uses


def test_method_parameters_are_defs():
    f = facts_of("class A { int f(int width, String name) { return width; } }")
    assert {"width", "name"} <= f.defs


def test_method_names_and_declared_names_are_not_uses():
    f = facts_of("class A { void run() { int x = 1; } }")
    assert "run" not in f.uses
    assert "x" not in f.uses


def test_is_exception_type():
    assert is_exception_type("IllegalArgumentException")
    assert is_exception_type("SecurityException")
    assert not is_exception_type("String")
    assert not is_exception_type("Error")
    assert not is_exception_type("Throwable")


def test_method_families():
    assert is_log_method("println")
    assert is_log_method("log")
    assert is_clean_method("close")
    assert is_clean_method("dispose")
    assert not is_log_method("compute")
    assert not is_clean_method("compute")
    assert DEFAULT_FAMILIES.log_methods and DEFAULT_FAMILIES.clean_methods


def test_fragment_facts_expression_and_parameter():
    assert fragment_facts("jsonFileName").uses == {"jsonFileName"}
    assert fragment_facts("String jsonFileName").defs == {"jsonFileName"}
    assert fragment_facts("b + c").uses == {"b", "c"}
    assert fragment_facts("").defs == frozenset()
    assert fragment_facts("} bogus {{{").defs == frozenset()


def _oracle_facts(tree):
    """Independent exhaustive walk with its own def/use bookkeeping."""
    defs, uses, local_calls, instance_calls, exceptions = set(), set(), set(), set(), set()
    excluded = set()
    stack = [tree.root]
    order = []
    while stack:
        nid = stack.pop()
        order.append(nid)
        stack.extend(tree.children(nid))
    for nid in order:
        lab = tree.label(nid)
        kids = tree.children(nid)
        if lab == "Declarator" and kids and tree.label(kids[0]) == "Name":
            defs.add(tree.value(kids[0]))
            excluded.add(kids[0])
        if lab == "VariableDeclaration" and not any(
            tree.label(c) == "Declarator" for c in kids
        ):
            names = [c for c in kids if tree.label(c) == "Name"]
            if names:
                defs.add(tree.value(names[0]))
                excluded.add(names[0])
        if lab == "MethodInvocation" and kids and tree.label(kids[-1]) == "Arguments":
            names = [c for c in kids if tree.label(c) == "Name"]
            if names:
                mname = names[-1] if len(kids) >= 2 and tree.label(kids[-2]) == "Name" else names[0]
                excluded.add(mname)
                v = tree.value(mname)
                if v not in ("this", "super"):
                    if len(kids) >= 3:
                        instance_calls.add(v)
                    else:
                        local_calls.add(v)
        if lab == "CatchClause" and kids:
            for c in tree.children(kids[0]):
                if tree.label(c) == "SimpleType":
                    exceptions.add(tree.value(c))
                elif tree.label(c) == "Type":
                    inner = tree.children(c)
                    if inner and tree.label(inner[0]) == "SimpleType":
                        exceptions.add(tree.value(inner[0]))
        if lab == "MethodDeclaration":
            after_params = False
            for c in kids:
                if tree.label(c) == "Parameters":
                    after_params = True
                elif after_params and tree.label(c) == "SimpleType":
                    exceptions.add(tree.value(c))
                elif after_params and tree.label(c) == "Type":
                    inner = tree.children(c)
                    if inner and tree.label(inner[0]) == "SimpleType":
                        exceptions.add(tree.value(inner[0]))
                if tree.label(c) == "Name":
                    excluded.add(c)
        if lab in ("ClassDeclaration", "Annotation", "EnumConstant", "LabeledStatement",
                   "BreakStatement", "ContinueStatement"):
            for c in kids:
                if tree.label(c) == "Name":
                    excluded.add(c)
        if lab == "MethodReference" and len(kids) == 2:
            excluded.add(kids[1])
        if lab in ("PackageDeclaration", "ImportDeclaration"):
            for d in tree.preorder(nid):
                excluded.add(d)
    for nid in order:
        if tree.label(nid) == "Name" and nid not in excluded:
            v = tree.value(nid)
            if v not in ("this", "super"):
                uses.add(v)
    return defs, uses, local_calls, instance_calls, exceptions


@settings(max_examples=80, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_soundness_against_bruteforce_oracle(seed):
    rng = random.Random(seed)
    text = program_text(random_program(rng))
    tree = parse_snippet(text)
    f = collect_facts(tree)
    defs, uses, local_calls, instance_calls, exceptions = _oracle_facts(tree)
    assert f.defs == defs
    assert f.uses == uses
    assert f.local_calls == local_calls
    assert f.instance_calls == instance_calls
    assert f.exceptions == exceptions


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_monotonicity_appending_never_removes_facts(seed):
    rng = random.Random(seed)
    base = random_program(rng)
    extra = rand_stmt(rng)
    f1 = collect_facts(parse_snippet(program_text(base)))
    f2 = collect_facts(parse_snippet(program_text(base + [extra])))
    assert f1.defs <= f2.defs
    assert f1.uses <= f2.uses
    assert f1.local_calls <= f2.local_calls
    assert f1.instance_calls <= f2.instance_calls
    assert f1.exceptions <= f2.exceptions
