"""Semantic facts consumed by the classifier rules: variable defs and uses,
local vs instance calls, and caught/thrown exception types.

Defs and uses are flat name sets over the whole program, matching the
set-style predicates the rules are written in; no block scoping.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .parse import ParseError, parse_snippet
from .tree import TYPE_LABELS, SyntaxTree

_SKIPPED_SUBTREES = frozenset({"PackageDeclaration", "ImportDeclaration"})
_NON_USE_VALUES = frozenset({"this", "super"})


@dataclass(frozen=True)
class SemanticFacts:
    defs: frozenset[str] = frozenset()
    uses: frozenset[str] = frozenset()
    local_calls: frozenset[str] = frozenset()
    instance_calls: frozenset[str] = frozenset()
    exceptions: frozenset[str] = frozenset()

    def merged(self, other: "SemanticFacts") -> "SemanticFacts":
        return SemanticFacts(
            self.defs | other.defs,
            self.uses | other.uses,
            self.local_calls | other.local_calls,
            self.instance_calls | other.instance_calls,
            self.exceptions | other.exceptions,
        )


@dataclass(frozen=True)
class MethodFamilies:
    log_methods: frozenset[str]
    clean_methods: frozenset[str]


def load_method_families(path: Optional[Path] = None) -> MethodFamilies:
    """Families are configuration; the sets are deliberately open-ended."""
    if path is None:
        raw = resources.files("adaptlift.data").joinpath("method_families.json").read_text()
    else:
        raw = Path(path).read_text()
    doc = json.loads(raw)
    return MethodFamilies(
        log_methods=frozenset(doc["log_methods"]),
        clean_methods=frozenset(doc["clean_methods"]),
    )


DEFAULT_FAMILIES = load_method_families()


def is_exception_type(name: Optional[str]) -> bool:
    """Deliberately a plain substring check."""
    return name is not None and "Exception" in name


def is_log_method(name: str, families: MethodFamilies = DEFAULT_FAMILIES) -> bool:
    return name in families.log_methods


def is_clean_method(name: str, families: MethodFamilies = DEFAULT_FAMILIES) -> bool:
    return name in families.clean_methods


def declared_name_node(tree: SyntaxTree, decl: int) -> Optional[int]:
    """The name introduced by a VariableDeclaration or Declarator node."""
    kids = tree.children(decl)
    declarators = [c for c in kids if tree.label(c) == "Declarator"]
    if declarators:
        return None  # names live on the declarators
    for c in kids:
        if tree.label(c) == "Name":
            return c
    return None


def declared_names(tree: SyntaxTree, decl: int) -> list[str]:
    """All names introduced by a VariableDeclaration subtree."""
    out = []
    kids = tree.children(decl)
    declarators = [c for c in kids if tree.label(c) == "Declarator"]
    if declarators:
        for d in declarators:
            dk = tree.children(d)
            if dk and tree.label(dk[0]) == "Name":
                out.append(tree.value(dk[0]))
    else:
        name = declared_name_node(tree, decl)
        if name is not None:
            out.append(tree.value(name))
    return [n for n in out if n]


def invocation_parts(tree: SyntaxTree, call: int) -> tuple[Optional[int], Optional[int]]:
    """(receiver node, method-name node) of a MethodInvocation."""
    kids = tree.children(call)
    if not kids:
        return None, None
    if tree.label(kids[-1]) != "Arguments":
        return None, None
    if len(kids) >= 2 and tree.label(kids[-2]) == "Name":
        receiver = kids[0] if len(kids) >= 3 else None
        return receiver, kids[-2]
    # this(...) / super(...) style: [Name, Arguments]
    return None, kids[0] if tree.label(kids[0]) == "Name" else None


def type_names(tree: SyntaxTree, tnode: int) -> list[str]:
    """Simple-type names under a Type-category node (base of composites)."""
    if tree.label(tnode) == "SimpleType":
        v = tree.value(tnode)
        return [v] if v else []
    if tree.label(tnode) == "Type":
        kids = tree.children(tnode)
        if kids and tree.label(kids[0]) == "SimpleType":
            v = tree.value(kids[0])
            return [v] if v else []
    return []


def method_throws_nodes(tree: SyntaxTree, method: int) -> list[int]:
    """Type-category children after the Parameters child are throws types."""
    kids = tree.children(method)
    seen_params = False
    out = []
    for c in kids:
        if tree.label(c) == "Parameters":
            seen_params = True
            continue
        if seen_params and tree.label(c) in TYPE_LABELS:
            out.append(c)
    return out


def collect_facts(tree: SyntaxTree) -> SemanticFacts:
    defs: set[str] = set()
    uses: set[str] = set()
    local_calls: set[str] = set()
    instance_calls: set[str] = set()
    exceptions: set[str] = set()

    non_use_names: set[int] = set()

    def walk(nid: int) -> None:
        label = tree.label(nid)
        if label in _SKIPPED_SUBTREES:
            return
        if label == "VariableDeclaration":
            defs.update(declared_names(tree, nid))
            name = declared_name_node(tree, nid)
            if name is not None:
                non_use_names.add(name)
        elif label == "Declarator":
            kids = tree.children(nid)
            if kids and tree.label(kids[0]) == "Name":
                non_use_names.add(kids[0])
        elif label == "MethodInvocation":
            _, mname = invocation_parts(tree, nid)
            if mname is not None:
                non_use_names.add(mname)
                value = tree.value(mname)
                if value and value not in _NON_USE_VALUES:
                    kids = tree.children(nid)
                    if len(kids) >= 3:
                        instance_calls.add(value)
                    else:
                        local_calls.add(value)
        elif label == "CatchClause":
            kids = tree.children(nid)
            if kids and tree.label(kids[0]) == "VariableDeclaration":
                for c in tree.children(kids[0]):
                    if tree.label(c) in TYPE_LABELS:
                        exceptions.update(type_names(tree, c))
        elif label == "MethodDeclaration":
            for t in method_throws_nodes(tree, nid):
                exceptions.update(type_names(tree, t))
            for c in tree.children(nid):
                if tree.label(c) == "Name":
                    non_use_names.add(c)
        elif label in ("ClassDeclaration", "Annotation", "EnumConstant",
                       "LabeledStatement", "BreakStatement", "ContinueStatement",
                       "MethodReference"):
            kids = tree.children(nid)
            if label == "MethodReference":
                if len(kids) == 2 and tree.label(kids[1]) == "Name":
                    non_use_names.add(kids[1])
            else:
                for c in kids:
                    if tree.label(c) == "Name":
                        non_use_names.add(c)
        for c in tree.children(nid):
            walk(c)

    walk(tree.root)

    for nid in tree.preorder():
        node = tree.node(nid)
        if node.label != "Name" or nid in non_use_names:
            continue
        if node.value in _NON_USE_VALUES or not node.value:
            continue
        cur = node.parent
        skip = False
        while cur is not None:
            if tree.label(cur) in _SKIPPED_SUBTREES:
                skip = True
                break
            cur = tree.parent(cur)
        if not skip:
            uses.add(node.value)

    return SemanticFacts(
        defs=frozenset(defs),
        uses=frozenset(uses),
        local_calls=frozenset(local_calls),
        instance_calls=frozenset(instance_calls),
        exceptions=frozenset(exceptions),
    )


def fragment_facts(text: str) -> SemanticFacts:
    """Best-effort facts for a template option fragment.

    Option contents are arbitrary slices (expressions, parameter lists,
    statements); try progressively more forgiving parses and fall back to
    empty facts.
    """
    text = text.strip()
    if not text:
        return SemanticFacts()
    for candidate in (text, text + ";", "void __probe(" + text + ") {}"):
        try:
            tree = parse_snippet(candidate)
        except ParseError:
            continue
        return collect_facts(tree)
    return SemanticFacts()
