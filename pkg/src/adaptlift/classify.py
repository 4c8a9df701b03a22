"""Rule-based classification of pruned edit scripts into adaptation types.

Every rule is evaluated independently over the script; one op may satisfy
several rules (a call change inside a catch block is both a method-call
change and a catch-block change). Ops matched by no rule are surfaced as
out-of-taxonomy instances so downstream template lifting keeps every change
region.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .editscript import Delete, EditOp, EditScript, Insert, Move, Update
from .semantics import (
    DEFAULT_FAMILIES,
    MethodFamilies,
    SemanticFacts,
    declared_names,
    invocation_parts,
    is_exception_type,
    method_throws_nodes,
    type_names,
)
from .taxonomy import (
    ACCESS_MODIFIER_VALUES,
    TABLE_ORDER,
    TYPE_TO_CATEGORY,
    AdaptationType,
    Category,
)
from .tree import TYPE_LABELS, SyntaxTree

Span = tuple[int, int]


@dataclass(frozen=True)
class AdaptationInstance:
    type: Optional[AdaptationType]  # None marks an out-of-taxonomy edit
    category: Category
    ops: tuple[EditOp, ...]
    example_span: Span
    counterpart_span: Span
    subject: Optional[str] = None  # name binding for semantic rules

    @property
    def out_of_taxonomy(self) -> bool:
        return self.type is None

    @property
    def type_name(self) -> str:
        return "Unclassified" if self.type is None else self.type.value


class _RuleContext:
    def __init__(
        self,
        script: EditScript,
        so: SemanticFacts,
        gh: SemanticFacts,
        families: MethodFamilies,
    ):
        self.script = script
        self.a = script.source
        self.b = script.target
        self.mapping = script.mapping
        self.so = so
        self.gh = gh
        self.families = families
        self.ops = list(script.visible_ops)
        self.op_pos = {id(op): k for k, op in enumerate(self.ops)}

        self.changed_a: set[int] = set()
        self.changed_b: set[int] = set()
        for op in self.ops:
            if isinstance(op, Insert):
                self.changed_b.add(op.node)
            else:
                self.changed_a.add(op.node)
                if isinstance(op, Move):
                    self.changed_b.add(self.mapping.a2b[op.node])
        for anid in self.a.preorder():
            node = self.a.node(anid)
            if node.synthetic:
                continue
            partner = self.mapping.a2b.get(anid)
            if partner is None:
                self.changed_a.add(anid)
            elif node.value != self.b.value(partner):
                self.changed_a.add(anid)
                self.changed_b.add(partner)
        for bnid in self.b.preorder():
            node = self.b.node(bnid)
            if not node.synthetic and not self.mapping.has_b(bnid):
                self.changed_b.add(bnid)

    # --- op geometry -------------------------------------------------------

    def home(self, op: EditOp) -> tuple[SyntaxTree, int]:
        if isinstance(op, Insert):
            return self.b, op.node
        return self.a, op.node

    def entailed_nodes(self, op: EditOp) -> list[int]:
        """Nodes the op stands for after pruning: an insert or delete covers
        every unmapped node of its subtree (each was its own op before
        pruning); updates and moves cover only their node."""
        tree, nid = self.home(op)
        if isinstance(op, Insert):
            return [d for d in self.b.preorder(nid) if not self.mapping.has_b(d)]
        if isinstance(op, Delete):
            return [d for d in self.a.preorder(nid) if not self.mapping.has_a(d)]
        return [nid]

    def loci(self, op: EditOp) -> list[tuple[SyntaxTree, int]]:
        out = [self.home(op)]
        if isinstance(op, Update):
            out.append((self.b, op.replacement))
        elif isinstance(op, Move):
            out.append((self.b, self.mapping.a2b[op.node]))
        return out

    def changed(self, tree: SyntaxTree, nid: int) -> bool:
        if tree is self.a:
            return nid in self.changed_a
        return nid in self.changed_b

    def has_ancestor(self, tree: SyntaxTree, nid: int, label: str) -> bool:
        return any(tree.label(x) == label for x in tree.ancestors(nid))

    def has_ancestor_in(self, tree: SyntaxTree, nid: int, labels) -> bool:
        return any(tree.label(x) in labels for x in tree.ancestors(nid))

    def rule_value(self, tree: SyntaxTree, nid: int) -> Optional[str]:
        node = tree.node(nid)
        if node.value is not None:
            return node.value
        if node.label == "MethodInvocation":
            _, mname = invocation_parts(tree, nid)
            return tree.value(mname) if mname is not None else None
        if node.label in TYPE_LABELS:
            names = type_names(tree, nid)
            return names[0] if names else None
        return None

    def op_order(self, ops: tuple[EditOp, ...]) -> int:
        return min(self.op_pos[id(op)] for op in ops)

    # --- spans ---------------------------------------------------------------

    def a_side_span(self, ops: tuple[EditOp, ...]) -> Span:
        spans = []
        for op in ops:
            if isinstance(op, Insert):
                for d in self.b.preorder(op.node):
                    anid = self.mapping.b2a.get(d)
                    if anid is not None:
                        spans.append(self.a.node(anid).span)
            else:
                spans.append(self.a.node(op.node).span)
        if not spans:
            anchor = self._insert_anchor(ops[0]) if ops else 0
            return (anchor, anchor)
        return (min(s for s, _ in spans), max(e for _, e in spans))

    def b_side_span(self, ops: tuple[EditOp, ...]) -> Span:
        spans = []
        for op in ops:
            if isinstance(op, Insert):
                spans.append(self.b.node(op.node).span)
            elif isinstance(op, Update):
                spans.append(self.b.node(op.replacement).span)
            elif isinstance(op, Move):
                spans.append(self.b.node(self.mapping.a2b[op.node]).span)
            else:
                for d in self.a.preorder(op.node):
                    bnid = self.mapping.a2b.get(d)
                    if bnid is not None:
                        spans.append(self.b.node(bnid).span)
        if not spans:
            return (0, 0)
        return (min(s for s, _ in spans), max(e for _, e in spans))

    def _insert_anchor(self, op: EditOp) -> int:
        if not isinstance(op, Insert) or op.parent is None:
            return 0
        parent_a = self.mapping.b2a.get(op.parent)
        if parent_a is None:
            return 0
        siblings = self.b.children(op.parent)
        at = siblings.index(op.node)
        for s in reversed(siblings[:at]):
            anid = self.mapping.b2a.get(s)
            if anid is not None:
                return self.a.node(anid).end
        for s in siblings[at + 1 :]:
            anid = self.mapping.b2a.get(s)
            if anid is not None:
                return self.a.node(anid).start
        return self.a.node(parent_a).start


def _touches_invocation_of(ctx: _RuleContext, op: EditOp, method: str) -> bool:
    """The op lies inside (or is) a call of `method`, on either side."""
    for tree, nid in ctx.loci(op):
        cur: Optional[int] = nid
        while cur is not None:
            if tree.label(cur) == "MethodInvocation":
                _, mname = invocation_parts(tree, cur)
                if mname is not None and tree.value(mname) == method:
                    return True
            cur = tree.parent(cur)
    return False


def _subtree_mentions_name(tree: SyntaxTree, root: int, name: str) -> bool:
    return any(
        tree.label(d) == "Name" and tree.value(d) == name for d in tree.preorder(root)
    )


def _subtree_has_invocation_of(tree: SyntaxTree, root: int, method: str) -> bool:
    for d in tree.preorder(root):
        if tree.label(d) == "MethodInvocation":
            _, mname = invocation_parts(tree, d)
            if mname is not None and tree.value(mname) == method:
                return True
    return False


def _exception_sites(tree: SyntaxTree) -> dict[str, list[int]]:
    """Type nodes that contribute to the exceptions fact, by name."""
    sites: dict[str, list[int]] = {}
    for nid in tree.preorder():
        label = tree.label(nid)
        if label == "CatchClause":
            kids = tree.children(nid)
            if kids and tree.label(kids[0]) == "VariableDeclaration":
                for c in tree.children(kids[0]):
                    if tree.label(c) in TYPE_LABELS:
                        for n in type_names(tree, c):
                            sites.setdefault(n, []).append(c)
        elif label == "MethodDeclaration":
            for t in method_throws_nodes(tree, nid):
                for n in type_names(tree, t):
                    sites.setdefault(n, []).append(t)
    return sites


def classify(
    script: EditScript,
    example_facts: SemanticFacts,
    counterpart_facts: SemanticFacts,
    families: MethodFamilies = DEFAULT_FAMILIES,
    single_count: bool = False,
) -> list[AdaptationInstance]:
    """Evaluate all 24 rules over a pruned edit script.

    Returns instances ordered by (first op position, rule order).
    """
    ctx = _RuleContext(script, example_facts, counterpart_facts, families)
    raw: list[tuple[int, int, AdaptationInstance]] = []

    def emit(atype: AdaptationType, ops: tuple[EditOp, ...], subject: Optional[str] = None):
        inst = AdaptationInstance(
            type=atype,
            category=TYPE_TO_CATEGORY[atype],
            ops=ops,
            example_span=ctx.a_side_span(ops),
            counterpart_span=ctx.b_side_span(ops),
            subject=subject,
        )
        raw.append((ctx.op_order(ops), TABLE_ORDER.index(atype), inst))

    a, b = ctx.a, ctx.b

    for op in ctx.ops:
        home_tree, root = ctx.home(op)

        # Node-label rules range over the op's entailed subtree: before
        # pruning, every unmapped node there carried its own op.
        for nid in ctx.entailed_nodes(op):
            label = home_tree.label(nid)
            if isinstance(op, Insert) and label == "IfStatement":
                emit(AdaptationType.ADD_CONDITIONAL, (op,))
            if isinstance(op, Insert) and label == "Modifier" and b.value(nid) == "final":
                emit(AdaptationType.INSERT_FINAL_MODIFIER, (op,))
            if isinstance(op, Insert) and label == "VariableDeclaration":
                for v in declared_names(b, nid):
                    if v in ctx.so.uses and v not in ctx.so.defs:
                        emit(
                            AdaptationType.DECLARE_UNDECLARED_VARIABLE,
                            (op,),
                            subject=v,
                        )
                        break
            if isinstance(op, (Insert, Delete)) and label == "TryStatement":
                emit(AdaptationType.INSERT_DELETE_TRY_CATCH, (op,))
            if label in TYPE_LABELS:
                parent = home_tree.parent(nid)
                if parent is not None and home_tree.label(parent) == "MethodDeclaration":
                    value = ctx.rule_value(home_tree, nid)
                    if is_exception_type(value):
                        emit(AdaptationType.INSERT_DELETE_THROWN, (op,))
            if label == "Modifier":
                value = home_tree.value(nid)
                if value in ACCESS_MODIFIER_VALUES:
                    emit(AdaptationType.CHANGE_ACCESS_MODIFIER, (op,))
            if label == "MethodInvocation":
                mvalue = ctx.rule_value(home_tree, nid)
                if mvalue is not None and mvalue in families.log_methods:
                    emit(AdaptationType.CHANGE_LOG_STATEMENT, (op,))
            if label == "Block":
                parent = home_tree.parent(nid)
                parent_ok = parent is not None and not ctx.changed(home_tree, parent)
                kids_ok = all(
                    not ctx.changed(home_tree, c) for c in home_tree.children(nid)
                )
                if parent_ok and kids_ok:
                    emit(AdaptationType.STYLE_REFORMAT, (op,))
            if label == "Annotation":
                emit(AdaptationType.CHANGE_ANNOTATION, (op,))
            if label == "Comment":
                emit(AdaptationType.CHANGE_COMMENT, (op,))

        # Update-pair rules and ancestor-context rules anchor at the op root.
        if isinstance(op, Update):
            va, vb = a.value(op.node), b.value(op.replacement)
            if (
                a.label(op.node) == "SimpleType"
                and b.label(op.replacement) == "SimpleType"
                and is_exception_type(va)
                and is_exception_type(vb)
            ):
                emit(AdaptationType.UPDATE_EXCEPTION_TYPE, (op,))
            if a.label(op.node) == "Literal" and b.label(op.replacement) == "Literal":
                emit(AdaptationType.UPDATE_CONSTANT, (op,))
            if a.label(op.node) in TYPE_LABELS and b.label(op.replacement) in TYPE_LABELS:
                emit(AdaptationType.CHANGE_VARIABLE_TYPE, (op,))
            if a.label(op.node) == "Name":
                emit(AdaptationType.RENAME, (op,))
        if ctx.has_ancestor(home_tree, root, "CatchClause"):
            emit(AdaptationType.CHANGE_CATCH_BLOCK, (op,))
        if ctx.has_ancestor(home_tree, root, "FinallyBlock"):
            emit(AdaptationType.CHANGE_FINALLY_BLOCK, (op,))
        if ctx.has_ancestor(home_tree, root, "MethodInvocation"):
            emit(AdaptationType.CHANGE_METHOD_CALL, (op,))
        if ctx.has_ancestor_in(
            home_tree, root, ("IfCondition", "LoopCondition", "SwitchCase")
        ):
            emit(AdaptationType.CHANGE_CONDITIONAL_EXPR, (op,))

    # Match-based refactoring pairs -------------------------------------------
    deletes = [op for op in ctx.ops if isinstance(op, Delete)]
    inserts = [op for op in ctx.ops if isinstance(op, Insert)]

    def positions_match(d: Delete, i: Insert) -> bool:
        pa, pb = a.parent(d.node), b.parent(i.node)
        if pa is None or pb is None:
            return False
        if ctx.mapping.a2b.get(pa) != pb:
            return False
        return a.child_index(d.node) == b.child_index(i.node)

    for d in deletes:
        for i in inserts:
            if not positions_match(d, i):
                continue
            if a.label(d.node) == "Literal" and b.label(i.node) == "Name":
                emit(AdaptationType.REPLACE_CONSTANT_WITH_VARIABLE, (d, i))
            elif a.label(d.node) == "Name" and b.label(i.node) == "Literal":
                emit(AdaptationType.INLINE_FIELD, (d, i))

    # Semantic rules over name bindings ------------------------------------------
    for e in sorted(ctx.gh.exceptions - ctx.so.exceptions):
        sites = _exception_sites(b).get(e, [])
        ops = []
        for op in ctx.ops:
            if isinstance(op, Insert) and any(
                s == op.node or b.is_ancestor(op.node, s) for s in sites
            ):
                ops.append(op)
            elif isinstance(op, Update) and op.replacement in sites:
                ops.append(op)
        if ops:
            emit(AdaptationType.HANDLE_NEW_EXCEPTION_TYPE, tuple(ops), subject=e)

    gh_calls = ctx.gh.local_calls | ctx.gh.instance_calls
    so_calls = ctx.so.local_calls | ctx.so.instance_calls
    for m in sorted(gh_calls - so_calls):
        if m not in families.clean_methods:
            continue
        ops = tuple(
            op
            for op in ctx.ops
            if any(
                _subtree_has_invocation_of(tree, nid, m) for tree, nid in ctx.loci(op)
            )
        )
        if ops:
            emit(AdaptationType.CLEAN_UP_RESOURCES, ops, subject=m)

    for m in sorted(ctx.gh.instance_calls & ctx.so.local_calls):
        ops = tuple(op for op in ctx.ops if _touches_invocation_of(ctx, op, m))
        if ops:
            emit(AdaptationType.SPECIFY_INVOCATION_TARGET, ops, subject=m)

    removed_vars = sorted((ctx.so.uses - ctx.so.defs) - ctx.gh.uses)
    for v in removed_vars:
        ops = tuple(
            op
            for op in ctx.ops
            if isinstance(op, (Delete, Update))
            and _subtree_mentions_name(a, op.node, v)
        )
        if ops:
            emit(AdaptationType.REMOVE_UNDECLARED, ops, subject=v)
    removed_calls = sorted(
        m
        for m in ctx.so.local_calls
        if m not in ctx.gh.local_calls and m not in ctx.gh.instance_calls
    )
    for m in removed_calls:
        ops = tuple(
            op
            for op in ctx.ops
            if isinstance(op, (Delete, Update))
            and _subtree_has_invocation_of(a, op.node, m)
        )
        if ops:
            emit(AdaptationType.REMOVE_UNDECLARED, ops, subject=m)

    raw.sort(key=lambda item: (item[0], item[1]))
    instances = [inst for _, _, inst in raw]

    covered = {id(op) for inst in instances for op in inst.ops}
    for op in ctx.ops:
        if id(op) not in covered:
            instances.append(
                AdaptationInstance(
                    type=None,
                    category=Category.MISCELLANEOUS,
                    ops=(op,),
                    example_span=ctx.a_side_span((op,)),
                    counterpart_span=ctx.b_side_span((op,)),
                )
            )

    if single_count:
        instances = _collapse_to_dominant(instances, ctx)
    return instances


def _collapse_to_dominant(
    instances: list[AdaptationInstance], ctx: _RuleContext
) -> list[AdaptationInstance]:
    """Keep, per op, only the first rule in Table order that claimed it."""
    claimed: set[int] = set()
    out = []
    ordered = sorted(
        instances,
        key=lambda inst: (
            len(TABLE_ORDER) if inst.type is None else TABLE_ORDER.index(inst.type)
        ),
    )
    for inst in ordered:
        keep = tuple(op for op in inst.ops if id(op) not in claimed)
        if not keep:
            continue
        claimed.update(id(op) for op in keep)
        out.append(inst)
    out.sort(key=lambda inst: min(ctx.op_pos[id(op)] for op in inst.ops))
    return out


def distinct_types(
    instances_per_counterpart: list[list[AdaptationInstance]],
) -> set[AdaptationType]:
    """Union of types across a single example's counterparts, deduplicated to
    avoid inflation from repeated variations."""
    out: set[AdaptationType] = set()
    for instances in instances_per_counterpart:
        for inst in instances:
            if inst.type is not None:
                out.add(inst.type)
    return out


def instances_to_document(instances: list[AdaptationInstance]) -> dict:
    """Stable adaptation report."""
    records = []
    for inst in instances:
        records.append(
            {
                "type": inst.type_name,
                "category": inst.category.value,
                "example_span": list(inst.example_span),
                "counterpart_span": list(inst.counterpart_span),
                "subject": inst.subject,
                "ops": [
                    {"kind": op.kind, "node": op.node}
                    for op in inst.ops
                ],
                "out_of_taxonomy": inst.out_of_taxonomy,
            }
        )
    return {"version": 1, "instances": records}


def instances_to_json(instances: list[AdaptationInstance]) -> str:
    return json.dumps(instances_to_document(instances), sort_keys=True, indent=2) + "\n"
