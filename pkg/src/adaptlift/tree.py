"""Typed, ordered, labeled syntax trees with spans back into the source text.

Nodes live in an arena (preorder-indexed list) so mappings and edit scripts
can reference stable integer ids. Trees are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

# Closed node-type vocabulary. The first block is the minimum set referenced
# by the classifier rule catalog; the rest covers the grammar.
NODE_LABELS = frozenset(
    {
        # rule-referenced
        "IfStatement",
        "IfCondition",
        "LoopCondition",
        "SwitchCase",
        "Modifier",
        "VariableDeclaration",
        "MethodDeclaration",
        "MethodInvocation",
        "TryStatement",
        "CatchClause",
        "FinallyBlock",
        "Type",
        "SimpleType",
        "Literal",
        "Name",
        "Block",
        "Annotation",
        "Comment",
        # structure
        "CompilationUnit",
        "PackageDeclaration",
        "ImportDeclaration",
        "ClassDeclaration",
        "AnonymousClass",
        "EnumConstant",
        "TypeParameters",
        "Parameters",
        "Declarator",
        "Arguments",
        "WhileStatement",
        "DoStatement",
        "ForStatement",
        "ForEachStatement",
        "ForInit",
        "ForUpdate",
        "SwitchStatement",
        "ReturnStatement",
        "ThrowStatement",
        "BreakStatement",
        "ContinueStatement",
        "SynchronizedStatement",
        "AssertStatement",
        "LabeledStatement",
        "EmptyStatement",
        "Assignment",
        "Conditional",
        "InfixExpression",
        "PrefixExpression",
        "PostfixExpression",
        "Cast",
        "InstanceofExpression",
        "ClassInstanceCreation",
        "ArrayCreation",
        "ArrayInitializer",
        "ArrayAccess",
        "FieldAccess",
        "QualifiedName",
        "Lambda",
        "MethodReference",
        "Operator",
        "Dimension",
        "Wildcard",
    }
)

# Labels the rule engine treats as "a type node".
TYPE_LABELS = frozenset({"Type", "SimpleType"})

# Value-bearing labels; these are the true leaves whose value equals the
# covered source text. Childless structural containers (empty Arguments,
# default switch cases, ...) carry no value.
LEAF_LABELS = frozenset(
    {"Name", "Literal", "SimpleType", "Modifier", "Comment", "Operator", "EmptyStatement"}
)

# Containers that end in a closing token; used to anchor insertions into
# childless containers (e.g. adding the first argument inside "()").
CLOSERED_LABELS = frozenset(
    {"Arguments", "Parameters", "Block", "ArrayInitializer", "IfCondition",
     "LoopCondition", "TypeParameters", "AnonymousClass"}
)


@dataclass
class Draft:
    """Mutable node used during parsing; flattened into an arena afterwards."""

    label: str
    start: int
    end: int
    children: list["Draft"] = field(default_factory=list)
    value: Optional[str] = None
    synthetic: bool = False


@dataclass(frozen=True)
class TreeNode:
    id: int
    label: str
    value: Optional[str]
    start: int
    end: int
    parent: Optional[int]
    children: tuple[int, ...]
    synthetic: bool = False

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)

    def is_leaf(self) -> bool:
        return not self.children


class SyntaxTree:
    """Arena of `TreeNode`s in preorder; node 0 is the root."""

    def __init__(self, nodes: list[TreeNode], text: str):
        self.nodes = nodes
        self.text = text
        self.root = 0

    @staticmethod
    def from_draft(root: Draft, text: str) -> "SyntaxTree":
        nodes: list[TreeNode] = []

        def emit(d: Draft, parent: Optional[int]) -> int:
            nid = len(nodes)
            nodes.append(None)  # type: ignore[arg-type]  # reserve slot
            child_ids = tuple(emit(c, nid) for c in d.children)
            nodes[nid] = TreeNode(
                id=nid,
                label=d.label,
                value=d.value,
                start=d.start,
                end=d.end,
                parent=parent,
                children=child_ids,
                synthetic=d.synthetic,
            )
            return nid

        emit(root, None)
        return SyntaxTree(nodes, text)

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, nid: int) -> TreeNode:
        return self.nodes[nid]

    def label(self, nid: int) -> str:
        return self.nodes[nid].label

    def value(self, nid: int) -> Optional[str]:
        return self.nodes[nid].value

    def children(self, nid: int) -> tuple[int, ...]:
        return self.nodes[nid].children

    def parent(self, nid: int) -> Optional[int]:
        return self.nodes[nid].parent

    def preorder(self, nid: int = 0) -> Iterator[int]:
        stack = [nid]
        while stack:
            cur = stack.pop()
            yield cur
            stack.extend(reversed(self.nodes[cur].children))

    def postorder(self, nid: int = 0) -> Iterator[int]:
        for c in self.nodes[nid].children:
            yield from self.postorder(c)
        yield nid

    def bfs(self, nid: int = 0) -> Iterator[int]:
        queue = [nid]
        while queue:
            cur = queue.pop(0)
            yield cur
            queue.extend(self.nodes[cur].children)

    def descendants(self, nid: int) -> Iterator[int]:
        for c in self.nodes[nid].children:
            yield from self.preorder(c)

    def subtree_size(self, nid: int) -> int:
        return sum(1 for _ in self.preorder(nid))

    def is_ancestor(self, anc: int, nid: int) -> bool:
        """Strict ancestor test."""
        cur = self.nodes[nid].parent
        while cur is not None:
            if cur == anc:
                return True
            cur = self.nodes[cur].parent
        return False

    def ancestors(self, nid: int) -> Iterator[int]:
        cur = self.nodes[nid].parent
        while cur is not None:
            yield cur
            cur = self.nodes[cur].parent

    def child_index(self, nid: int) -> int:
        p = self.nodes[nid].parent
        if p is None:
            return 0
        return self.nodes[p].children.index(nid)

    def path(self, nid: int) -> tuple[int, ...]:
        """Root-relative child-index path."""
        out = []
        cur = nid
        while self.nodes[cur].parent is not None:
            out.append(self.child_index(cur))
            cur = self.nodes[cur].parent
        return tuple(reversed(out))

    def at_path(self, path: tuple[int, ...]) -> int:
        cur = self.root
        for i in path:
            cur = self.nodes[cur].children[i]
        return cur

    def height(self, nid: int) -> int:
        node = self.nodes[nid]
        if not node.children:
            return 1
        return 1 + max(self.height(c) for c in node.children)

    def source(self, nid: int) -> str:
        node = self.nodes[nid]
        return self.text[node.start : node.end]

    def leaves(self, nid: int = 0) -> Iterator[int]:
        for i in self.preorder(nid):
            if not self.nodes[i].children:
                yield i

    def structure_key(self, nid: int = 0, ignore_synthetic: bool = True):
        """Nested-tuple shape of the subtree: (label, value, children).

        Synthetic nodes collapse into their parent when ignored; a fully
        synthetic root chain yields a ('#forest', children) key.
        """

        def key(i: int):
            node = self.nodes[i]
            kids = []
            for c in node.children:
                k = key(c)
                if isinstance(k, list):
                    kids.extend(k)
                else:
                    kids.append(k)
            if ignore_synthetic and node.synthetic:
                return kids
            return (node.label, node.value, tuple(kids))

        k = key(nid)
        if isinstance(k, list):
            return ("#forest", None, tuple(k))
        return k

    def pretty(self, nid: int = 0, indent: int = 0) -> str:
        node = self.nodes[nid]
        val = "" if node.value is None else f": {node.value!r}"
        syn = " (synthetic)" if node.synthetic else ""
        lines = [f"{'  ' * indent}{node.label}{val} [{node.start},{node.end}){syn}"]
        for c in node.children:
            lines.append(self.pretty(c, indent + 1))
        return "\n".join(lines)


def trees_isomorphic(a: SyntaxTree, b: SyntaxTree, ignore_synthetic: bool = True) -> bool:
    """Label/value/child-order isomorphism, spans ignored."""
    return a.structure_key(ignore_synthetic=ignore_synthetic) == b.structure_key(
        ignore_synthetic=ignore_synthetic
    )


def check_tree_invariants(tree: SyntaxTree) -> None:
    """Raise AssertionError when structural invariants are violated.

    Used by tests: parent/child consistency, span containment and sibling
    disjointness (for non-synthetic nodes), leaf value fidelity.
    """
    for node in tree.nodes:
        for c in node.children:
            assert tree.nodes[c].parent == node.id, "broken parent link"
        if node.parent is not None:
            assert node.id in tree.nodes[node.parent].children, "broken child link"
        assert node.label in NODE_LABELS, f"label {node.label} not in vocabulary"
        if node.synthetic:
            assert node.start == node.end, "synthetic nodes carry zero-length spans"
            continue
        if node.parent is not None and not tree.nodes[node.parent].synthetic:
            p = tree.nodes[node.parent]
            assert p.start <= node.start and node.end <= p.end, (
                f"span {node.span} escapes parent span {p.span}"
            )
        real_kids = [tree.nodes[c] for c in node.children if not tree.nodes[c].synthetic]
        for left, right in zip(real_kids, real_kids[1:]):
            assert left.end <= right.start, "sibling spans overlap"
        if node.label in LEAF_LABELS:
            assert not node.children, f"{node.label} must be a leaf"
            assert node.value == tree.text[node.start : node.end], (
                f"leaf value {node.value!r} != covered text"
            )
        else:
            assert node.value is None, f"container {node.label} carries a value"
