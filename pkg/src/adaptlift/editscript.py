"""Edit scripts between matched trees: Insert/Delete/Update/Move generation,
an applier used as the round-trip oracle, inner-op pruning, and a stable
serialization.

Insert/Move indexes are positions at op time: replaying the ops in order on a
working copy of the source reproduces the target (wrapper scaffolding aside).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .matching import MatchConfig, NodeMapping, match_trees
from .tree import SyntaxTree, TreeNode


class InvalidScript(Exception):
    pass


@dataclass(frozen=True)
class Insert:
    node: int  # node in target
    parent: Optional[int]  # parent in target; None = tree root
    index: int
    kind: str = "insert"


@dataclass(frozen=True)
class Delete:
    node: int  # node in source
    kind: str = "delete"


@dataclass(frozen=True)
class Update:
    node: int  # node in source
    replacement: int  # node in target
    kind: str = "update"


@dataclass(frozen=True)
class Move:
    node: int  # node in source
    parent: Optional[int]  # new parent in target coordinates
    index: int
    kind: str = "move"


EditOp = Union[Insert, Delete, Update, Move]


@dataclass
class EditScript:
    ops: tuple[EditOp, ...]
    mapping: NodeMapping
    source: SyntaxTree
    target: SyntaxTree

    def op_is_synthetic(self, op: EditOp) -> bool:
        """Ops touching wrapper scaffolding, excluded from diff output."""
        if isinstance(op, Insert):
            if self.target.node(op.node).synthetic:
                return True
            return op.parent is not None and self.target.node(op.parent).synthetic and not any(
                not self.target.node(d).synthetic for d in self.target.preorder(op.node)
            )
        if isinstance(op, (Delete,)):
            return self.source.node(op.node).synthetic
        if isinstance(op, Update):
            return self.source.node(op.node).synthetic
        if isinstance(op, Move):
            return self.source.node(op.node).synthetic
        return False

    @property
    def visible_ops(self) -> tuple[EditOp, ...]:
        return tuple(op for op in self.ops if not self.op_is_synthetic(op))

    def __len__(self) -> int:
        return len(self.ops)


# --- generation -----------------------------------------------------------

_ROOT = ("virtual-root",)


class _WorkTree:
    """Mutable shadow of the source tree keyed by ('a', id) / ('b', id)."""

    def __init__(self, src: SyntaxTree):
        self.children: dict = {_ROOT: [("a", src.root)]}
        self.parents: dict = {("a", src.root): _ROOT}
        self.values: dict = {}
        for nid in src.preorder():
            wid = ("a", nid)
            self.children[wid] = [("a", c) for c in src.children(nid)]
            for c in src.children(nid):
                self.parents[("a", c)] = wid
            self.values[wid] = src.value(nid)

    def index_of(self, wid) -> int:
        return self.children[self.parents[wid]].index(wid)

    def detach(self, wid) -> None:
        p = self.parents.pop(wid)
        self.children[p].remove(wid)

    def insert(self, wid, parent, index: int) -> None:
        if parent not in self.children:
            raise InvalidScript(f"unknown parent {parent!r}")
        kids = self.children[parent]
        if not 0 <= index <= len(kids):
            raise InvalidScript(f"index {index} out of range for {parent!r}")
        kids.insert(index, wid)
        self.parents[wid] = parent
        self.children.setdefault(wid, [])


def compute_edit_script(
    a: SyntaxTree,
    b: SyntaxTree,
    mapping: NodeMapping | None = None,
    config: MatchConfig | None = None,
) -> EditScript:
    """Ops transforming `a` into `b` under the mapping: Updates on mapped
    value-differing nodes, Inserts for unmapped target nodes, Deletes for
    unmapped source nodes, Moves for mapped nodes whose parents or sibling
    order disagree."""
    if mapping is None:
        mapping = match_trees(a, b, config)
    ops: list[EditOp] = []
    work = _WorkTree(a)

    w_of_b: dict[int, tuple] = {}
    for anid, bnid in mapping.a2b.items():
        w_of_b[bnid] = ("a", anid)

    in_order_b: set[int] = set()
    in_order_w: set = set()

    def partner_parent(bnid: int):
        p = b.parent(bnid)
        return _ROOT if p is None else w_of_b.get(p)

    def find_pos(x: int) -> int:
        y = b.parent(x)
        siblings = b.children(y) if y is not None else (x,)
        left = [s for s in siblings if s == x or s in in_order_b]
        try:
            at = left.index(x)
        except ValueError:
            return 0
        if at == 0:
            return 0
        v = left[at - 1]
        u = w_of_b[v]
        return work.index_of(u) + 1

    def align_children(w, x: int) -> None:
        wc = work.children[w]
        xc = b.children(x)
        s1 = [
            c
            for c in wc
            if c[0] == "a" and mapping.has_a(c[1]) and b.parent(mapping.a2b[c[1]]) == x
        ]
        s2 = [
            c
            for c in xc
            if mapping.has_b(c) and work.parents.get(("a", mapping.b2a[c])) == w
        ]
        lcs = _child_lcs(s1, s2, mapping)
        for wc_node, bc in lcs:
            in_order_w.add(wc_node)
            in_order_b.add(bc)
        in_lcs_b = {bc for _, bc in lcs}
        for bc in s2:
            if bc in in_lcs_b:
                continue
            wc_node = ("a", mapping.b2a[bc])
            if wc_node not in s1:
                continue
            work.detach(wc_node)
            k = find_pos(bc)
            ops.append(Move(mapping.b2a[bc], b.parent(bc), k))
            work.insert(wc_node, w, k)
            in_order_w.add(wc_node)
            in_order_b.add(bc)

    for x in b.bfs():
        if not mapping.has_b(x):
            z = partner_parent(x)
            if z is None:
                raise InvalidScript("parent of inserted node not yet materialized")
            k = find_pos(x)
            ops.append(Insert(x, b.parent(x), k))
            wid = ("b", x)
            work.insert(wid, z, k)
            work.values[wid] = b.value(x)
            w_of_b[x] = wid
        else:
            anid = mapping.b2a[x]
            wid = ("a", anid)
            if a.value(anid) != b.value(x):
                ops.append(Update(anid, x))
                work.values[wid] = b.value(x)
            z = partner_parent(x)
            if z is not None and work.parents.get(wid) != z:
                work.detach(wid)
                k = find_pos(x)
                ops.append(Move(anid, b.parent(x), k))
                work.insert(wid, z, k)
        in_order_b.add(x)
        in_order_w.add(w_of_b[x])
        align_children(w_of_b[x], x)

    for anid in a.postorder():
        if not mapping.has_a(anid):
            ops.append(Delete(anid))
            work.detach(("a", anid))

    return EditScript(tuple(ops), mapping, a, b)


def _child_lcs(s1: list, s2: list[int], mapping: NodeMapping) -> list[tuple]:
    n, m = len(s1), len(s2)
    dp = [[0] * (m + 1) for _ in range(n + 1)]

    def eq(w, bc) -> bool:
        return w[0] == "a" and mapping.a2b.get(w[1]) == bc

    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if eq(s1[i], s2[j]):
                dp[i][j] = dp[i + 1][j + 1] + 1
            else:
                dp[i][j] = max(dp[i + 1][j], dp[i][j + 1])
    out = []
    i = j = 0
    while i < n and j < m:
        if eq(s1[i], s2[j]) and dp[i][j] == dp[i + 1][j + 1] + 1:
            out.append((s1[i], s2[j]))
            i += 1
            j += 1
        elif dp[i + 1][j] >= dp[i][j + 1]:
            i += 1
        else:
            j += 1
    return out


# --- apply (round-trip oracle) ---------------------------------------------


def apply_edit_script(a: SyntaxTree, script: EditScript) -> SyntaxTree:
    """Replay the script on a working copy of `a`; the result is isomorphic
    to `script.target` (synthetic wrappers aside)."""
    b = script.target
    work = _WorkTree(a)
    w_of_b: dict[int, tuple] = {
        bnid: ("a", anid) for anid, bnid in script.mapping.a2b.items()
    }

    def resolve_parent(parent: Optional[int]):
        if parent is None:
            return _ROOT
        wid = w_of_b.get(parent)
        if wid is None or wid not in work.children:
            raise InvalidScript(f"op references missing target node {parent}")
        return wid

    for op in script.ops:
        if isinstance(op, Insert):
            wid = ("b", op.node)
            work.insert(wid, resolve_parent(op.parent), op.index)
            work.values[wid] = b.value(op.node)
            w_of_b[op.node] = wid
        elif isinstance(op, Update):
            wid = ("a", op.node)
            if wid not in work.children:
                raise InvalidScript(f"update references missing node {op.node}")
            work.values[wid] = b.value(op.replacement)
        elif isinstance(op, Move):
            wid = ("a", op.node)
            if wid not in work.parents:
                raise InvalidScript(f"move references missing node {op.node}")
            work.detach(wid)
            work.insert(wid, resolve_parent(op.parent), op.index)
        elif isinstance(op, Delete):
            wid = ("a", op.node)
            if wid not in work.parents:
                raise InvalidScript(f"delete references missing node {op.node}")
            work.detach(wid)
        else:  # pragma: no cover
            raise InvalidScript(f"unknown op {op!r}")

    roots = work.children[_ROOT]
    if len(roots) != 1:
        raise InvalidScript(f"script leaves {len(roots)} roots")

    nodes: list[TreeNode] = []

    def origin(wid) -> TreeNode:
        side, nid = wid
        return (a if side == "a" else b).node(nid)

    def emit(wid, parent: Optional[int]) -> int:
        me = len(nodes)
        nodes.append(None)  # type: ignore[arg-type]
        kids = tuple(emit(c, me) for c in work.children[wid])
        o = origin(wid)
        nodes[me] = TreeNode(
            id=me,
            label=o.label,
            value=work.values.get(wid),
            start=o.start,
            end=o.end,
            parent=parent,
            children=kids,
            synthetic=o.synthetic,
        )
        return me

    emit(roots[0], None)
    return SyntaxTree(nodes, b.text)


# --- pruning ----------------------------------------------------------------


def prune_inner_ops(script: EditScript) -> EditScript:
    """Drop ops that modify the inside of other modified subtrees: an op whose
    node is a strict descendant of another op's inserted, deleted, or updated
    subtree is entailed by the outer op."""
    a, b = script.source, script.target
    inserted = {op.node for op in script.ops if isinstance(op, Insert)}
    deleted = {op.node for op in script.ops if isinstance(op, Delete)}
    updated = {op.node for op in script.ops if isinstance(op, Update)}
    updated_b = {script.mapping.a2b[n] for n in updated if script.mapping.has_a(n)}

    def under(tree: SyntaxTree, nid: int, roots: set[int]) -> bool:
        cur = tree.parent(nid)
        while cur is not None:
            if cur in roots:
                return True
            cur = tree.parent(cur)
        return False

    retained = []
    for op in script.ops:
        if isinstance(op, Insert):
            if under(b, op.node, inserted | updated_b):
                continue
        elif isinstance(op, Delete):
            if under(a, op.node, deleted | updated):
                continue
        elif isinstance(op, Update):
            if under(a, op.node, deleted | updated):
                continue
        elif isinstance(op, Move):
            partner = script.mapping.a2b[op.node]
            if under(a, op.node, deleted | updated) or under(
                b, partner, inserted | updated_b
            ):
                continue
        retained.append(op)
    return EditScript(tuple(retained), script.mapping, a, b)


# --- serialization -----------------------------------------------------------


def script_to_document(script: EditScript) -> dict:
    """Stable structured document for an edit script; synthetic ops are
    excluded from diff output."""
    a, b = script.source, script.target
    records = []
    for op in script.visible_ops:
        if isinstance(op, Insert):
            node = b.node(op.node)
            rec = {
                "kind": "insert",
                "node_path": list(b.path(op.node)),
                "label": node.label,
                "parent_path": None if op.parent is None else list(b.path(op.parent)),
                "index": op.index,
            }
            if node.value is not None:
                rec["value"] = node.value
        elif isinstance(op, Delete):
            rec = {
                "kind": "delete",
                "node_path": list(a.path(op.node)),
                "label": a.label(op.node),
            }
        elif isinstance(op, Update):
            rec = {
                "kind": "update",
                "node_path": list(a.path(op.node)),
                "label": a.label(op.node),
                "value": b.value(op.replacement),
            }
        else:
            rec = {
                "kind": "move",
                "node_path": list(a.path(op.node)),
                "label": a.label(op.node),
                "parent_path": None if op.parent is None else list(b.path(op.parent)),
                "index": op.index,
            }
        records.append(rec)
    return {"version": 1, "ops": records}


def script_to_json(script: EditScript) -> str:
    return json.dumps(script_to_document(script), sort_keys=True, indent=2) + "\n"
