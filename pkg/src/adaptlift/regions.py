"""Change regions: the example-side intervals a pruned edit script touches,
with the counterpart text that replaces each interval.

Regions from one counterpart are merged when they overlap or touch; pruned
moves are recovered through the mapping (a statement swallowed by an inserted
block extends the insert's example interval; a statement surviving a deleted
block contributes its counterpart text to the delete's replacement).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .classify import AdaptationInstance
from .editscript import Delete, EditOp, EditScript, Insert, Move, Update
from .taxonomy import Category

Span = tuple[int, int]


@dataclass
class ChangeRegion:
    span: Span  # interval in the example text
    replacement: str  # counterpart text for the interval
    counterpart_id: str
    categories: set[Category] = field(default_factory=set)
    instances: tuple[AdaptationInstance, ...] = ()
    ops: tuple[EditOp, ...] = ()


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return min(pos, len(text))


@dataclass
class _Atom:
    a: Span
    b: Optional[Span]
    op: EditOp


def _mapped_a_hull(script: EditScript, bnid: int) -> Optional[Span]:
    spans = [
        script.source.node(script.mapping.b2a[d]).span
        for d in script.target.preorder(bnid)
        if script.mapping.has_b(d)
    ]
    if not spans:
        return None
    return (min(s for s, _ in spans), max(e for _, e in spans))


def _mapped_b_hull(script: EditScript, anid: int) -> Optional[Span]:
    spans = [
        script.target.node(script.mapping.a2b[d]).span
        for d in script.source.preorder(anid)
        if script.mapping.has_a(d)
    ]
    if not spans:
        return None
    return (min(s for s, _ in spans), max(e for _, e in spans))


def _anchor_for_b_position(script: EditScript, bnid: int) -> int:
    """Example-side position corresponding to a target node's slot."""
    a, b, mapping = script.source, script.target, script.mapping
    parent = b.parent(bnid)
    while parent is not None and not mapping.has_b(parent):
        bnid, parent = parent, b.parent(parent)
    if parent is None:
        return 0
    siblings = b.children(parent)
    at = siblings.index(bnid)
    for s in reversed(siblings[:at]):
        anid = mapping.b2a.get(s)
        if anid is not None:
            return _skip_ws(a.text, a.node(anid).end)
    for s in siblings[at + 1 :]:
        anid = mapping.b2a.get(s)
        if anid is not None:
            return a.node(anid).start
    pa = mapping.b2a[parent]
    kids = [c for c in a.children(pa) if not a.node(c).synthetic]
    if kids:
        return a.node(kids[0]).start
    node = a.node(pa)
    if node.synthetic:
        return 0
    # childless container: insert just before its closing token
    if node.end > node.start and a.text[node.end - 1] in ")}]":
        return node.end - 1
    return node.end


def _atoms_for_op(script: EditScript, op: EditOp) -> list[_Atom]:
    a, b = script.source, script.target
    if isinstance(op, Update):
        return [_Atom(a.node(op.node).span, b.node(op.replacement).span, op)]
    if isinstance(op, Delete):
        return [_Atom(a.node(op.node).span, _mapped_b_hull(script, op.node), op)]
    if isinstance(op, Insert):
        hull = _mapped_a_hull(script, op.node)
        if hull is None:
            pos = _anchor_for_b_position(script, op.node)
            hull = (pos, pos)
        return [_Atom(hull, b.node(op.node).span, op)]
    if isinstance(op, Move):
        partner = script.mapping.a2b[op.node]
        pos = _anchor_for_b_position(script, partner)
        return [
            _Atom(a.node(op.node).span, None, op),
            _Atom((pos, pos), b.node(partner).span, op),
        ]
    return []


def change_regions(
    script: EditScript,
    counterpart_id: str,
    instances: list[AdaptationInstance] | None = None,
) -> list[ChangeRegion]:
    """Merged, disjoint example-side regions for one counterpart's diff."""
    atoms: list[_Atom] = []
    for op in script.visible_ops:
        atoms.extend(_atoms_for_op(script, op))
    if not atoms:
        return []
    atoms.sort(key=lambda at: (at.a[0], at.a[1]))

    groups: list[list[_Atom]] = [[atoms[0]]]
    cur_end = atoms[0].a[1]
    for atom in atoms[1:]:
        if atom.a[0] <= cur_end:
            groups[-1].append(atom)
            cur_end = max(cur_end, atom.a[1])
        else:
            groups.append([atom])
            cur_end = atom.a[1]

    out: list[ChangeRegion] = []
    example_text = script.source.text
    target_text = script.target.text
    for group in groups:
        span = (min(at.a[0] for at in group), max(at.a[1] for at in group))
        b_spans = [at.b for at in group if at.b is not None]
        if b_spans:
            bs = min(s for s, _ in b_spans)
            be = max(e for _, e in b_spans)
            replacement = target_text[bs:be]
        else:
            replacement = ""
        if replacement == example_text[span[0] : span[1]]:
            continue  # not a real change at text level
        ops = tuple(dict.fromkeys(at.op for at in group))
        insts: tuple[AdaptationInstance, ...] = ()
        cats: set[Category] = set()
        if instances:
            here = [
                inst
                for inst in instances
                if any(op in inst.ops for op in ops)
            ]
            insts = tuple(here)
            cats = {inst.category for inst in here}
        out.append(
            ChangeRegion(
                span=span,
                replacement=replacement,
                counterpart_id=counterpart_id,
                categories=cats,
                instances=insts,
                ops=ops,
            )
        )
    return out
