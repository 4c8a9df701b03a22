"""Tree matching: greedy top-down isomorphic subtree matching, then
bottom-up container matching by descendant-mapping dice, with a leaf-level
recovery pass inside matched containers.

Defaults (minimum subtree height 2, dice threshold 0.5) are the usual
choices for this two-phase scheme and are exposed via MatchConfig.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Optional

from .tree import SyntaxTree


@dataclass(frozen=True)
class MatchConfig:
    min_height: int = 2
    dice_threshold: float = 0.5


class NodeMapping:
    """Injective, label-consistent node correspondence between two trees."""

    def __init__(self, a: SyntaxTree, b: SyntaxTree):
        self.a = a
        self.b = b
        self.a2b: dict[int, int] = {}
        self.b2a: dict[int, int] = {}

    def add(self, anid: int, bnid: int) -> None:
        assert anid not in self.a2b and bnid not in self.b2a, "mapping not injective"
        assert self.a.label(anid) == self.b.label(bnid), "mapped labels differ"
        assert self.a.node(anid).synthetic == self.b.node(bnid).synthetic, (
            "scaffolding only matches scaffolding"
        )
        self.a2b[anid] = bnid
        self.b2a[bnid] = anid

    def has_a(self, anid: int) -> bool:
        return anid in self.a2b

    def has_b(self, bnid: int) -> bool:
        return bnid in self.b2a

    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.a2b.items())

    def __len__(self) -> int:
        return len(self.a2b)


def structure_keys(tree: SyntaxTree) -> list:
    """Per-node structural keys: equal keys iff subtrees are isomorphic
    (labels and values)."""
    keys: list = [None] * len(tree.nodes)
    for nid in tree.postorder():
        node = tree.node(nid)
        keys[nid] = (
            node.label,
            node.value,
            node.synthetic,
            tuple(keys[c] for c in node.children),
        )
    return keys


def node_heights(tree: SyntaxTree) -> list[int]:
    h = [1] * len(tree.nodes)
    for nid in tree.postorder():
        node = tree.node(nid)
        if node.children:
            h[nid] = 1 + max(h[c] for c in node.children)
    return h


def _subtree_intervals(tree: SyntaxTree) -> tuple[list[int], list[int]]:
    """preorder index and subtree end index (for O(1) descendant tests)."""
    pre = [0] * len(tree.nodes)
    end = [0] * len(tree.nodes)
    counter = 0

    def walk(nid: int) -> int:
        nonlocal counter
        pre[nid] = counter
        counter += 1
        last = pre[nid]
        for c in tree.node(nid).children:
            last = walk(c)
        end[nid] = last
        return last

    walk(tree.root)
    return pre, end


class _HeightQueue:
    def __init__(self, heights: list[int]):
        self.heights = heights
        self.heap: list[tuple[int, int]] = []

    def push(self, nid: int) -> None:
        heapq.heappush(self.heap, (-self.heights[nid], nid))

    def peek_height(self) -> int:
        return -self.heap[0][0] if self.heap else 0

    def pop_level(self) -> list[int]:
        level = self.peek_height()
        out = []
        while self.heap and -self.heap[0][0] == level:
            out.append(heapq.heappop(self.heap)[1])
        return sorted(out)


def _lcs(xs: list[int], ys: list[int], eq: Callable[[int, int], bool]) -> list[tuple[int, int]]:
    n, m = len(xs), len(ys)
    dp = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if eq(xs[i], ys[j]):
                dp[i][j] = dp[i + 1][j + 1] + 1
            else:
                dp[i][j] = max(dp[i + 1][j], dp[i][j + 1])
    out = []
    i = j = 0
    while i < n and j < m:
        if eq(xs[i], ys[j]) and dp[i][j] == dp[i + 1][j + 1] + 1:
            out.append((xs[i], ys[j]))
            i += 1
            j += 1
        elif dp[i + 1][j] >= dp[i][j + 1]:
            i += 1
        else:
            j += 1
    return out


class _Matcher:
    def __init__(self, a: SyntaxTree, b: SyntaxTree, config: MatchConfig):
        self.a = a
        self.b = b
        self.config = config
        self.mapping = NodeMapping(a, b)
        self.ka = structure_keys(a)
        self.kb = structure_keys(b)
        self.ha = node_heights(a)
        self.hb = node_heights(b)
        self.pre_a, self.end_a = _subtree_intervals(a)
        self.pre_b, self.end_b = _subtree_intervals(b)

    # --- phase 1: greedy top-down -------------------------------------

    def top_down(self) -> None:
        qa = _HeightQueue(self.ha)
        qb = _HeightQueue(self.hb)
        qa.push(self.a.root)
        qb.push(self.b.root)
        min_h = self.config.min_height
        while qa.peek_height() >= min_h and qb.peek_height() >= min_h:
            if qa.peek_height() != qb.peek_height():
                if qa.peek_height() > qb.peek_height():
                    for nid in qa.pop_level():
                        for c in self.a.children(nid):
                            qa.push(c)
                else:
                    for nid in qb.pop_level():
                        for c in self.b.children(nid):
                            qb.push(c)
                continue
            level_a = qa.pop_level()
            level_b = qb.pop_level()
            groups: dict = {}
            for nid in level_a:
                groups.setdefault(self.ka[nid], ([], []))[0].append(nid)
            for nid in level_b:
                groups.setdefault(self.kb[nid], ([], []))[1].append(nid)
            matched_a: set[int] = set()
            matched_b: set[int] = set()
            for key in sorted(groups, key=lambda k: str(k)):
                an, bn = groups[key]
                if not an or not bn:
                    continue
                if len(an) == 1 and len(bn) == 1:
                    self._match_subtrees(an[0], bn[0])
                    matched_a.add(an[0])
                    matched_b.add(bn[0])
                    continue
                # ambiguous: prefer pairs whose parents are also isomorphic,
                # then nearest by preorder position
                cands = sorted(
                    ((x, y) for x in an for y in bn),
                    key=lambda p: (
                        0 if self._parent_keys_equal(p[0], p[1]) else 1,
                        abs(self.pre_a[p[0]] - self.pre_b[p[1]]),
                        self.pre_a[p[0]],
                        self.pre_b[p[1]],
                    ),
                )
                for x, y in cands:
                    if x in matched_a or y in matched_b:
                        continue
                    self._match_subtrees(x, y)
                    matched_a.add(x)
                    matched_b.add(y)
            for nid in level_a:
                if nid not in matched_a:
                    for c in self.a.children(nid):
                        qa.push(c)
            for nid in level_b:
                if nid not in matched_b:
                    for c in self.b.children(nid):
                        qb.push(c)

    def _parent_keys_equal(self, anid: int, bnid: int) -> bool:
        pa, pb = self.a.parent(anid), self.b.parent(bnid)
        if pa is None or pb is None:
            return pa is None and pb is None
        return self.ka[pa] == self.kb[pb]

    def _match_subtrees(self, anid: int, bnid: int) -> None:
        az = list(self.a.preorder(anid))
        bz = list(self.b.preorder(bnid))
        for x, y in zip(az, bz):
            if not self.mapping.has_a(x) and not self.mapping.has_b(y):
                self.mapping.add(x, y)

    # --- phase 2: bottom-up containers ---------------------------------

    def bottom_up(self) -> None:
        for anid in self.a.postorder():
            if anid == self.a.root:
                if (
                    not self.mapping.has_a(anid)
                    and not self.mapping.has_b(self.b.root)
                    and self.a.label(anid) == self.b.label(self.b.root)
                    and self.a.node(anid).synthetic == self.b.node(self.b.root).synthetic
                ):
                    self.mapping.add(anid, self.b.root)
                    self._recover(anid, self.b.root)
                continue
            if self.mapping.has_a(anid) or not self.a.children(anid):
                continue
            best = self._best_candidate(anid)
            if best is not None:
                self.mapping.add(anid, best)
                self._recover(anid, best)

    def _best_candidate(self, anid: int) -> Optional[int]:
        label = self.a.label(anid)
        seen: set[int] = set()
        cands: list[int] = []
        for d in self.a.descendants(anid):
            if not self.mapping.has_a(d):
                continue
            cur = self.b.parent(self.mapping.a2b[d])
            while cur is not None and cur not in seen:
                seen.add(cur)
                if (
                    not self.mapping.has_b(cur)
                    and self.b.label(cur) == label
                    and self.b.node(cur).synthetic == self.a.node(anid).synthetic
                ):
                    cands.append(cur)
                cur = self.b.parent(cur)
        if not cands:
            return None
        scored = sorted(
            ((-self._dice(anid, c), self.pre_b[c], c) for c in cands)
        )
        best_score, _, best = scored[0]
        if -best_score >= self.config.dice_threshold:
            return best
        return None

    def _dice(self, anid: int, bnid: int) -> float:
        da = self.end_a[anid] - self.pre_a[anid]
        db = self.end_b[bnid] - self.pre_b[bnid]
        if da + db == 0:
            return 0.0
        common = 0
        for d in self.a.descendants(anid):
            partner = self.mapping.a2b.get(d)
            if partner is not None and self.pre_b[bnid] < self.pre_b[partner] <= self.end_b[bnid]:
                common += 1
        return 2.0 * common / (da + db)

    # --- recovery: align children inside a matched container -----------

    def _recover(self, anid: int, bnid: int) -> None:
        ca = [c for c in self.a.children(anid) if not self.mapping.has_a(c)]
        cb = [c for c in self.b.children(bnid) if not self.mapping.has_b(c)]
        if not ca or not cb:
            return
        for x, y in _lcs(ca, cb, lambda x, y: self.ka[x] == self.kb[y]):
            self._match_subtrees(x, y)
        ca = [c for c in ca if not self.mapping.has_a(c)]
        cb = [c for c in cb if not self.mapping.has_b(c)]
        for x, y in _lcs(
            ca,
            cb,
            lambda x, y: self.a.label(x) == self.b.label(y)
            and self.a.node(x).synthetic == self.b.node(y).synthetic,
        ):
            self.mapping.add(x, y)
            self._recover(x, y)


def match_trees(
    a: SyntaxTree, b: SyntaxTree, config: MatchConfig | None = None
) -> NodeMapping:
    """Compute an injective, label-consistent mapping; identical trees map
    every node."""
    matcher = _Matcher(a, b, config or MatchConfig())
    matcher.top_down()
    matcher.bottom_up()
    return matcher.mapping
