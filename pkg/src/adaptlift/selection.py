"""Interactive selection state over a lifted template: explicit choices,
def-use auto-selection, counterpart filtering, and undo.

States are immutable; select/undo return new states with the prior state on
the history stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .template import FixedText, LiftedTemplate


class ConflictingSelection(Exception):
    """Auto-selection would overwrite an explicit, different choice."""

    def __init__(self, hotspot: int, wanted: int, existing: int):
        super().__init__(
            f"hot spot {hotspot}: def-use linked option {wanted} conflicts with "
            f"explicit choice {existing}"
        )
        self.hotspot = hotspot
        self.wanted = wanted
        self.existing = existing


class EmptyHistory(Exception):
    pass


@dataclass(frozen=True)
class SelectionState:
    explicit: tuple[tuple[int, int], ...] = ()
    auto: tuple[tuple[int, int], ...] = ()
    history: tuple["SelectionState", ...] = ()

    @property
    def chosen(self) -> dict[int, int]:
        """hotspot index -> option index; explicit choices win over auto."""
        merged = dict(self.auto)
        merged.update(dict(self.explicit))
        return merged

    def explicit_map(self) -> dict[int, int]:
        return dict(self.explicit)

    def auto_map(self) -> dict[int, int]:
        return dict(self.auto)


def _closure(
    template: LiftedTemplate, explicit: dict[int, int]
) -> dict[int, int]:
    """Auto choices demanded by def-use edges, transitively."""
    demands: dict[int, int] = {}
    frontier = [(h, o) for h, o in explicit.items() if o != 0]
    seen = set(frontier)
    while frontier:
        h, o = frontier.pop(0)
        for end_a, end_b in sorted(template.defuse_edges):
            for src, dst in ((end_a, end_b), (end_b, end_a)):
                if src != (h, o):
                    continue
                dh, do = dst
                if dh in explicit:
                    if explicit[dh] != do:
                        raise ConflictingSelection(dh, do, explicit[dh])
                    continue
                if dh in demands and demands[dh] != do:
                    raise ConflictingSelection(dh, do, demands[dh])
                if dh not in demands:
                    demands[dh] = do
                    if (dh, do) not in seen:
                        seen.add((dh, do))
                        frontier.append((dh, do))
    return demands


def select_option(
    template: LiftedTemplate, state: SelectionState, hotspot: int, option: int
) -> SelectionState:
    """Choose an option; def-use-linked options from the same counterpart are
    auto-chosen. Raises ConflictingSelection (state unchanged) when the
    linked choices would overwrite an explicit different one."""
    hotspots = template.hotspots
    if not 0 <= hotspot < len(hotspots):
        raise KeyError(f"unknown hot spot {hotspot}")
    if not 0 <= option < len(hotspots[hotspot].options):
        raise KeyError(f"hot spot {hotspot} has no option {option}")
    explicit = state.explicit_map()
    explicit[hotspot] = option
    auto = _closure(template, explicit)  # raises before any mutation
    return SelectionState(
        explicit=tuple(sorted(explicit.items())),
        auto=tuple(sorted(auto.items())),
        history=state.history + (state,),
    )


def undo(state: SelectionState) -> SelectionState:
    if not state.history:
        raise EmptyHistory("nothing to undo")
    return state.history[-1]


def active_counterparts(
    template: LiftedTemplate, state: SelectionState
) -> frozenset[str]:
    """Counterparts consistent with every chosen non-original option."""
    full = frozenset(template.counterpart_ids())
    chosen = state.chosen
    active = full
    hotspots = template.hotspots
    for h, o in chosen.items():
        if o == 0:
            continue
        active &= hotspots[h].options[o].contributors
    return active


def render(template: LiftedTemplate, state: SelectionState) -> str:
    """Fixed segments plus chosen option contents in document order."""
    chosen = state.chosen
    out = []
    hotspot_index = 0
    for seg in template.segments:
        if isinstance(seg, FixedText):
            out.append(seg.text)
        else:
            o = chosen.get(hotspot_index, 0)
            out.append(seg.options[o].content)
            hotspot_index += 1
    return "".join(out)


def option_frequencies(
    template: LiftedTemplate, state: SelectionState
) -> list[list[int]]:
    """Frequencies relative to the active counterpart set, per hot spot."""
    active = active_counterparts(template, state)
    out = []
    for hs in template.hotspots:
        row = [len(active & opt.contributors) for opt in hs.options]
        out.append(row)
    return out
