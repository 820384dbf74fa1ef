"""Homotopy moves H1-H3, shift moves and a bounded search for equivalence.

Named letter pairs in a move pattern must be neighbours inside one
component; a component boundary breaks adjacency.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .core import (CanonicalForm, HomotopyData, Nanophrase, NanophraseError,
                   PreconditionError)

H1_REMOVE = "H1_remove"
H1_INSERT = "H1_insert"
H2_REMOVE = "H2_remove"
H2_INSERT = "H2_insert"
H3_FORWARD = "H3_forward"
H3_BACKWARD = "H3_backward"
SHIFT = "Shift"


@dataclass(frozen=True)
class MoveInstance:
    """One applicable move.  ``site`` records the letters and positions
    involved; ``result`` is the phrase after the move."""

    kind: str
    site: tuple
    result: Nanophrase


def _slots(p: Nanophrase) -> list[tuple[int, int]]:
    return [(ci, k) for ci, comp in enumerate(p.components) for k in range(len(comp))]


def _adjacent_pairs(p: Nanophrase) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """(x, y) -> list of (component, index of x) where y follows x directly."""
    out: dict = {}
    for ci, comp in enumerate(p.components):
        for k in range(len(comp) - 1):
            x, y = comp[k], comp[k + 1]
            if x != y:
                out.setdefault((x, y), []).append((ci, k))
    return out


def _swap_pairs(p: Nanophrase, sites) -> Nanophrase:
    comps = [list(c) for c in p.components]
    for ci, k in sites:
        comps[ci][k], comps[ci][k + 1] = comps[ci][k + 1], comps[ci][k]
    return Nanophrase._trusted(tuple(map(tuple, comps)), p.proj)


def _h3_sites(p: Nanophrase, adj) -> Iterator[tuple[tuple, tuple, tuple]]:
    """Triples of adjacency sites matching ``uv ... uw ... vw`` in order,
    yielded as ((u, v, w), sites)."""
    order = {s: g for g, s in enumerate(_slots(p))}
    by_first: dict[int, list] = {}
    for (x, y), sites in adj.items():
        for s in sites:
            by_first.setdefault(x, []).append((y, s))
    for (u, v), sites1 in adj.items():
        for s1 in sites1:
            for w, s2 in by_first.get(u, ()):
                if w in (u, v) or order[s2] <= order[s1]:
                    continue
                for s3 in adj.get((v, w), ()):
                    if order[s3] > order[s2]:
                        yield (u, v, w), (s1, s2, s3)


def enumerate_reductions(p: Nanophrase, data: HomotopyData) -> list[MoveInstance]:
    """H1 and H2 removals plus H3 in both directions."""
    out = []
    for ci, comp in enumerate(p.components):
        for k in range(len(comp) - 1):
            if comp[k] == comp[k + 1]:
                out.append(MoveInstance(H1_REMOVE, (comp[k], (ci, k)), p.delete([comp[k]])))
    adj = _adjacent_pairs(p)
    order = {s: g for g, s in enumerate(_slots(p))}
    for (a, b), sites in adj.items():
        if p.proj[a] != data.tau_of(p.proj[b]):
            continue
        for s1 in sites:
            for s2 in adj.get((b, a), ()):
                # first pair must hold the first occurrences
                if order[s2] > order[s1] + 1:
                    out.append(MoveInstance(H2_REMOVE, (a, b, s1, s2), p.delete([a, b])))
    for (a, b, c), sites in _h3_sites(p, adj):
        if data.in_s(p.proj[a], p.proj[b], p.proj[c]):
            out.append(MoveInstance(H3_FORWARD, (a, b, c) + sites, _swap_pairs(p, sites)))
    # backward form BA..CA..CB matches the generic uv..uw..vw scan with
    # (u, v, w) = (B, A, ?) only partially, so scan it directly
    for (b, a), sites1 in adj.items():
        for s1 in sites1:
            for (c, a2), sites2 in adj.items():
                if a2 != a or c in (a, b):
                    continue
                for s2 in sites2:
                    if order[s2] <= order[s1]:
                        continue
                    for s3 in adj.get((c, b), ()):
                        if order[s3] > order[s2] and data.in_s(p.proj[a], p.proj[b], p.proj[c]):
                            sites = (s1, s2, s3)
                            out.append(MoveInstance(H3_BACKWARD, (a, b, c) + sites,
                                                    _swap_pairs(p, sites)))
    return out


def _gaps(p: Nanophrase) -> list[tuple[int, int]]:
    return [(ci, k) for ci, comp in enumerate(p.components) for k in range(len(comp) + 1)]


def _insert(p: Nanophrase, inserts, labels) -> Nanophrase:
    """``inserts``: list of ((component, gap index), letters) in gap order."""
    comps = [list(c) for c in p.components]
    for (ci, k), letters in sorted(inserts, key=lambda t: t[0], reverse=True):
        comps[ci][k:k] = letters
    proj = dict(p.proj)
    proj.update(labels)
    return Nanophrase._trusted(tuple(map(tuple, comps)), proj)


def enumerate_insertions(p: Nanophrase, data: HomotopyData, max_rank: int) -> list[MoveInstance]:
    """H1 and H2 insertions that keep the rank at most ``max_rank``."""
    out = []
    gaps = _gaps(p)
    if p.rank + 1 <= max_rank:
        (x,) = p.fresh_letters(1)
        for g in gaps:
            for a in data.alpha:
                out.append(MoveInstance(H1_INSERT, (x, g, a), _insert(p, [(g, [x, x])], {x: a})))
    if p.rank + 2 <= max_rank:
        x, y = p.fresh_letters(2)
        for i, g1 in enumerate(gaps):
            for g2 in gaps[i:]:
                for b in data.alpha:
                    a = data.tau_of(b)
                    if g1 == g2:
                        ins = [(g1, [x, y, y, x])]
                    else:
                        ins = [(g1, [x, y]), (g2, [y, x])]
                    out.append(MoveInstance(H2_INSERT, (x, y, g1, g2, a, b),
                                            _insert(p, ins, {x: a, y: b})))
    return out


def shift_moves(p: Nanophrase, data: HomotopyData) -> list[MoveInstance]:
    """Rotate each component of length >= 2 by one letter."""
    if data.nu is None:
        raise PreconditionError("shift moves need an involution nu in the homotopy data")
    out = []
    for ci, comp in enumerate(p.components):
        if len(comp) < 2:
            continue
        x = comp[0]
        comps = list(p.components)
        comps[ci] = comp[1:] + comp[:1]
        proj = p.proj
        if x in comp[1:]:
            proj = dict(proj)
            proj[x] = data.nu_of(proj[x])
        out.append(MoveInstance(SHIFT, (ci, x), Nanophrase._trusted(tuple(comps), proj)))
    return out


def shift(p: Nanophrase, data: HomotopyData, component: int) -> Nanophrase:
    """Shift move on one component (0-based); identity on short components."""
    for m in shift_moves(p, data):
        if m.site[0] == component:
            return m.result
    return p


def neighbours(p: Nanophrase, data: HomotopyData, max_rank: int, closed: bool = False) -> list[MoveInstance]:
    moves = enumerate_reductions(p, data) + enumerate_insertions(p, data, max_rank)
    if closed:
        moves += shift_moves(p, data)
    return moves


@dataclass(frozen=True)
class EquivResult:
    equivalent: bool
    path_length: int | None
    states: int

    def __str__(self):
        if self.equivalent:
            unit = "move" if self.path_length == 1 else "moves"
            return f"EQUIVALENT ({self.path_length} {unit})"
        return f"UNKNOWN ({self.states} states explored)"


def bounded_equiv(p: Nanophrase, q: Nanophrase, data: HomotopyData, max_rank: int,
                  max_states: int = 100_000, closed: bool = False) -> EquivResult:
    """Breadth-first search from ``p`` for ``q`` over isomorphism classes.

    A positive answer is a proof of (closed) homotopy; a negative one only
    means nothing was found within the rank and state bounds.
    """
    if p.n_components != q.n_components:
        raise NanophraseError("phrases have different component counts")
    if closed and data.nu is None:
        raise PreconditionError("closed homotopy needs nu")
    start, goal = p.canonical(), q.canonical()
    if start == goal:
        return EquivResult(True, 0, 1)
    max_rank = max(max_rank, p.rank, q.rank)
    seen: set[CanonicalForm] = {start}
    frontier = deque([(start, 0)])
    while frontier:
        form, dist = frontier.popleft()
        for m in neighbours(form.to_phrase(), data, max_rank, closed):
            key = m.result.canonical()
            if key in seen:
                continue
            if key == goal:
                return EquivResult(True, dist + 1, len(seen) + 1)
            if len(seen) >= max_states:
                return EquivResult(False, None, len(seen))
            seen.add(key)
            frontier.append((key, dist + 1))
    return EquivResult(False, None, len(seen))
