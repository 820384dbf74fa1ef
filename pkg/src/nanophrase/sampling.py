"""Seeded random phrases and random move pairs for property checks."""

from __future__ import annotations

import random

from .core import HomotopyData, Nanophrase
from .formal import FormalSum
from .moves import shift_moves


def random_phrase(rng: random.Random, data: HomotopyData, r: int, rank: int) -> Nanophrase:
    """Uniform Gauss word of the given rank, cut at random into ``r``
    components, with independent uniform labels."""
    word = [x for x in range(rank) for _ in range(2)]
    rng.shuffle(word)
    cuts = sorted(rng.randint(0, len(word)) for _ in range(r - 1))
    bounds = [0] + cuts + [len(word)]
    comps = tuple(tuple(word[bounds[i]:bounds[i + 1]]) for i in range(r))
    proj = {x: rng.choice(data.alpha) for x in range(rank)}
    return Nanophrase._trusted(comps, proj)


def random_formal_sum(rng: random.Random, data: HomotopyData, r: int, max_rank: int,
                      terms: int = 4) -> FormalSum:
    items = [(rng.randint(-3, 3), random_phrase(rng, data, r, rng.randint(0, max_rank)))
             for _ in range(terms)]
    return FormalSum.of(*items) if any(c for c, _ in items) else FormalSum(n_components=r)


def _insert_at(p: Nanophrase, pieces, labels) -> Nanophrase:
    """``pieces``: list of (global gap number, letters); equal gaps keep
    their list order."""
    comps = [list(c) for c in p.components]
    gaps = [(ci, k) for ci, c in enumerate(comps) for k in range(len(c) + 1)]
    for _, (g, letters) in sorted(enumerate(pieces), key=lambda t: (t[1][0], t[0]), reverse=True):
        ci, k = gaps[g]
        comps[ci][k:k] = letters
    proj = dict(p.proj)
    proj.update(labels)
    return Nanophrase._trusted(tuple(map(tuple, comps)), proj)


def move_kinds(data: HomotopyData, closed: bool = False) -> list[str]:
    kinds = ["H1", "H2"]
    if data.s_set:
        kinds.append("H3")
    if closed and data.nu is not None:
        kinds.append("Shift")
    return kinds


def random_move_pair(rng: random.Random, data: HomotopyData, r: int, rank: int,
                     kind: str | None = None, closed: bool = False):
    """Two phrases related by one move of the chosen (or random) kind.

    The move site is planted into a random phrase of the given rank, so every
    kind occurs regardless of how rare its pattern is in random words.
    Returns ``(kind, before, after)``.
    """
    kind = kind or rng.choice(move_kinds(data, closed))
    p = random_phrase(rng, data, r, rank)
    n_gaps = sum(len(c) + 1 for c in p.components)
    if kind == "Shift":
        moves = shift_moves(p, data)
        if not moves:
            return kind, p, p
        return kind, p, rng.choice(moves).result
    a, b, c = rank, rank + 1, rank + 2
    if kind == "H1":
        g = rng.randrange(n_gaps)
        q = _insert_at(p, [(g, [a, a])], {a: rng.choice(data.alpha)})
        return kind, q, p
    if kind == "H2":
        g1, g2 = sorted(rng.randrange(n_gaps) for _ in range(2))
        sb = rng.choice(data.alpha)
        labels = {a: data.tau_of(sb), b: sb}
        q = _insert_at(p, [(g1, [a, b]), (g2, [b, a])], labels)
        return kind, q, p
    if kind == "H3":
        g1, g2, g3 = sorted(rng.randrange(n_gaps) for _ in range(3))
        sa, sb, sc = rng.choice(sorted(data.s_set))
        labels = {a: sa, b: sb, c: sc}
        left = _insert_at(p, [(g1, [a, b]), (g2, [a, c]), (g3, [b, c])], labels)
        right = _insert_at(p, [(g1, [b, a]), (g2, [c, a]), (g3, [c, b])], labels)
        return kind, left, right
    raise ValueError(f"unknown move kind {kind!r}")
