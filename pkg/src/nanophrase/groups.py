"""Universal finite type groups G_n and their structure.

G_n is the free abelian group on isomorphism classes of r-component phrases
of rank at most n, modulo the move relations written in the subphrase-sum
basis, with every term of rank above n dropped.  Its structure comes from
the Smith normal form of the relation matrix, and ``gamma`` lands in it
through :func:`gamma_coordinates`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Sequence

from . import kernels
from .core import (CanonicalForm, HomotopyData, Nanophrase, NanophraseError,
                   PreconditionError, trivial_form)
from .formal import gamma
from .moves import H1_REMOVE, H2_REMOVE, H3_FORWARD, enumerate_reductions, shift_moves
from .snf import EchelonBasis, smith_normal_form


# ---------------------------------------------------------------------------
# Generators


def gauss_words(k: int):
    """All Gauss words of rank ``k`` with letters numbered by first occurrence."""
    word: list[int] = []
    count = [0] * k

    def rec(opened: int):
        if len(word) == 2 * k:
            yield tuple(word)
            return
        if opened < k:
            word.append(opened)
            count[opened] += 1
            yield from rec(opened + 1)
            count[opened] -= 1
            word.pop()
        for x in range(opened):
            if count[x] == 1:
                word.append(x)
                count[x] = 2
                yield from rec(opened)
                count[x] = 1
                word.pop()

    yield from rec(0)


def compositions(total: int, parts: int):
    """Ordered tuples of ``parts`` non-negative ints summing to ``total``."""
    for cuts in combinations_with_replacement(range(total + 1), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def enumerate_phrases(data: HomotopyData, r: int, max_rank: int) -> list[CanonicalForm]:
    """Every isomorphism class of r-component phrases over alpha with rank at
    most ``max_rank``, sorted by (rank, canonical text)."""
    if max_rank < 0:
        raise NanophraseError("max_rank must be non-negative")
    if r < 1:
        raise NanophraseError("need at least one component")
    seen: set = set()
    for k in range(max_rank + 1):
        splits = list(compositions(2 * k, r))
        labelings = list(product(data.alpha, repeat=k))
        for w in gauss_words(k):
            for lengths in splits:
                for proj in labelings:
                    seen.add(kernels.canonicalize(w, lengths, proj))
    forms = [CanonicalForm._make(f) for f in seen]
    forms.sort(key=CanonicalForm.sort_key)
    return forms


# ---------------------------------------------------------------------------
# Relations


def _minus(form: CanonicalForm, *letters: int) -> CanonicalForm:
    mask = (1 << form.rank) - 1
    for x in letters:
        mask &= ~(1 << x)
    return CanonicalForm._make(kernels.restrict(form.word, form.lengths, form.proj, mask))


def relation_terms(base: CanonicalForm, data: HomotopyData, n: int) -> list[dict]:
    """Type 2 and 3 relations contributed by one base phrase, as
    ``{form: coefficient}`` dicts already truncated at rank ``n``."""
    p = base.to_phrase()
    out = []
    for m in enumerate_reductions(p, data):
        if m.kind == H2_REMOVE:
            a, b = m.site[:2]
            terms = [(1, base), (1, _minus(base, b)), (1, _minus(base, a))]
        elif m.kind == H3_FORWARD:
            a, b, c = m.site[:3]
            img = m.result  # same letter ids as the base
            right = img.canonical()
            terms = [(1, base), (1, _minus(base, c)), (1, _minus(base, b)), (1, _minus(base, a)),
                     (-1, right)]
            terms += [(-1, img.delete([x]).canonical()) for x in (c, b, a)]
        else:
            continue
        rel: dict = {}
        for coef, f in terms:
            if f.rank <= n:
                rel[f] = rel.get(f, 0) + coef
        rel = {f: c for f, c in rel.items() if c}
        if rel:
            out.append(rel)
    return out


def _relation_chunk(args):
    bases, data, n = args
    return [relation_terms(b, data, n) for b in bases]


@dataclass
class GroupPresentation:
    """Generators (canonical forms) and sparse relation rows over them."""

    data: HomotopyData
    r: int
    n: int
    closed: bool
    generators: list[CanonicalForm]
    rows: list[dict] = field(default_factory=list)

    def __post_init__(self):
        self.index = {g: i for i, g in enumerate(self.generators)}

    def dense(self) -> list[list[int]]:
        N = len(self.generators)
        out = []
        for row in self.rows:
            v = [0] * N
            for c, x in row.items():
                v[c] = x
            out.append(v)
        return out

    def tsv_lines(self) -> list[str]:
        lines = ["# generators"]
        lines += [f"{i}\t{g.text}" for i, g in enumerate(self.generators)]
        lines.append("# relations")
        for row in self.rows:
            lines.append("\t".join(f"{row[c]}*{self.generators[c].text}" for c in sorted(row)))
        return lines


def _normalize_row(row: dict) -> tuple:
    items = sorted(row.items())
    if items and items[0][1] < 0:
        items = [(c, -v) for c, v in items]
    return tuple(items)


def generate_relations(data: HomotopyData, r: int, n: int, closed: bool = False,
                       jobs: int = 1) -> GroupPresentation:
    """Presentation of G_n (or its closed version) on all phrases of rank <= n."""
    if n < 0:
        raise NanophraseError("n must be non-negative")
    if closed and data.nu is None:
        raise PreconditionError("closed homotopy needs nu in the homotopy data")
    bases = enumerate_phrases(data, r, n + 1)
    gens = [f for f in bases if f.rank <= n]
    pres = GroupPresentation(data, r, n, closed, gens)
    index = pres.index
    seen: set = set()

    def push(rel: dict):
        row = {index[f]: c for f, c in rel.items()}
        key = _normalize_row(row)
        if key and key not in seen:
            seen.add(key)
            pres.rows.append(dict(key))

    for g in gens:
        if any(m.kind == H1_REMOVE for m in enumerate_reductions(g.to_phrase(), data)):
            push({g: 1})
    if jobs > 1 and len(bases) > 1:
        size = max(1, len(bases) // (4 * jobs))
        chunks = [(bases[i:i + size], data, n) for i in range(0, len(bases), size)]
        with ProcessPoolExecutor(jobs) as pool:
            results = [rels for part in pool.map(_relation_chunk, chunks) for rels in part]
    else:
        results = [relation_terms(b, data, n) for b in bases]
    for rels in results:
        for rel in rels:
            push(rel)
    if closed:
        for g in gens:
            for m in shift_moves(g.to_phrase(), data):
                h = m.result.canonical()
                if h != g:
                    push({g: 1, h: -1})
    return pres


# ---------------------------------------------------------------------------
# Structure


def format_group(free_rank: int, torsion: Sequence[int]) -> str:
    parts = []
    if free_rank:
        parts.append("Z" if free_rank == 1 else f"Z^{free_rank}")
    parts += [f"Z/{d}" for d in torsion]
    return " (+) ".join(parts) if parts else "0"


@dataclass
class AbelianGroupStructure:
    """Cokernel of a relation matrix in invariant-factor form.

    Coordinates list the free part first, then one residue per torsion
    factor.  ``columns[k]`` maps a generator-coefficient vector to
    coordinate ``k`` (a column of the Smith column transform).
    """

    presentation: GroupPresentation
    free_rank: int
    torsion: list[int]
    moduli: list[int]
    columns: list[list[int]]
    dropped: tuple = ()

    @property
    def generators(self):
        return self.presentation.generators

    @property
    def r(self) -> int:
        return self.presentation.r

    @property
    def n(self) -> int:
        return self.presentation.n

    def coordinates(self, vector: dict) -> tuple[int, ...]:
        """Coordinates of ``{generator index: coefficient}``."""
        out = []
        for col, mod in zip(self.columns, self.moduli):
            y = sum(c * col[g] for g, c in vector.items())
            out.append(y % mod if mod else y)
        return tuple(out)

    def coordinates_of_sum(self, terms: dict) -> tuple[int, ...]:
        index = self.presentation.index
        vec = {}
        for f, c in terms.items():
            if f not in index:
                raise NanophraseError(f"{f.text} is not a generator of this group")
            if index[f] not in self.dropped:
                vec[index[f]] = c
        return self.coordinates(vec)

    def __str__(self):
        return format_group(self.free_rank, self.torsion)


def structure_of(pres: GroupPresentation, drop_trivial: bool = False) -> AbelianGroupStructure:
    """Smith normal form of a presentation, optionally without the trivial
    phrase generator (which leaves the non-trivial part H_n)."""
    N = len(pres.generators)
    dropped: tuple = ()
    keep = list(range(N))
    if drop_trivial:
        t = pres.index[trivial_form(pres.r)]
        dropped = (t,)
        keep = [c for c in keep if c != t]
    pos = {c: i for i, c in enumerate(keep)}
    basis = EchelonBasis()
    for row in pres.rows:
        basis.add({pos[c]: v for c, v in row.items() if c in pos})
    reduced = []
    for row in basis.rows():
        v = [0] * len(keep)
        for c, x in row.items():
            v[c] = x
        reduced.append(v)
    factors, _, V = smith_normal_form(reduced, ncols=len(keep), want_row_transform=False)
    free_cols, tors_cols, torsion = [], [], []
    for t in range(len(keep)):
        d = factors[t] if t < len(factors) else 0
        if d == 1:
            continue
        col = [0] * N
        for i, c in enumerate(keep):
            col[c] = V[i][t]
        if d == 0:
            free_cols.append(col)
        else:
            tors_cols.append(col)
            torsion.append(d)
    return AbelianGroupStructure(pres, len(free_cols), torsion,
                                 [0] * len(free_cols) + torsion,
                                 free_cols + tors_cols, dropped)


def group_structure(data: HomotopyData, r: int, n: int, closed: bool = False,
                    jobs: int = 1) -> AbelianGroupStructure:
    return structure_of(generate_relations(data, r, n, closed, jobs))


def h_structure(data: HomotopyData, r: int, n: int, closed: bool = False,
                jobs: int = 1) -> AbelianGroupStructure:
    """The summand H_n: G_n with the trivial phrase generator removed."""
    return structure_of(generate_relations(data, r, n, closed, jobs), drop_trivial=True)


def gamma_coordinates(p: Nanophrase, structure: AbelianGroupStructure, n: int | None = None,
                      normalize: bool = False) -> tuple[int, ...]:
    """Coordinates of ``gamma(n, p)`` in ``structure``.

    With ``normalize`` the coordinates of the trivial phrase are subtracted,
    so the trivial phrase maps to the zero vector.
    """
    if n is not None and n != structure.n:
        raise NanophraseError(f"structure was built for n={structure.n}, not {n}")
    if p.n_components != structure.r:
        raise NanophraseError("phrase and structure have different component counts")
    alpha = set(structure.presentation.data.alpha)
    if any(a not in alpha for a in p.proj.values()):
        raise NanophraseError("phrase uses symbols outside the structure's alphabet")
    g = gamma(structure.n, p)
    coords = structure.coordinates_of_sum(g.terms)
    if normalize:
        base = structure.coordinates_of_sum(gamma(structure.n, Nanophrase.trivial(structure.r)).terms)
        coords = tuple((x - y) % m if m else x - y
                       for x, y, m in zip(coords, base, structure.moduli))
    return coords
