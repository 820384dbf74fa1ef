"""Concrete homotopy invariants of nanophrases.

Component indices are 1-based throughout, matching the usual notation
``l_ij``, ``T^i_{a,b}``, ``u_{i,j,a,b}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (HomotopyData, Nanophrase, NanophraseError, PreconditionError,
                   parse_nanophrase, subforms)
from .formal import FormalSum, angle_bracket, as_form, subphrase_counts


@dataclass(frozen=True)
class TaggedValue:
    """An integer (``modulus == 0``) or a residue in ``[0, modulus)``."""

    value: int
    modulus: int = 0

    def __post_init__(self):
        if self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other):
        if self.modulus != other.modulus:
            raise NanophraseError("cannot add values with different moduli")

    def __add__(self, other):
        if isinstance(other, int):
            other = TaggedValue(other, self.modulus)
        self._check(other)
        return TaggedValue(self.value + other.value, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return TaggedValue(-self.value, self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return TaggedValue(k * self.value, self.modulus)

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return f"{self.value} (mod {self.modulus})" if self.modulus else str(self.value)


class PiElement:
    """Element of the abelian group on alpha with relations ``a + tau(a) = 0``.

    Stored in orientation coordinates: integer coefficients for free orbits,
    bits for fixed points.
    """

    __slots__ = ("orientation", "moduli", "coeffs")

    def __init__(self, orientation: tuple, moduli: tuple, coeffs: tuple):
        self.orientation = orientation
        self.moduli = moduli
        self.coeffs = tuple(c % m if m else c for c, m in zip(coeffs, moduli))

    @classmethod
    def zero(cls, data: HomotopyData) -> "PiElement":
        o = data.orientation
        return cls(o, tuple(2 if data.is_fixed(a) else 0 for a in o), (0,) * len(o))

    @classmethod
    def from_symbol(cls, data: HomotopyData, a: str) -> "PiElement":
        z = cls.zero(data)
        coeffs = list(z.coeffs)
        if a in z.orientation:
            coeffs[z.orientation.index(a)] = 1
        else:
            coeffs[z.orientation.index(data.tau_of(a))] = -1
        return cls(z.orientation, z.moduli, tuple(coeffs))

    def coefficient(self, a: str) -> int:
        return self.coeffs[self.orientation.index(a)]

    def __add__(self, other):
        return PiElement(self.orientation, self.moduli,
                         tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int):
        return PiElement(self.orientation, self.moduli, tuple(k * c for c in self.coeffs))

    def __neg__(self):
        return -1 * self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, PiElement) and self.orientation == other.orientation
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.orientation, self.coeffs))

    def __str__(self):
        terms = [f"{c}·{a}" for a, c in zip(self.orientation, self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


class LinkingMatrix:
    """Symmetric r x r matrix of :class:`PiElement` with zero diagonal."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other):
        return LinkingMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __rmul__(self, k: int):
        return LinkingMatrix([[k * x for x in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def __eq__(self, other):
        return isinstance(other, LinkingMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def lines(self) -> list[str]:
        return ["\t".join(str(x) for x in r) for r in self.rows]

    def __str__(self):
        return "\n".join(self.lines())


class TInvariant:
    """Values ``T^i_{a,b}`` keyed by ``(i, a, b)`` for orientation symbols."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping):
        self.values = dict(values)

    def __getitem__(self, key) -> TaggedValue:
        return self.values[key]

    def __add__(self, other):
        return TInvariant({k: v + other.values[k] for k, v in self.values.items()})

    def __rmul__(self, k: int):
        return TInvariant({key: k * v for key, v in self.values.items()})

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def __eq__(self, other):
        return isinstance(other, TInvariant) and self.values == other.values

    def lines(self) -> list[str]:
        return [f"T^{i}_{{{a},{b}}} = {v}" for (i, a, b), v in sorted(self.values.items())]

    def __str__(self):
        return "\n".join(self.lines())


# ---------------------------------------------------------------------------
# Linking matrix and the degree-1 bracket family


def linking_matrix(p: Nanophrase, data: HomotopyData) -> LinkingMatrix:
    r = p.n_components
    zero = PiElement.zero(data)
    rows = [[zero] * r for _ in range(r)]
    for x, occ in p.occurrences().items():
        i, j = occ[0][0], occ[1][0]
        if i != j:
            e = PiElement.from_symbol(data, p.proj[x])
            rows[i][j] = rows[i][j] + e
            rows[j][i] = rows[j][i] + e
    return LinkingMatrix(rows)


def _components(r: int, placed: Mapping[int, str]) -> str:
    return "|".join(placed.get(k, "0") for k in range(1, r + 1))


def make_pattern_phrase(kind: str, r: int, i: int, j: int, a: str, b: str | None = None) -> Nanophrase:
    """Pattern phrases used by the bracket formulae.

    ``g``: A in components i and j.  ``e``: AB in component i and AB in j.
    ``f``: AB in i and BA in j.  ``p``: ABAB in i when ``i == j``, otherwise
    ABA in i and B in j.  Letter A carries ``a`` and B carries ``b``.
    """
    if not (1 <= i <= r and 1 <= j <= r):
        raise PreconditionError(f"component indices ({i}, {j}) out of range 1..{r}")
    if kind in ("g", "e", "f") and not i < j:
        raise PreconditionError(f"pattern {kind} needs i < j")
    if kind == "g":
        return _with_syms(parse_nanophrase(_components(r, {i: "A", j: "A"}) + ":a"), [a])
    if b is None:
        raise PreconditionError(f"pattern {kind} needs two symbols")
    if kind == "e":
        placed = {i: "AB", j: "AB"}
    elif kind == "f":
        placed = {i: "AB", j: "BA"}
    elif kind == "p":
        placed = {i: "ABAB"} if i == j else {i: "ABA", j: "B"}
    else:
        raise PreconditionError(f"unknown pattern kind {kind!r}")
    return _with_syms(parse_nanophrase(_components(r, placed) + ":ab"), [a, b])


def _with_syms(p: Nanophrase, syms) -> Nanophrase:
    return Nanophrase._trusted(p.components, dict(zip(p.letters, syms)))


def _check_pair(i: int, j: int, r: int):
    if not 1 <= i < j <= r:
        raise PreconditionError(f"need 1 <= i < j <= {r}, got ({i}, {j})")


def _check_orientation(data: HomotopyData, *syms):
    for s in syms:
        if s not in data.orientation:
            raise PreconditionError(f"{s!r} is not an orientation symbol {data.orientation}")


def l_ija(i: int, j: int, a: str, p: Nanophrase, data: HomotopyData) -> TaggedValue:
    """Coefficient of ``a`` in ``l_ij`` via its degree-1 bracket formula."""
    r = p.n_components
    _check_pair(i, j, r)
    _check_orientation(data, a)
    g = make_pattern_phrase("g", r, i, j, a)
    if data.is_fixed(a):
        return TaggedValue(angle_bracket(g, p), 2)
    gt = make_pattern_phrase("g", r, i, j, data.tau_of(a))
    return TaggedValue(angle_bracket(FormalSum.of(g, (-1, gt)), p))


def l_prime_ija(i: int, j: int, a: str, p: Nanophrase, data: HomotopyData) -> TaggedValue:
    """Degree-2 bracket whose value is ``l_ija(p) ** 2`` (``a`` free)."""
    r = p.n_components
    _check_pair(i, j, r)
    _check_orientation(data, a)
    if data.is_fixed(a):
        raise PreconditionError("l' needs a free symbol (a != tau(a))")
    b = data.tau_of(a)

    def ef(x, y):
        return [make_pattern_phrase("e", r, i, j, x, y), make_pattern_phrase("f", r, i, j, x, y)]

    items = [(2, q) for q in ef(a, a) + ef(b, b)]
    items += [(-2, q) for q in ef(a, b) + ef(b, a)]
    items += [make_pattern_phrase("g", r, i, j, a), make_pattern_phrase("g", r, i, j, b)]
    return TaggedValue(angle_bracket(FormalSum.of(*items), p))


def l_doubleprime_ija(i: int, j: int, a: str, p: Nanophrase, data: HomotopyData) -> TaggedValue:
    """Degree-2 bracket mod 4 agreeing with ``l_ija`` as a bit (``a`` fixed)."""
    r = p.n_components
    _check_pair(i, j, r)
    _check_orientation(data, a)
    if not data.is_fixed(a):
        raise PreconditionError("l'' needs a fixed symbol (a == tau(a))")
    u = FormalSum.of((2, make_pattern_phrase("e", r, i, j, a, a)),
                     (2, make_pattern_phrase("f", r, i, j, a, a)),
                     make_pattern_phrase("g", r, i, j, a))
    return TaggedValue(angle_bracket(u, p), 4)


# ---------------------------------------------------------------------------
# Degree 2: u and T


def _require_diagonal(data: HomotopyData, what: str):
    if not data.s_is_diagonal:
        raise PreconditionError(f"{what} is only an invariant when S is diagonal")


def u_invariant(i: int, j: int, a: str, b: str, p: Nanophrase, data: HomotopyData) -> TaggedValue:
    """Bracket with the pattern ``p_{i,j,a,b}`` signed over tau-images."""
    _require_diagonal(data, "u")
    _check_orientation(data, a, b)
    if i == j and a == b:
        raise PreconditionError("u_{i,i,a,a} is not a homotopy invariant")
    r = p.n_components

    def pat(x, y):
        return make_pattern_phrase("p", r, i, j, x, y)

    ta, tb = data.tau_of(a), data.tau_of(b)
    fa, fb = a != ta, b != tb
    if fa and fb:
        u = FormalSum.of(pat(a, b), (-1, pat(ta, b)), (-1, pat(a, tb)), pat(ta, tb))
        return TaggedValue(angle_bracket(u, p))
    if fa:
        u = FormalSum.of(pat(a, b), (-1, pat(ta, b)))
    elif fb:
        u = FormalSum.of(pat(a, b), (-1, pat(a, tb)))
    else:
        u = FormalSum.of(pat(a, b))
    return TaggedValue(angle_bracket(u, p), 2)


def _epsilon(data: HomotopyData, a: str, sym: str) -> int:
    if sym == a:
        return 1
    if sym == data.tau_of(a):
        return -1
    return 0


def alternation(p: Nanophrase) -> dict:
    """``(X, Y) -> n_p(X, Y)`` for alternating pairs, read on the concatenation."""
    first: dict[int, int] = {}
    second: dict[int, int] = {}
    for pos, x in enumerate(p.word):
        (second if x in first else first)[x] = pos
    letters = list(first)
    out = {}
    for s, x in enumerate(letters):
        x1, x2 = first[x], second[x]
        for y in letters[s + 1:]:
            y1, y2 = first[y], second[y]
            if x1 < y1 < x2 < y2:
                out[x, y], out[y, x] = 1, -1
            elif y1 < x1 < y2 < x2:
                out[x, y], out[y, x] = -1, 1
    return out


def t_value(p: Nanophrase, data: HomotopyData, i: int, a: str, b: str,
            _alt: dict | None = None) -> TaggedValue:
    """``T^i_{a,b}(p)`` for any symbols ``a``, ``b`` in alpha."""
    alt = alternation(p) if _alt is None else _alt
    own = [x for x in set(p.components[i - 1]) if p.components[i - 1].count(x) == 2]
    total = 0
    for x in own:
        ex = _epsilon(data, a, p.proj[x])
        if not ex:
            continue
        for (x2, y), n in alt.items():
            if x2 == x:
                total += ex * _epsilon(data, b, p.proj[y]) * n
    both_free = not data.is_fixed(a) and not data.is_fixed(b)
    return TaggedValue(total, 0 if both_free else 2)


def t_invariant(p: Nanophrase, data: HomotopyData) -> TInvariant:
    """Fukunaga's T: ``T^i_{a,b}`` for every component and orientation pair."""
    _require_diagonal(data, "T")
    alt = alternation(p)
    o = data.orientation
    return TInvariant({(i, a, b): t_value(p, data, i, a, b, alt)
                       for i in range(1, p.n_components + 1) for a in o for b in o})


# ---------------------------------------------------------------------------
# Degree 4 for Gauss words

V4_WORDS = ("ABACDCBD", "ABCACDBD", "ABCADBDC", "ABCBDACD", "ABCDBDAC", "ABCDCADB")
_V4_FORMS = frozenset(parse_nanophrase(w + ":aaaa").canonical() for w in V4_WORDS)


def v4(w: Nanophrase, data: HomotopyData | None = None) -> TaggedValue:
    """Parity of the rank-4 subwords isomorphic to one of :data:`V4_WORDS`.

    Labels are forgotten, i.e. ``w`` is read as a Gauss word.
    """
    if w.n_components != 1:
        raise PreconditionError("v4 is defined on nanowords (one component)")
    if data is not None and len(data.alpha) != 1:
        raise PreconditionError("v4 needs Gauss-word homotopy data")
    gauss = Nanophrase._trusted(w.components, {x: "a" for x in w.proj}).canonical()
    if gauss.rank < 4:
        return TaggedValue(0, 2)
    count = sum(1 for _, f in subforms(gauss, 4) if f in _V4_FORMS)
    return TaggedValue(count, 2)


def v4_bracket(w: Nanophrase) -> int:
    """Unreduced bracket count behind :func:`v4` (full subphrase census)."""
    counts = subphrase_counts(as_form(
        Nanophrase._trusted(w.components, {x: "a" for x in w.proj})))
    return sum(counts.get(f, 0) for f in _V4_FORMS)
