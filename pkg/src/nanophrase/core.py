"""Homotopy data, nanophrases, canonical forms and the text notation.

Letters are small non-negative ints; the text notation writes letter ``i``
as ``chr(ord('A') + i)``, so alphabetical order of letter names is numeric
order of ids.  A nanophrase written ``p:x`` assigns the i-th symbol of ``x``
to the i-th letter of ``p`` in alphabetical order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import kernels


class NanophraseError(ValueError):
    """Base class for errors raised by this package."""


class ParseError(NanophraseError):
    """Malformed phrase or homotopy-data text."""


class PreconditionError(NanophraseError):
    """An operation was called outside its domain (e.g. T with non-diagonal S)."""


# ---------------------------------------------------------------------------
# Homotopy data


@dataclass(frozen=True)
class HomotopyData:
    """Alphabet ``alpha`` with involution ``tau``, triple set ``s_set`` and an
    optional involution ``nu`` used by shift moves.

    ``tau`` and ``nu`` are stored as tuples of images aligned with ``alpha``.
    """

    alpha: tuple[str, ...]
    tau: tuple[str, ...]
    s_set: frozenset = field(default_factory=frozenset)
    nu: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(set(self.alpha)) != len(self.alpha):
            raise ParseError(f"duplicate symbols in alpha: {self.alpha}")
        if not self.alpha:
            raise ParseError("alpha must not be empty")
        for name in ("tau", "nu"):
            images = getattr(self, name)
            if images is None:
                continue
            if len(images) != len(self.alpha):
                raise ParseError(f"{name} must give one image per symbol")
            m = dict(zip(self.alpha, images))
            for a in self.alpha:
                if m.get(a) not in m or m[m[a]] != a:
                    raise ParseError(f"{name} is not an involution on alpha (at {a!r})")
        known = set(self.alpha)
        for t in self.s_set:
            if len(t) != 3 or not set(t) <= known:
                raise ParseError(f"triple {t!r} uses symbols outside alpha")

    @classmethod
    def build(cls, alpha: Sequence[str], tau: Mapping[str, str] | Iterable = (),
              s_set: Iterable = (), nu: Mapping[str, str] | Iterable | None = None):
        """Convenience constructor: ``tau``/``nu`` given as a mapping or as
        swapped pairs; unlisted symbols are fixed."""
        alpha = tuple(alpha)
        return cls(alpha, _images(alpha, tau), frozenset(tuple(t) for t in s_set),
                   None if nu is None else _images(alpha, nu))

    @cached_property
    def _tau_map(self) -> dict:
        return dict(zip(self.alpha, self.tau))

    @cached_property
    def _nu_map(self) -> dict | None:
        return None if self.nu is None else dict(zip(self.alpha, self.nu))

    def tau_of(self, a: str) -> str:
        return self._tau_map[a]

    def nu_of(self, a: str) -> str:
        if self._nu_map is None:
            raise PreconditionError("homotopy data has no shift involution nu")
        return self._nu_map[a]

    @cached_property
    def orientation(self) -> tuple[str, ...]:
        """Lexicographically least element of each tau-orbit, in alpha order."""
        return tuple(a for a in self.alpha if a <= self.tau_of(a))

    def is_fixed(self, a: str) -> bool:
        return self.tau_of(a) == a

    @property
    def free_orbits(self) -> int:
        return sum(1 for a in self.orientation if not self.is_fixed(a))

    @property
    def fixed_orbits(self) -> int:
        return sum(1 for a in self.orientation if self.is_fixed(a))

    @property
    def s_is_diagonal(self) -> bool:
        return self.s_set == frozenset((a, a, a) for a in self.alpha)

    def in_s(self, a: str, b: str, c: str) -> bool:
        return (a, b, c) in self.s_set

    def symbol_index(self, a: str) -> int:
        return self.alpha.index(a)

    def to_text(self) -> str:
        lines = ["alpha: " + " ".join(self.alpha),
                 "tau: " + _pairs_text(self.alpha, self._tau_map)]
        sep = "," if any(len(a) > 1 for a in self.alpha) else ""
        lines.append("S: " + " ".join(sep.join(t) for t in sorted(self.s_set)))
        if self.nu is not None:
            lines.append("nu: " + _pairs_text(self.alpha, self._nu_map))
        return "\n".join(lines) + "\n"


def _images(alpha, spec) -> tuple[str, ...]:
    m = {a: a for a in alpha}
    items = spec.items() if isinstance(spec, Mapping) else spec
    for x, y in items:
        if x not in m or y not in m:
            raise ParseError(f"pair ({x} {y}) uses symbols outside alpha")
        m[x] = y
        if not isinstance(spec, Mapping):
            m[y] = x
    return tuple(m[a] for a in alpha)


def _pairs_text(alpha, m) -> str:
    return " ".join(f"({a} {m[a]})" for a in alpha if a < m[a])


_PAIR_RE = re.compile(r"\(\s*(\S+)\s+(\S+)\s*\)")


def _parse_pairs(value: str, key: str) -> list[tuple[str, str]]:
    pairs = _PAIR_RE.findall(value)
    if _PAIR_RE.sub("", value).strip():
        raise ParseError(f"cannot parse {key} pairs: {value!r}")
    return pairs


def _parse_triples(value: str, alpha: tuple[str, ...]) -> set:
    value = value.strip()
    if value == "diagonal":
        return {(a, a, a) for a in alpha}
    if value == "full":
        return set(product(alpha, repeat=3))
    out = set()
    for tok in value.split():
        if "," in tok:
            parts = tuple(tok.split(","))
        elif len(tok) == 3:
            parts = tuple(tok)
        else:
            parts = tuple(tokenize_symbols(tok, alpha))
        if len(parts) != 3:
            raise ParseError(f"bad triple {tok!r}")
        if not set(parts) <= set(alpha):
            raise ParseError(f"triple {tok!r} has a symbol outside alpha")
        out.add(parts)
    return out


def parse_homotopy_data(text: str) -> HomotopyData:
    """Parse the line-based config format::

        alpha: a b c
        tau: (a b)
        S: diagonal
        nu: (a b)        # optional
    """
    fields: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in ("alpha", "tau", "S", "nu"):
            raise ParseError(f"unrecognised config line: {raw!r}")
        if key in fields:
            raise ParseError(f"duplicate key {key!r}")
        fields[key] = value.strip()
    if "alpha" not in fields:
        raise ParseError("config needs an 'alpha:' line")
    alpha = tuple(fields["alpha"].split())
    if len(set(alpha)) != len(alpha):
        raise ParseError(f"duplicate symbols in alpha: {alpha}")
    tau = _images_checked(alpha, _parse_pairs(fields.get("tau", ""), "tau"), "tau")
    s_set = _parse_triples(fields.get("S", ""), alpha)
    nu = None
    if "nu" in fields:
        nu = _images_checked(alpha, _parse_pairs(fields["nu"], "nu"), "nu")
    return HomotopyData(alpha, tau, frozenset(s_set), nu)


def _images_checked(alpha, pairs, key):
    seen = set()
    for x, y in pairs:
        if x == y or x in seen or y in seen:
            raise ParseError(f"{key} is not an involution: symbol repeated in {pairs}")
        seen.update((x, y))
    return _images(alpha, pairs)


PRESETS = {
    "gauss": "alpha: a\ntau:\nS: aaa\nnu:\n",
    "vknot": (
        "alpha: a+ a- b+ b-\n"
        "tau: (a+ b-) (a- b+)\n"
        "S: a+,a+,a+ a+,a+,a- a+,a-,a- a-,a-,a- a-,a-,a+ a-,a+,a+"
        " b+,b+,b+ b+,b+,b- b+,b-,b- b-,b-,b- b-,b-,b+ b-,b+,b+\n"
        "nu: (a+ b+) (a- b-)\n"
    ),
}


def preset(name: str) -> HomotopyData:
    try:
        return parse_homotopy_data(PRESETS[name])
    except KeyError:
        raise ParseError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


def tokenize_symbols(text: str, alpha: Sequence[str]) -> list[str]:
    """Split a projection word into alpha symbols, longest match first."""
    syms = sorted(alpha, key=len, reverse=True)
    out, i = [], 0
    while i < len(text):
        for s in syms:
            if text.startswith(s, i):
                out.append(s)
                i += len(s)
                break
        else:
            raise ParseError(f"symbol at {text[i:]!r} is not in alpha")
    return out


# ---------------------------------------------------------------------------
# Nanophrases


def letter_name(x: int) -> str:
    if not 0 <= x < 26:
        raise ParseError(f"letter id {x} has no single-letter name")
    return chr(65 + x)


class CanonicalForm(NamedTuple):
    """Isomorphism-class key: letters relabelled by first occurrence.

    ``word`` is the concatenation of the components, ``lengths`` the
    component lengths and ``proj`` the symbol of letter ``i`` at index ``i``.
    """

    word: tuple
    lengths: tuple
    proj: tuple

    @property
    def rank(self) -> int:
        return len(self.proj)

    @property
    def n_components(self) -> int:
        return len(self.lengths)

    @property
    def skeleton(self) -> tuple:
        return _split(self.word, self.lengths)

    @property
    def proj_word(self) -> tuple:
        return self.proj

    def to_phrase(self) -> "Nanophrase":
        return Nanophrase._trusted(self.skeleton, dict(enumerate(self.proj)))

    @property
    def text(self) -> str:
        return phrase_text(self.skeleton, self.proj)

    def sort_key(self):
        return (len(self.proj), self.text)

    def __str__(self):
        return self.text


def _split(word, lengths) -> tuple:
    out, pos = [], 0
    for ln in lengths:
        out.append(tuple(word[pos:pos + ln]))
        pos += ln
    return tuple(out)


def phrase_text(components, proj_by_letter, dots=()) -> str:
    comps = []
    for comp in components:
        if not comp:
            comps.append("0")
        else:
            comps.append("".join(letter_name(x) + ("." if x in dots else "") for x in comp))
    if isinstance(proj_by_letter, Mapping):
        proj = "".join(proj_by_letter[x] for x in sorted(proj_by_letter))
    else:
        proj = "".join(proj_by_letter)
    return "|".join(comps) + ":" + proj


class Nanophrase:
    """An r-component Gauss phrase with a projection of its letters to alpha.

    Immutable; equality is literal (same letter ids), isomorphism is
    equality of :meth:`canonical`.
    """

    __slots__ = ("components", "proj", "_canon")

    def __init__(self, components: Iterable[Iterable[int]], proj: Mapping[int, str]):
        comps = tuple(tuple(int(x) for x in c) for c in components)
        if not comps:
            raise NanophraseError("a nanophrase needs at least one component")
        counts: dict[int, int] = {}
        for c in comps:
            for x in c:
                if x < 0:
                    raise NanophraseError("letter ids must be non-negative")
                counts[x] = counts.get(x, 0) + 1
        bad = sorted(x for x, k in counts.items() if k != 2)
        if bad:
            raise NanophraseError(f"letters {bad} do not occur exactly twice")
        if set(proj) != set(counts):
            raise NanophraseError("projection must be defined on exactly the occurring letters")
        self._init(comps, dict(proj))

    def _init(self, comps, proj):
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "proj", proj)
        object.__setattr__(self, "_canon", None)

    @classmethod
    def _trusted(cls, comps, proj) -> "Nanophrase":
        obj = cls.__new__(cls)
        obj._init(tuple(comps), proj)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Nanophrase is immutable")

    @classmethod
    def trivial(cls, r: int) -> "Nanophrase":
        return cls._trusted(((),) * r, {})

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def rank(self) -> int:
        return len(self.proj)

    @property
    def letters(self) -> tuple[int, ...]:
        return tuple(sorted(self.proj))

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(x for c in self.components for x in c)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def canonical(self) -> CanonicalForm:
        if self._canon is None:
            object.__setattr__(self, "_canon", CanonicalForm._make(
                kernels.canonicalize(self.word, self.lengths, self.proj)))
        return self._canon

    def is_isomorphic(self, other: "Nanophrase") -> bool:
        return self.canonical() == other.canonical()

    def occurrences(self) -> dict[int, list[tuple[int, int]]]:
        """letter -> [(component, position), (component, position)]"""
        occ: dict[int, list] = {}
        for ci, comp in enumerate(self.components):
            for pos, x in enumerate(comp):
                occ.setdefault(x, []).append((ci, pos))
        return occ

    def delete(self, letters: Iterable[int]) -> "Nanophrase":
        drop = set(letters)
        return Nanophrase._trusted(
            tuple(tuple(x for x in c if x not in drop) for c in self.components),
            {x: a for x, a in self.proj.items() if x not in drop})

    def rename(self, mapping: Mapping[int, int]) -> "Nanophrase":
        return Nanophrase(
            [[mapping[x] for x in c] for c in self.components],
            {mapping[x]: a for x, a in self.proj.items()})

    def fresh_letters(self, k: int) -> list[int]:
        out, x = [], 0
        while len(out) < k:
            if x not in self.proj:
                out.append(x)
            x += 1
        return out

    def to_text(self) -> str:
        if self.proj and max(self.proj) >= 26:
            return self.canonical().text
        return phrase_text(self.components, self.proj)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Nanophrase({self.to_text()!r})"

    def __eq__(self, other):
        if not isinstance(other, Nanophrase):
            return NotImplemented
        return self.components == other.components and self.proj == other.proj

    def __hash__(self):
        return hash((self.components, tuple(sorted(self.proj.items()))))


@dataclass(frozen=True)
class DottedNanophrase:
    """A nanophrase with some letters marked as semi-letters."""

    phrase: Nanophrase
    dots: frozenset = frozenset()

    def __post_init__(self):
        if not set(self.dots) <= set(self.phrase.proj):
            raise NanophraseError("dotted letters must occur in the phrase")
        object.__setattr__(self, "dots", frozenset(self.dots))

    @property
    def rank(self) -> int:
        return self.phrase.rank

    @property
    def n_components(self) -> int:
        return self.phrase.n_components

    def to_text(self) -> str:
        return phrase_text(self.phrase.components, self.phrase.proj, self.dots)

    def __str__(self):
        return self.to_text()


# ---------------------------------------------------------------------------
# Text notation

_COMP_RE = re.compile(r"(?:[A-Z]\.?)+")


def _parse(text: str, data: HomotopyData | None, allow_dots: bool):
    text = text.strip()
    if any(ch.isspace() for ch in text):
        raise ParseError(f"whitespace inside phrase {text!r}")
    body, sep, projword = text.partition(":")
    if not sep:
        raise ParseError(f"phrase {text!r} lacks ':' and projection word")
    comps, dotted, undotted = [], set(), set()
    for comp in body.split("|"):
        if comp in ("0", "∅"):
            comps.append(())
            continue
        if not _COMP_RE.fullmatch(comp):
            raise ParseError(f"bad component {comp!r} in {text!r}")
        letters = []
        for m in re.finditer(r"([A-Z])(\.?)", comp):
            x = ord(m.group(1)) - 65
            letters.append(x)
            (dotted if m.group(2) else undotted).add(x)
        comps.append(tuple(letters))
    if dotted and not allow_dots:
        raise ParseError(f"semi-letters not allowed here: {text!r}")
    if dotted & undotted:
        raise ParseError(f"letters {sorted(letter_name(x) for x in dotted & undotted)} "
                         "dotted at only one occurrence")
    counts: dict[int, int] = {}
    for c in comps:
        for x in c:
            counts[x] = counts.get(x, 0) + 1
    bad = sorted(letter_name(x) for x, k in counts.items() if k != 2)
    if bad:
        raise ParseError(f"letters {bad} do not occur exactly twice in {text!r}")
    letters = sorted(counts)
    if data is None:
        syms = list(projword)
    else:
        syms = tokenize_symbols(projword, data.alpha)
    if len(syms) != len(letters):
        raise ParseError(f"projection word {projword!r} has {len(syms)} symbols, "
                         f"phrase has rank {len(letters)}")
    return Nanophrase._trusted(tuple(comps), dict(zip(letters, syms))), frozenset(dotted)


def parse_nanophrase(text: str, data: HomotopyData | None = None) -> Nanophrase:
    """Parse ``AB|A|B:ab`` notation; ``0`` is an empty component."""
    return _parse(text, data, allow_dots=False)[0]


def parse_dotted(text: str, data: HomotopyData | None = None) -> DottedNanophrase:
    """Parse notation with semi-letters, e.g. ``A.BA.B:ab``."""
    phrase, dots = _parse(text, data, allow_dots=True)
    return DottedNanophrase(phrase, dots)


def rank(p) -> int:
    return p.rank


def canonical_form(p: Nanophrase) -> CanonicalForm:
    return p.canonical()


def subphrases(p: Nanophrase) -> list[Nanophrase]:
    """All 2**rank subphrases, keeping the original letter ids."""
    letters = p.letters
    out = []
    for mask in range(1 << len(letters)):
        drop = [x for i, x in enumerate(letters) if not mask >> i & 1]
        out.append(p.delete(drop))
    return out


def subforms(form: CanonicalForm, k: int = -1):
    """Canonical forms of all subphrases of a canonical form (optionally of
    rank exactly ``k``) as ``(mask, CanonicalForm)`` pairs."""
    make = CanonicalForm._make
    return [(m, make(t)) for m, t in kernels.subforms(form.word, form.lengths, form.proj, k)]


def restrict_form(form: CanonicalForm, mask: int) -> CanonicalForm:
    return CanonicalForm._make(kernels.restrict(form.word, form.lengths, form.proj, mask))


def trivial_form(r: int) -> CanonicalForm:
    return CanonicalForm((), (0,) * r, ())
