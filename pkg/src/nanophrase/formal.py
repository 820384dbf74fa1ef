"""Formal integer combinations of nanophrases modulo isomorphism.

Includes semi-letter resolution, the angle bracket, the subphrase-sum map
``theta`` with its inverse ``phi``, the truncated map ``gamma`` and a
harness that evaluates an invariant on a phrase with semi-letters.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache, reduce
from itertools import combinations
from typing import Callable, Iterable, Iterator

from . import kernels
from .core import (CanonicalForm, DottedNanophrase, Nanophrase, NanophraseError,
                   subforms, trivial_form)


class FormalSum:
    """Element of the free abelian group on r-component isomorphism classes.

    ``terms`` maps :class:`CanonicalForm` to a non-zero int.
    """

    __slots__ = ("terms", "n_components")

    def __init__(self, terms=None, n_components: int | None = None):
        clean: dict[CanonicalForm, int] = {}
        for key, c in (terms or {}).items():
            key = as_form(key)
            if c:
                clean[key] = clean.get(key, 0) + c
                if not clean[key]:
                    del clean[key]
        r = n_components
        for key in clean:
            if r is None:
                r = key.n_components
            elif key.n_components != r:
                raise NanophraseError("all terms of a formal sum need the same component count")
        self.terms = clean
        self.n_components = r

    @classmethod
    def of(cls, *items) -> "FormalSum":
        """``FormalSum.of(p, (2, q), (-1, s))``: phrases with optional coefficients."""
        terms: Counter = Counter()
        for it in items:
            c, p = it if isinstance(it, tuple) and len(it) == 2 and isinstance(it[0], int) else (1, it)
            terms[as_form(p)] += c
        return cls(terms)

    def _r(self, other: "FormalSum") -> int | None:
        if self.n_components is None:
            return other.n_components
        if other.n_components is not None and other.n_components != self.n_components:
            raise NanophraseError("component counts differ")
        return self.n_components

    def __add__(self, other):
        other = as_sum(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, 0) + c
        return FormalSum(terms, self._r(other))

    def __neg__(self):
        return FormalSum({k: -c for k, c in self.terms.items()}, self.n_components)

    def __sub__(self, other):
        return self + (-as_sum(other))

    def __rmul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return FormalSum({f: k * c for f, c in self.terms.items()}, self.n_components)

    __mul__ = __rmul__

    def __eq__(self, other):
        if isinstance(other, (Nanophrase, CanonicalForm)):
            other = as_sum(other)
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[CanonicalForm, int]]:
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0].sort_key()))

    def coefficient(self, p) -> int:
        return self.terms.get(as_form(p), 0)

    @property
    def degree(self) -> int:
        return max((k.rank for k in self.terms), default=0)

    def augmentation(self) -> int:
        return sum(self.terms.values())

    def truncate(self, n: int) -> "FormalSum":
        return FormalSum({k: c for k, c in self.terms.items() if k.rank <= n}, self.n_components)

    def lines(self) -> list[str]:
        return [f"{'+' if c > 0 else '-'}{abs(c)}·{k.text}" for k, c in self]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in self:
            coef = "" if abs(c) == 1 else f"{abs(c)} "
            sign = "-" if c < 0 else "+"
            parts.append(f"{sign} {coef}{k.text}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"FormalSum({str(self)!r})"


def as_form(p) -> CanonicalForm:
    if isinstance(p, CanonicalForm):
        return p
    if isinstance(p, Nanophrase):
        return p.canonical()
    if isinstance(p, tuple) and len(p) == 3:
        return CanonicalForm._make(p)
    raise TypeError(f"cannot use {type(p).__name__} as a nanophrase")


def as_sum(x) -> FormalSum:
    if isinstance(x, FormalSum):
        return x
    if isinstance(x, DottedNanophrase):
        return resolve(x)
    f = as_form(x)
    return FormalSum({f: 1}, f.n_components)


# ---------------------------------------------------------------------------


def resolve(d: DottedNanophrase) -> FormalSum:
    """Expand semi-letters: each dotted letter becomes (kept) - (deleted)."""
    p = d.phrase
    word, lengths = p.word, p.lengths
    full = sum(1 << x for x in p.proj)
    dots = sorted(d.dots)
    terms: Counter = Counter()
    for k in range(len(dots) + 1):
        sign = -1 if k % 2 else 1
        for drop in combinations(dots, k):
            mask = full
            for x in drop:
                mask &= ~(1 << x)
            terms[CanonicalForm._make(kernels.restrict(word, lengths, p.proj, mask))] += sign
    return FormalSum(terms, p.n_components)


def resolution_count(d: DottedNanophrase) -> int:
    """Number of resolutions before cancellation (``2**#dots``)."""
    return 1 << len(d.dots)


@lru_cache(maxsize=1 << 16)
def subphrase_counts(form: CanonicalForm) -> Counter:
    """Canonical form -> number of letter subsets of ``form`` inducing it."""
    return Counter(f for _, f in subforms(form))


def angle_bracket(u, x) -> int:
    """Number of subphrases of ``x`` isomorphic to ``u``, extended bilinearly."""
    u, x = as_sum(u), as_sum(x)
    if (u.n_components is not None and x.n_components is not None
            and u.n_components != x.n_components):
        raise NanophraseError("angle bracket needs equal component counts")
    total = 0
    for p, cp in x.terms.items():
        counts = subphrase_counts(p)
        total += cp * sum(cq * counts.get(q, 0) for q, cq in u.terms.items())
    return total


def theta(x) -> FormalSum:
    """Sum of all subphrases, extended linearly."""
    x = as_sum(x)
    out: Counter = Counter()
    for p, c in x.terms.items():
        for q, k in subphrase_counts(p).items():
            out[q] += c * k
    return FormalSum(out, x.n_components)


def phi(x) -> FormalSum:
    """Alternating subphrase sum; the inverse of :func:`theta`."""
    x = as_sum(x)
    out: Counter = Counter()
    for p, c in x.terms.items():
        n = p.rank
        for q, k in subphrase_counts(p).items():
            out[q] += (-c if (n - q.rank) % 2 else c) * k
    return FormalSum(out, x.n_components)


def gamma(n: int, x) -> FormalSum:
    """``theta`` followed by deleting every term of rank greater than ``n``."""
    if n < 0:
        raise NanophraseError("gamma needs n >= 0")
    x = as_sum(x)
    out: Counter = Counter()
    for p, c in x.terms.items():
        for q, k in subphrase_counts(p).items():
            if q.rank <= n:
                out[q] += c * k
    return FormalSum(out, x.n_components)


def trivial_sum(r: int) -> FormalSum:
    return FormalSum({trivial_form(r): 1}, r)


# ---------------------------------------------------------------------------
# Finite type harness


def is_zero(value) -> bool:
    if isinstance(value, int):
        return value == 0
    return value.is_zero()


def linear_extend(v: Callable[[Nanophrase], object], x: FormalSum):
    """Evaluate ``v`` on a formal sum by linearity.  ``v`` must return ints or
    objects supporting ``+`` and ``int * value``."""
    vals = [c * v(p.to_phrase()) for p, c in x.terms.items()]
    if not vals:
        raise NanophraseError("cannot evaluate on the zero sum without a zero value")
    return reduce(lambda a, b: a + b, vals)


def finite_type_defect(v: Callable[[Nanophrase], object], d: DottedNanophrase):
    """Value of ``v`` on the expansion of a phrase with semi-letters.

    Resolutions are grouped by isomorphism class and every class is
    evaluated, even when its signed multiplicity is zero, so the result is
    a typed zero rather than a bare 0 when everything cancels.
    """
    p = d.phrase
    word, lengths = p.word, p.lengths
    full = sum(1 << x for x in p.proj)
    dots = sorted(d.dots)
    signed: Counter = Counter()
    for k in range(len(dots) + 1):
        sign = -1 if k % 2 else 1
        for drop in combinations(dots, k):
            mask = full
            for x in drop:
                mask &= ~(1 << x)
            signed[kernels.restrict(word, lengths, p.proj, mask)] += sign
    of_form = getattr(v, "of_form", None)
    total = None
    for q, c in signed.items():
        q = CanonicalForm._make(q)
        val = c * (of_form(q) if of_form else v(q.to_phrase()))
        total = val if total is None else total + val
    return total


def memoized(v: Callable[[Nanophrase], object]) -> Callable[[Nanophrase], object]:
    """Wrap an invariant so values are cached per isomorphism class.

    The wrapper also offers ``of_form(canonical_form)`` which skips
    re-canonicalization.
    """
    cache: dict = {}

    def of_form(form: CanonicalForm):
        try:
            return cache[form]
        except KeyError:
            val = cache[form] = v(form.to_phrase())
            return val

    def wrapped(p: Nanophrase):
        return of_form(p.canonical())

    wrapped.cache = cache
    wrapped.of_form = of_form
    return wrapped


def iter_dotted(forms: Iterable[CanonicalForm], n_dots: int) -> Iterator[DottedNanophrase]:
    """Every way of dotting exactly ``n_dots`` letters of each form."""
    for f in forms:
        p = f.to_phrase()
        for dots in combinations(range(f.rank), n_dots):
            yield DottedNanophrase(p, frozenset(dots))
