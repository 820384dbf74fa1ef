"""Pure-Python kernels for restricting and relabelling Gauss phrases.

A phrase is passed around as three parallel pieces: ``word`` (the
concatenation of all components, letters are small non-negative ints),
``lengths`` (component lengths) and ``proj`` (anything indexable by a
letter, giving its alpha symbol).  Every kernel returns the restricted
phrase relabelled 0, 1, 2, ... in order of first occurrence, as a plain
``(word, lengths, proj)`` tuple.
"""

from itertools import combinations

BACKEND = "python"


def restrict(word, lengths, proj, mask):
    """Keep the letters whose bit is set in ``mask`` and relabel."""
    relabel = {}
    new_word = []
    new_lengths = []
    new_proj = []
    pos = 0
    for ln in lengths:
        cnt = 0
        for x in word[pos:pos + ln]:
            if mask >> x & 1:
                y = relabel.get(x)
                if y is None:
                    y = relabel[x] = len(new_proj)
                    new_proj.append(proj[x])
                new_word.append(y)
                cnt += 1
        new_lengths.append(cnt)
        pos += ln
    return tuple(new_word), tuple(new_lengths), tuple(new_proj)


def canonicalize(word, lengths, proj):
    """Relabel by first occurrence without deleting anything."""
    relabel = {}
    new_word = []
    new_proj = []
    for x in word:
        y = relabel.get(x)
        if y is None:
            y = relabel[x] = len(new_proj)
            new_proj.append(proj[x])
        new_word.append(y)
    return tuple(new_word), tuple(lengths), tuple(new_proj)


def _masks(n, k):
    if k < 0:
        return range(1 << n)
    if k > n:
        return ()
    return (sum(1 << i for i in c) for c in combinations(range(n), k))


def subforms(word, lengths, proj, k=-1):
    """Restrictions of a dense phrase (letters ``0..n-1``) to every subset.

    With ``k >= 0`` only subsets of exactly ``k`` letters are produced.
    The result is a list of ``(mask, form)`` pairs.
    """
    n = len(proj)
    return [(m, restrict(word, lengths, proj, m)) for m in _masks(n, k)]
