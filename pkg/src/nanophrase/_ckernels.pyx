# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the restriction kernels in ``_kernels_py``.

Same signatures and results.  Letters must be ints below 63 when a bitmask
is involved; callers fall back to the Python kernels otherwise.
"""

from itertools import combinations

from libc.stdlib cimport malloc, free

BACKEND = "cython"

DEF MAXLET = 63


cdef tuple _restrict(tuple word, tuple lengths, object proj,
                     unsigned long long mask, int *relabel, int nlet):
    cdef Py_ssize_t nw = len(word)
    cdef Py_ssize_t nc = len(lengths)
    cdef Py_ssize_t pos = 0, i, ln, stop
    cdef int x, y, cnt, nxt = 0
    cdef list new_word = []
    cdef list new_lengths = []
    cdef list new_proj = []
    for i in range(nlet):
        relabel[i] = -1
    for i in range(nc):
        ln = <Py_ssize_t>lengths[i]
        stop = pos + ln
        cnt = 0
        while pos < stop:
            x = <int>word[pos]
            pos += 1
            if (mask >> x) & 1ULL:
                y = relabel[x]
                if y < 0:
                    y = nxt
                    relabel[x] = y
                    nxt += 1
                    new_proj.append(proj[x])
                new_word.append(y)
                cnt += 1
        new_lengths.append(cnt)
    return (tuple(new_word), tuple(new_lengths), tuple(new_proj))


cdef int _max_letter(tuple word):
    cdef int m = -1, x
    for v in word:
        x = <int>v
        if x > m:
            m = x
    return m


def restrict(word, lengths, proj, mask):
    """Keep the letters whose bit is set in ``mask`` and relabel."""
    cdef tuple w = tuple(word)
    cdef int nlet = _max_letter(w) + 1
    cdef int *relabel
    if nlet > MAXLET or mask < 0:
        raise OverflowError("too many letters for the compiled kernel")
    relabel = <int *>malloc((nlet + 1) * sizeof(int))
    try:
        return _restrict(w, tuple(lengths), proj,
                         <unsigned long long>(mask & ((1 << MAXLET) - 1)),
                         relabel, nlet)
    finally:
        free(relabel)


def canonicalize(word, lengths, proj):
    """Relabel by first occurrence without deleting anything."""
    cdef tuple w = tuple(word)
    cdef int nlet = _max_letter(w) + 1
    if nlet > MAXLET:
        raise OverflowError("too many letters for the compiled kernel")
    return restrict(w, lengths, proj, (1 << nlet) - 1)


def subforms(word, lengths, proj, int k=-1):
    """Restrictions of a dense phrase (letters ``0..n-1``) to every subset."""
    cdef tuple w = tuple(word)
    cdef tuple lens = tuple(lengths)
    cdef int n = len(proj)
    cdef int *relabel
    cdef unsigned long long m, top
    cdef list out = []
    if n > 30:
        raise OverflowError("too many letters to enumerate subsets")
    relabel = <int *>malloc((n + 1) * sizeof(int))
    try:
        if k < 0:
            top = 1ULL << n
            m = 0
            while m < top:
                out.append((m, _restrict(w, lens, proj, m, relabel, n)))
                m += 1
        elif k <= n:
            for c in combinations(range(n), k):
                m = 0
                for i in c:
                    m |= 1ULL << <int>i
                out.append((m, _restrict(w, lens, proj, m, relabel, n)))
    finally:
        free(relabel)
    return out
