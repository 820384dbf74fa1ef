"""Integer linear algebra for finitely presented abelian groups.

Relations arrive as sparse rows (``{column: coefficient}``).  They are first
folded into an integer echelon basis of the row space, which is small, and
the Smith normal form is taken of that basis.  Row operations never change
the cokernel, so the column transform of the reduced matrix serves for the
original relations as well.
"""

from __future__ import annotations

from typing import Iterable


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, rem = divmod(a, b)
        a, b = b, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _axpy(row: dict, k: int, other: dict) -> dict:
    """``row + k * other`` as a new sparse row."""
    out = dict(row)
    for c, v in other.items():
        w = out.get(c, 0) + k * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _combine(s: int, x: dict, t: int, y: dict) -> dict:
    return _axpy({c: s * v for c, v in x.items()} if s != 1 else dict(x), t, y)


class EchelonBasis:
    """Incremental integer row echelon form (pivot = smallest column).

    Every inserted row is reduced against the stored pivots with unimodular
    pair operations, so the stored rows always span the same lattice as all
    rows inserted so far.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def add(self, row: dict) -> None:
        row = {c: v for c, v in row.items() if v}
        while row:
            lead = min(row)
            a = row[lead]
            prow = self.pivots.get(lead)
            if prow is None:
                if a < 0:
                    row = {c: -v for c, v in row.items()}
                self.pivots[lead] = self._reduce_tail(lead, row)
                return
            p = prow[lead]
            if a % p == 0:
                row = _axpy(row, -(a // p), prow)
                continue
            g, s, t = _egcd(p, a)
            new_pivot = _combine(s, prow, t, row)
            row = _combine(a // g, prow, -(p // g), row)
            self.pivots[lead] = self._reduce_tail(lead, new_pivot)

    def _reduce_tail(self, lead: int, row: dict) -> dict:
        # keep entries small: reduce non-leading entries modulo later pivots
        for c in sorted(row):
            if c == lead or c not in row:
                continue
            prow = self.pivots.get(c)
            if prow is not None and c != lead:
                q = row[c] // prow[c]
                if q:
                    row = _axpy(row, -q, prow)
        return row

    def extend(self, rows: Iterable[dict]) -> "EchelonBasis":
        for r in rows:
            self.add(r)
        return self

    def rows(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M, ncols: int | None = None, want_row_transform: bool = True):
    """Smith normal form of an integer matrix.

    Returns ``(factors, U, V)`` with ``U @ M @ V`` diagonal, the diagonal
    being ``factors`` (length ``min(rows, cols)``, non-negative, each
    dividing the next).  ``U`` and ``V`` are unimodular.  ``U`` is ``None``
    when ``want_row_transform`` is false.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = _identity(m) if want_row_transform else None
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(A[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
    factors = [A[t][t] for t in range(min(m, n))]
    return factors, U, V


def matmul(A, B):
    Bt = list(zip(*B)) if B else []
    return [[sum(x * y for x, y in zip(r, c)) for c in Bt] for r in A]


def determinant(M) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1
