"""Exact dense linear algebra over F_p(t).

Matrices are lists of rows of :class:`LocalScalar`.  Pivots are chosen by
smallest total degree to keep entries short; every produced entry is checked
against the degree cap.
"""
from __future__ import annotations

from .localfield import DegreeCapExceeded, LocalScalar, degree_cap, one, zero


class SingularMatrix(ArithmeticError):
    def __init__(self, msg, rank=None):
        super().__init__(msg)
        self.rank = rank


def _pick_pivot(a, col, start):
    best = None
    best_deg = None
    for r in range(start, len(a)):
        x = a[r][col]
        if x:
            d = x.degree()
            if best is None or d < best_deg:
                best, best_deg = r, d
                if d == 0:
                    break
    return best


def _eliminate(a, ncols, cap, full):
    """Row-reduce ``a`` in place on its first ``ncols`` columns.

    Returns (rank, pivot product, swaps).  With ``full`` the reduction is
    Gauss-Jordan with unit pivots.
    """
    rows = len(a)
    r = 0
    det = None
    swaps = 0
    for col in range(ncols):
        if r >= rows:
            break
        piv = _pick_pivot(a, col, r)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            swaps += 1
        pv = a[r][col]
        det = pv if det is None else det * pv
        inv = pv.inverse()
        prow = [x * inv if x else x for x in a[r]]
        a[r] = prow
        nz = [(j, x) for j, x in enumerate(prow) if x and j != col]
        targets = range(rows) if full else range(r + 1, rows)
        for i in targets:
            if i == r:
                continue
            row = a[i]
            f = row[col]
            if not f:
                continue
            row = list(row)
            row[col] = zero(f.p)
            for j, x in nz:
                v = row[j] - f * x
                if v.degree() > cap:
                    raise DegreeCapExceeded(
                        f"entry degree {v.degree()} exceeds cap {cap} during elimination")
                row[j] = v
            a[i] = row
        r += 1
    return r, det, swaps


def rank(m, cap: int | None = None) -> int:
    if not m:
        return 0
    cap = degree_cap() if cap is None else cap
    a = [list(row) for row in m]
    return _eliminate(a, len(a[0]), cap, full=False)[0]


def det(m, cap: int | None = None) -> LocalScalar:
    n = len(m)
    p = m[0][0].p
    cap = degree_cap() if cap is None else cap
    a = [list(row) for row in m]
    rk, d, swaps = _eliminate(a, n, cap, full=False)
    if rk < n:
        return zero(p)
    return -d if swaps % 2 else d


def inverse(m, cap: int | None = None):
    n = len(m)
    if n == 0:
        return []
    p = m[0][0].p
    cap = degree_cap() if cap is None else cap
    z, o = zero(p), one(p)
    a = [list(row) + [o if i == j else z for j in range(n)] for i, row in enumerate(m)]
    rk, _, _ = _eliminate(a, n, cap, full=True)
    if rk < n:
        raise SingularMatrix(f"matrix has rank {rk} < {n}", rank=rk)
    return [tuple(row[n:]) for row in a]


def matvec(m, v):
    p = v[0].p
    z = zero(p)
    nz = [(j, x) for j, x in enumerate(v) if x]
    out = []
    for row in m:
        s = z
        for j, x in nz:
            c = row[j]
            if c:
                s = s + c * x
        out.append(s)
    return out


def matmul(a, b):
    """a @ b, skipping zeros."""
    p = a[0][0].p
    z = zero(p)
    ncols = len(b[0])
    bnz = [[(j, x) for j, x in enumerate(row) if x] for row in b]
    out = []
    for row in a:
        acc = [z] * ncols
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in bnz[k]:
                acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def transpose(m):
    return [list(col) for col in zip(*m)]
