"""Dense exact linear algebra over F_p or Q (matrices are lists of rows)."""
from __future__ import annotations

from .field import Field


def rref(rows, field: Field):
    """Row-reduced echelon form and the pivot columns."""
    p = field.characteristic
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.norm(a * inv) for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [field.norm(a - f * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows, field: Field) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows, field)[1])


def solve(A, b, field: Field):
    """A solution x of A x = b, or None.  A is m x n, b has length m."""
    m = len(b)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)] if n else [[b[i]] for i in range(m)]
    R, piv = rref(aug, field) if aug else ([], [])
    if n in piv:
        return None
    x = [field.zero()] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def left_certificate(A, b, field: Field):
    """y with y A = 0 and y b = 1 when A x = b is inconsistent, else None."""
    m = len(b)
    n = len(A[0]) if A else 0
    # solve [A | b]^T y = (0,..,0,1)
    cols = [[A[i][j] for i in range(m)] for j in range(n)] + [[b[i] for i in range(m)]]
    rhs = [field.zero()] * n + [field.one()]
    return solve(cols, rhs, field)


def nullspace(A, ncols: int, field: Field):
    """Basis of {x : A x = 0}."""
    if not A:
        return [[field.one() if i == j else field.zero() for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A, field)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [field.zero()] * ncols
        x[f] = field.one()
        for row, c in zip(R, piv):
            x[c] = field.norm(-row[f])
        out.append(x)
    return out
