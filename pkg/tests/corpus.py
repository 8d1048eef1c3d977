"""Seeded random corpus of small graded modules."""
import random

from klift.homalg import FPModule
from klift.ring_core import QuotientRing


def rings():
    return {
        "F2[x]": QuotientRing.polynomial("F2", ["x"]),
        "F3[x,y]/(xy)": QuotientRing.polynomial("F3", ["x", "y"], ideal=["x*y"]),
        "F5[x,y]/(y^2)": QuotientRing.polynomial("F5", ["x", "y"], ideal=["y^2"]),
    }


def random_poly(A, d, rng):
    S = A.ambient
    mons = S.monomials(d)
    if not mons:
        return S.zero()
    f = S.zero()
    for e in mons:
        c = rng.randrange(A.p) if A.p else rng.randint(-2, 2)
        if c:
            f = f + S.monomial(e, c)
    return f


def random_module(A, rng, max_rank=2, max_rels=3):
    r = rng.randint(1, max_rank)
    shifts = sorted(rng.choice((0, 0, 1)) for _ in range(r))
    cols = []
    for _ in range(rng.randint(1, max_rels)):
        d = max(shifts) + rng.randint(1, 2)
        cols.append([random_poly(A, d - s, rng) for s in shifts])
    return FPModule.from_matrix(A, shifts, cols)


def killed_by(M, f):
    """M / f M, presented by adding f times each generator."""
    A = M.ring
    cols = [list(r) for r in _columns(M)]
    for j in range(M.rank):
        cols.append([A.lift_poly(f) if k == j else A.ambient.zero() for k in range(M.rank)])
    return FPModule.from_matrix(A, M.shifts, cols)


def _columns(M):
    A = M.ring
    out = []
    for v in M.relations:
        col = [A.ambient.zero() for _ in M.shifts]
        for (j, e), c in v.items():
            col[j] = col[j] + A.ambient.monomial(e, c)
        out.append(col)
    return out


def corpus(count, seed=0, power_killed=None):
    """(ring name, ring, module) triples; with power_killed=n every module is killed by x^n."""
    rng = random.Random(seed)
    rs = list(rings().items())
    out = []
    while len(out) < count:
        name, A = rs[len(out) % len(rs)]
        M = random_module(A, rng)
        if power_killed:
            M = killed_by(M, A.var("x") ** power_killed)
        if M.is_zero():
            continue
        out.append((name, A, M))
    return out
