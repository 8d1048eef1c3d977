"""Brute-force oracles: plain linear algebra over monomials, no Groebner bases.

A module is given by (field p, variable degrees, ideal generators, shifts, relations), where
polynomials are dicts {exponent tuple: coefficient} and relations are lists of polynomials, one
per generator.  M_d is F_d modulo the span of all monomial multiples of relations and of
ideal generators times basis vectors that land in degree d.
"""
from fractions import Fraction
from itertools import product


def monomials(weights, d):
    if d < 0:
        return []
    out = []
    for e in product(*[range(d // w + 1) for w in weights]):
        if sum(a * w for a, w in zip(e, weights)) == d:
            out.append(e)
    return sorted(out)


def _mul(f, mono):
    return {tuple(a + b for a, b in zip(e, mono)): c for e, c in f.items()}


def _pdeg(f, weights):
    degs = {sum(a * w for a, w in zip(e, weights)) for e in f}
    assert len(degs) == 1, "inhomogeneous polynomial"
    return degs.pop()


def rank(rows, p):
    """Rank of a list of dict-rows {column: value} over F_p (Q when p == 0)."""
    norm = (lambda a: a % p) if p else Fraction
    inv = (lambda a: pow(a, p - 2, p)) if p else (lambda a: 1 / a)
    pivots = {}
    r = 0
    for row in rows:
        row = {k: norm(v) for k, v in row.items() if norm(v)}
        while row:
            col = min(row)
            if col not in pivots:
                c = inv(row[col])
                pivots[col] = {k: norm(v * c) for k, v in row.items()}
                r += 1
                break
            piv = pivots[col]
            c = row[col]
            for k, v in piv.items():
                row[k] = norm(row.get(k, 0) - c * v)
                if not row[k]:
                    del row[k]
    return r


class BruteModule:
    def __init__(self, p, weights, ideal, shifts, relations):
        self.p, self.w = p, tuple(weights)
        self.ideal = [f for f in ideal if f]
        self.shifts = list(shifts)
        self.relations = [list(r) for r in relations]

    def _vec_deg(self, rel):
        for j, f in enumerate(rel):
            if f:
                return _pdeg(f, self.w) + self.shifts[j]
        return None

    def free_basis(self, d):
        return [(j, e) for j, s in enumerate(self.shifts) for e in monomials(self.w, d - s)]

    def relation_rows(self, d):
        rows = []
        for rel in self.relations:
            rd = self._vec_deg(rel)
            if rd is None:
                continue
            for m in monomials(self.w, d - rd):
                row = {}
                for j, f in enumerate(rel):
                    for e, c in _mul(f, m).items():
                        row[(j, e)] = row.get((j, e), 0) + c
                rows.append(row)
        for g in self.ideal:
            gd = _pdeg(g, self.w)
            for j, s in enumerate(self.shifts):
                for m in monomials(self.w, d - s - gd):
                    rows.append({(j, e): c for e, c in _mul(g, m).items()})
        return rows

    def dim(self, d):
        return len(self.free_basis(d)) - rank(self.relation_rows(d), self.p)

    def image_dim(self, f, d):
        """dim of (f M)_d for a homogeneous polynomial f."""
        fd = _pdeg(f, self.w)
        R = self.relation_rows(d)
        imgs = [{(j, e2): c for e2, c in _mul(f, e).items()} for j, e in self.free_basis(d - fd)]
        return rank(R + imgs, self.p) - rank(R, self.p)

    def quotient_dim(self, f, d):
        """dim of (M / fM)_d"""
        return self.dim(d) - self.image_dim(f, d)

    def kernel_dim(self, f, d):
        """dim of {m in M_d : f m = 0}"""
        return self.dim(d) - self.image_dim(f, d + _pdeg(f, self.w))

    def dims(self, lo, hi):
        return [self.dim(d) for d in range(lo, hi + 1)]


def from_module(M):
    """BruteModule with the same presentation as an FPModule (data only, no library algorithms)."""
    R = M.ring
    ideal = [dict(g.terms) for g in R.ideal.gens]
    rels = []
    for v in M.relations:
        cols = [dict() for _ in M.shifts]
        for (j, e), c in v.items():
            cols[j][e] = c
        rels.append(cols)
    return BruteModule(R.p, R.degrees, ideal, M.shifts, rels)

