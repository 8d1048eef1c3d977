"""Submodules of graded free modules over a quotient ring: membership, lifts, syzygies.

Everything happens over the ambient polynomial ring S, with the ideal I of
R = S/I entering as extra generators I * e_j.
"""
from __future__ import annotations

from .gb import GroebnerBasis, ModuleOrder, groebner
from .quotient import QuotientRing


def vec_degree(v: dict, shifts, ring: QuotientRing) -> int | None:
    if not v:
        return None
    comp, e = next(iter(v))
    return shifts[comp] + ring.ambient.wdeg(e)


def is_homogeneous_vec(v: dict, shifts, ring: QuotientRing) -> bool:
    w = ring.ambient.wdeg
    return len({shifts[c] + w(e) for c, e in v}) <= 1


class Submodule:
    """The submodule of R^m (generator degrees `shifts`) spanned by `gens`.

    `degrees` gives the degree of each generator, needed for zero vectors.
    """

    def __init__(self, ring: QuotientRing, shifts, gens, degrees=None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.gens = [dict(g) for g in gens]
        if degrees is None:
            degrees = [vec_degree(g, self.shifts, ring) for g in self.gens]
            if any(d is None for d in degrees):
                raise ValueError("degrees are required for zero generators")
        self.degrees = list(degrees)
        for g, d in zip(self.gens, self.degrees):
            if g and (not is_homogeneous_vec(g, self.shifts, ring) or vec_degree(g, self.shifts, ring) != d):
                raise ValueError("generators must be homogeneous of the stated degree")
        self._aug = None
        self._gb = None
        self._syz = None

    @property
    def m(self) -> int:
        return len(self.shifts)

    def _augmented(self):
        if self._aug is None:
            m = self.m
            order = ModuleOrder(self.ring.ambient, self.shifts + tuple(self.degrees), n_first=m)
            z = self.ring.ambient.zero_exp
            aug = []
            for i, g in enumerate(self.gens):
                v = dict(g)
                v[(m + i, z)] = 1
                aug.append(v)
            self._aug = groebner(aug, order, self.ring.p, background=self.ring.background(m)).basis
        return self._aug

    @property
    def gb(self) -> GroebnerBasis:
        """Gröbner basis of span(gens) + I R^m under the plain module order."""
        if self._gb is None:
            order = ModuleOrder(self.ring.ambient, self.shifts)
            if self._aug is not None:
                m = self.m
                vecs = []
                for v, lt in zip(self._aug.vecs, self._aug.leads):
                    if lt[0] < m:
                        vecs.append({t: c for t, c in v.items() if t[0] < m})
                self._gb = GroebnerBasis(order, self.ring.p, vecs)
            else:
                self._gb = groebner(self.gens, order, self.ring.p,
                                    background=self.ring.background(self.m)).basis
        return self._gb

    def reduce(self, v: dict) -> dict:
        return self.gb.reduce(v)

    def contains(self, v: dict) -> bool:
        return not self.gb.reduce(v)

    def contains_all(self, vs) -> bool:
        return all(self.contains(v) for v in vs)

    def lift(self, v: dict):
        """Cofactor vector c (in R^k) with sum c_i gens_i == v, or None."""
        if not v:
            return {}
        m = self.m
        r = self._augmented().reduce(v)
        if any(t[0] < m for t in r):
            return None
        p = self.ring.p
        c = {(j - m, e): ((-a) % p if p else -a) for (j, e), a in r.items()}
        return self.ring.reduce_vec(c)

    def syzygies(self):
        """Minimal generators of the R-syzygies of gens, as vectors in R^k."""
        if self._syz is None:
            m = self.m
            k = len(self.gens)
            raw = []
            for v, lt in zip(self._augmented().vecs, self._augmented().leads):
                if lt[0] >= m:
                    w = self.ring.reduce_vec({(j - m, e): c for (j, e), c in v.items()})
                    if w:
                        raw.append(w)
            self._syz = minimal_generators(self.ring, self.degrees, raw, background=self.ring.background(k))
        return list(self._syz)

    def syzygy_degrees(self):
        return [vec_degree(s, self.degrees, self.ring) for s in self.syzygies()]


def minimal_generators(ring: QuotientRing, shifts, gens, background=None, modulo=()) -> list:
    """A minimal homogeneous generating subset of gens, modulo `modulo` and I."""
    order = ModuleOrder(ring.ambient, shifts)
    if background is None:
        background = ring.background(len(shifts))
    bg = list(background) + [dict(v) for v in modulo if v]
    res = groebner([g for g in gens], order, ring.p, background=bg)
    return [gens[i] for i in sorted(res.minimal)]


def submodule_gb(ring: QuotientRing, shifts, gens) -> GroebnerBasis:
    order = ModuleOrder(ring.ambient, shifts)
    return groebner([g for g in gens if g], order, ring.p, background=ring.background(len(shifts))).basis
