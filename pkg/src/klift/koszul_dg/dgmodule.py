"""DG modules over a Koszul DG algebra: a complex of A-modules with operators e_i."""
from __future__ import annotations

from ..homalg import ChainComplex, FPModule, ModuleMap
from ..ring_core.vec import vadd, vmul_poly, vscale
from .algebra import KoszulDGAlgebra, merge_sign


class DGModule:
    """terms[h] are FPModules over A; d[h]: terms[h] -> terms[h-1]; e[(i, h)]: terms[h] -> terms[h+1].

    Missing terms are zero and missing maps are zero.  Sign rule: d(e_i m) = f_i m - e_i d(m).
    """

    def __init__(self, alg: KoszulDGAlgebra, terms: dict, d: dict | None = None, e: dict | None = None,
                 *, check: bool = True):
        self.alg = alg
        self.ring = alg.ring
        self.terms = {h: M for h, M in terms.items()}
        if any(h < 0 for h in self.terms):
            raise ValueError("DG modules here are connective (no negative degrees)")
        self.d = dict(d or {})
        self.e = dict(e or {})
        self._zero = FPModule(self.ring, ())
        self.valid_through = None  # last degree where the structure is complete (None: all)
        if check:
            bad = self.check_axioms()
            if bad:
                raise ValueError("DG module axioms fail: " + "; ".join(bad))

    @property
    def top(self) -> int:
        live = [h for h, M in self.terms.items() if M.rank]
        return max(live) if live else 0

    def term(self, h: int) -> FPModule:
        return self.terms.get(h, self._zero)

    def dmap(self, h: int) -> ModuleMap:
        m = self.d.get(h)
        if m is None:
            return ModuleMap(self.term(h), self.term(h - 1), [{} for _ in range(self.term(h).rank)], 0, check=False)
        return m

    def emap(self, i: int, h: int) -> ModuleMap:
        m = self.e.get((i, h))
        if m is None:
            return ModuleMap(self.term(h), self.term(h + 1), [{} for _ in range(self.term(h).rank)],
                             self.alg.degs[i], check=False)
        return m

    def apply_d(self, h: int, v: dict) -> dict:
        if h not in self.d or not v:
            return {}
        return self.d[h].apply(v)

    def apply_e(self, i: int, h: int, v: dict) -> dict:
        if (i, h) not in self.e or not v:
            return {}
        return self.e[(i, h)].apply(v)

    def apply_eS(self, S, h: int, v: dict) -> dict:
        """e_S v = e_{S_0}(e_{S_1}(... e_{S_last}(v)))."""
        for k, i in enumerate(reversed(S)):
            v = self.apply_e(i, h + k, v)
            if not v:
                return {}
        return v

    def check_axioms(self, hmax: int | None = None) -> list:
        """Failed identities among d^2 = 0, e_i e_j = -e_j e_i, d e_i + e_i d = f_i."""
        bad = []
        p = self.ring.p
        if hmax is None:
            hmax = self.valid_through
        hs = [h for h in sorted(self.terms) if hmax is None or h <= hmax]
        r = self.alg.r
        for h in hs:
            M = self.term(h)
            for j in range(M.rank):
                g = M.gen(j)
                if self.apply_d(h - 1, self.apply_d(h, g)):
                    bad.append(f"d^2 != 0 at degree {h}")
                for i in range(r):
                    for k in range(i, r):
                        a = self.apply_e(i, h + 1, self.apply_e(k, h, g))
                        b = self.apply_e(k, h + 1, self.apply_e(i, h, g))
                        if self.term(h + 2).reduce(vadd(a, b, p)):
                            bad.append(f"e_{i} e_{k} + e_{k} e_{i} != 0 at degree {h}")
                    lhs = vadd(self.apply_d(h + 1, self.apply_e(i, h, g)),
                               self.apply_e(i, h - 1, self.apply_d(h, g)), p)
                    rhs = vmul_poly(g, self.alg.elems[i].poly.terms, p)
                    if M.reduce(vadd(lhs, vscale(rhs, -1, p), p)):
                        bad.append(f"d e_{i} + e_{i} d != f_{i} at degree {h}")
        return sorted(set(bad))

    def underlying(self) -> ChainComplex:
        hs = range(0, self.top + 1)
        terms = {h: self.term(h) for h in hs}
        diffs = {h: self.dmap(h) for h in hs if h >= 1}
        return ChainComplex(terms, diffs)

    def homology(self, h: int):
        return self.underlying().homology(h)

    def __repr__(self):
        ranks = {h: M.rank for h, M in sorted(self.terms.items())}
        return f"DGModule(over {self.alg!r}, ranks={ranks})"


def discrete_as_dg_module(M: FPModule, alg: KoszulDGAlgebra) -> DGModule:
    """M in degree 0 with e_i = 0; requires f_i M = 0."""
    p = M.p
    for i, f in enumerate(alg.elems):
        for j in range(M.rank):
            if not M.is_zero_elem(vmul_poly(M.gen(j), f.poly.terms, p)):
                raise ValueError(f"element {f} does not annihilate the module")
    return DGModule(alg, {0: M}, check=False)


def _left_mult_maps(alg: KoszulDGAlgebra, coeffs, source_alg: KoszulDGAlgebra, terms, n: int) -> dict:
    """Maps for e_i acting as sum_j coeffs[i][j] eps_j on Kos(g; M) (M of rank n)."""
    A = alg.ring
    p = A.p
    z = A.ambient.zero_exp
    index = {h: {S: k for k, S in enumerate(source_alg.subsets(h))} for h in range(source_alg.r + 1)}
    e = {}
    for i in range(alg.r):
        for h in range(source_alg.r):
            imgs = []
            for S in source_alg.subsets(h):
                for g in range(n):
                    v: dict = {}
                    for j in range(source_alg.r):
                        c = coeffs[i][j]
                        if not c:
                            continue
                        ms = merge_sign((j,), S)
                        if ms is None:
                            continue
                        sign, U = ms
                        pos = index[h + 1][U] * n + g
                        v = vadd(v, vmul_poly({(pos, z): sign % p if p else sign}, c.poly.terms, p), p)
                    imgs.append(v)
            e[(i, h)] = ModuleMap(terms[h], terms[h + 1], imgs, alg.degs[i], check=False)
    return e


def koszul_dg_module(alg: KoszulDGAlgebra, M: FPModule | None = None) -> DGModule:
    """Gamma (x)_A M = Kos(f; M), with e_i acting by left multiplication."""
    A = alg.ring
    M = M if M is not None else FPModule.free(A, (0,))
    K = alg.koszul_complex(M)
    ident = [[A(1) if i == j else A(0) for j in range(alg.r)] for i in range(alg.r)]
    e = _left_mult_maps(alg, ident, alg, K.terms, M.rank)
    return DGModule(alg, K.terms, K.diffs, e, check=False)


def koszul_module_over(alg: KoszulDGAlgebra, g_elems, coeffs, M: FPModule | None = None,
                       g_degrees=None) -> DGModule:
    """Kos(g; M) as a DG module over Kos(f), where f_i = sum_j coeffs[i][j] g_j.

    e_i acts by left multiplication with sum_j coeffs[i][j] eps_j.
    """
    A = alg.ring
    galg = KoszulDGAlgebra(A, g_elems, g_degrees)
    coeffs = [[c if not isinstance(c, (str, int)) else A(A.ambient.parse(str(c))) for c in row] for row in coeffs]
    for i in range(alg.r):
        s = A(0)
        for j in range(galg.r):
            s = s + coeffs[i][j] * galg.elems[j]
        if s != alg.elems[i]:
            raise ValueError(f"f_{i} is not the stated combination of the g's")
    M = M if M is not None else FPModule.free(A, (0,))
    K = galg.koszul_complex(M)
    e = _left_mult_maps(alg, coeffs, galg, K.terms, M.rank)
    return DGModule(alg, K.terms, K.diffs, e)


def dg_module_from_complex(alg: KoszulDGAlgebra, C: ChainComplex) -> DGModule:
    """A connective complex of A-modules as a DG module over A itself (no e's)."""
    if alg.r:
        raise ValueError("complex input needs the algebra with no Koszul generators")
    terms = {h: M for h, M in C.terms.items() if h >= 0}
    diffs = {h: d for h, d in C.diffs.items() if h >= 1 and h in terms}
    return DGModule(alg, terms, diffs)
