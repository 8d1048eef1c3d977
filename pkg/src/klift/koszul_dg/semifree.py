"""Semifree resolutions over Koszul DG algebras, and DG Ext / Tor built from them."""
from __future__ import annotations

from dataclasses import dataclass

from ..homalg import ChainComplex, FPModule, ModuleMap
from ..homalg.complex import ExtTable
from ..homalg.module import direct_sum
from ..ring_core.vec import vadd, vembed, vmul_poly, vneg, vproject, vscale
from .algebra import KoszulDGAlgebra, merge_sign
from .dgmodule import DGModule, discrete_as_dg_module


@dataclass
class SemifreeGen:
    h: int          # homological degree
    deg: int        # internal degree
    dvec: dict      # d(u) as a vector in F_{h-1}
    eps: dict       # augmentation image in N_h


class SemifreeResolution:
    """F = sum Gamma u_a with d(e_S u) = d(e_S) u + (-1)^|S| e_S d(u), and eps: F -> N.

    Generators are added level by level so that the cone of eps is acyclic in
    degrees <= valid_through.  Positions in each F_h are ordered by (generator, S)
    and stay stable as more levels are added.
    """

    def __init__(self, target: DGModule):
        self.alg: KoszulDGAlgebra = target.alg
        self.ring = target.ring
        self.target = target
        self.gens: list = []
        self.valid_through = -1
        self._cache: dict = {}

    # -- structure of F --------------------------------------------------
    def basis(self, h: int) -> list:
        key = ("basis", h)
        if key not in self._cache:
            self._cache[key] = [(a, S) for a, u in enumerate(self.gens)
                                for S in self.alg.subsets(h - u.h)]
        return self._cache[key]

    def index(self, h: int) -> dict:
        key = ("index", h)
        if key not in self._cache:
            self._cache[key] = {b: k for k, b in enumerate(self.basis(h))}
        return self._cache[key]

    def term(self, h: int) -> FPModule:
        key = ("term", h)
        if key not in self._cache:
            shifts = [self.gens[a].deg + self.alg.sdeg(S) for a, S in self.basis(h)]
            self._cache[key] = FPModule.free(self.ring, shifts)
        return self._cache[key]

    def dterms(self, a: int) -> list:
        """d(u_a) as a list of (coefficient poly terms, b, S) meaning c e_S u_b."""
        u = self.gens[a]
        if u.h == 0:
            return []
        base = self.basis(u.h - 1)
        out = {}
        for (pos, e), c in u.dvec.items():
            out.setdefault(pos, {})[e] = c
        return [(out[pos], base[pos][0], base[pos][1]) for pos in sorted(out)]

    def d_image(self, a: int, S) -> dict:
        A = self.ring
        p = A.p
        z = A.ambient.zero_exp
        h = len(S) + self.gens[a].h
        idx = self.index(h - 1)
        v: dict = {}
        for sign, i, rest in self.alg.d_terms(S):
            unit = {(idx[(a, rest)], z): sign % p if p else sign}
            v = vadd(v, vmul_poly(unit, self.alg.elems[i].poly.terms, p), p)
        s2 = -1 if len(S) % 2 else 1
        for c, b, T in self.dterms(a):
            ms = merge_sign(S, T)
            if ms is None:
                continue
            sg, U = ms
            unit = {(idx[(b, U)], z): (s2 * sg) % p if p else s2 * sg}
            v = vadd(v, vmul_poly(unit, c, p), p)
        return v

    def dmap(self, h: int) -> ModuleMap:
        imgs = [self.d_image(a, S) for a, S in self.basis(h)]
        return ModuleMap(self.term(h), self.term(h - 1), imgs, 0, check=False)

    def eps_image(self, a: int, S) -> dict:
        u = self.gens[a]
        return self.target.apply_eS(S, u.h, u.eps)

    def epsmap(self, h: int) -> ModuleMap:
        imgs = [self.eps_image(a, S) for a, S in self.basis(h)]
        return ModuleMap(self.term(h), self.target.term(h), imgs, 0, check=False)

    def emap(self, i: int, h: int) -> ModuleMap:
        z = self.ring.ambient.zero_exp
        p = self.ring.p
        idx = self.index(h + 1)
        imgs = []
        for a, S in self.basis(h):
            ms = merge_sign((i,), S)
            if ms is None:
                imgs.append({})
            else:
                sg, U = ms
                imgs.append({(idx[(a, U)], z): sg % p if p else sg})
        return ModuleMap(self.term(h), self.term(h + 1), imgs, self.alg.degs[i], check=False)

    # -- construction ----------------------------------------------------
    def _cone(self, k: int) -> tuple:
        """Cone_k = F_{k-1} + N_k together with D_k: Cone_k -> Cone_{k-1}."""
        N = self.target
        src, _, _ = direct_sum([self.term(k - 1), N.term(k)])
        tgt, _, _ = direct_sum([self.term(k - 2), N.term(k - 1)])
        off = self.term(k - 2).rank
        p = self.ring.p
        imgs = []
        for a, S in self.basis(k - 1):
            imgs.append(vadd(vneg(self.d_image(a, S), p) if k >= 2 else {},
                             vembed(self.eps_image(a, S), off), p))
        for j in range(N.term(k).rank):
            imgs.append(vembed(N.apply_d(k, N.term(k).gen(j)), off))
        return src, tgt, ModuleMap(src, tgt, imgs, 0, check=False)

    def _cone_homology(self, h: int):
        Ch, Cl, Dh = self._cone(h)
        Cu, _, Du = self._cone(h + 1)
        terms = {h - 1: Cl, h: Ch, h + 1: Cu}
        return ChainComplex(terms, {h: Dh, h + 1: Du}).homology(h)

    def _invalidate(self):
        self._cache.clear()

    def extend(self, hmax: int, verify: bool = True) -> "SemifreeResolution":
        """Add generators until the cone of eps is acyclic in degrees <= hmax."""
        p = self.ring.p
        for h in range(self.valid_through + 1, hmax + 1):
            H = self._cone_homology(h)
            nF = self.term(h - 1).rank
            new = []
            for v in H.reps:
                c = vproject(v, 0, nF)
                n = vproject(v, nF, nF + self.target.term(h).rank)
                # D(u) = (-du, eps u) = (c, n)
                new.append(SemifreeGen(h, H.ambient.degree_of(v), vneg(c, p), n))
            if new:
                self.gens.extend(new)
                self._invalidate()
                if verify and not self._cone_homology(h).module.is_zero():
                    raise RuntimeError(f"cone homology survives at degree {h}")
            self.valid_through = h
        return self

    def as_dg_module(self, hmax: int) -> DGModule:
        terms = {h: self.term(h) for h in range(hmax + 1)}
        d = {h: self.dmap(h) for h in range(1, hmax + 1)}
        e = {(i, h): self.emap(i, h) for i in range(self.alg.r) for h in range(hmax)}
        F = DGModule(self.alg, terms, d, e, check=False)
        F.valid_through = hmax - 1
        return F

    def check(self, hmax: int) -> list:
        """Failures among: F is a DG module, eps is a Gamma-linear chain map (degrees <= hmax)."""
        bad = list(self.as_dg_module(hmax + 2).check_axioms(hmax))
        N = self.target
        p = self.ring.p
        for h in range(hmax + 1):
            for k, (a, S) in enumerate(self.basis(h)):
                lhs = self.eps_image(a, S)
                if h >= 1:
                    left = self.epsmap(h - 1).apply(self.d_image(a, S))
                    right = N.apply_d(h, lhs)
                    if N.term(h - 1).reduce(vadd(left, vneg(right, p), p)):
                        bad.append(f"eps is not a chain map at degree {h}")
                for i in range(self.alg.r):
                    ms = merge_sign((i,), S)
                    if ms is None:
                        continue
                    sg, U = ms
                    got = vscale(self.eps_image(a, U), sg, p)
                    want = N.apply_e(i, h, lhs)
                    if N.term(h + 1).reduce(vadd(got, vneg(want, p), p)):
                        bad.append(f"eps is not Gamma-linear at degree {h}")
        return sorted(set(bad))

    def ranks(self, hmax: int) -> list:
        return [self.term(h).rank for h in range(hmax + 1)]

    def generator_degrees(self) -> list:
        return [(u.h, u.deg) for u in self.gens]


def semifree_resolution(N: DGModule, hbound: int, verify: bool = True) -> SemifreeResolution:
    return SemifreeResolution(N).extend(hbound, verify=verify)


def _as_dg(alg: KoszulDGAlgebra, M) -> DGModule:
    return M if isinstance(M, DGModule) else discrete_as_dg_module(M, alg)


def _block_module(ring, blocks) -> tuple:
    """Sum of (module, shift) blocks: the module and the offsets."""
    shifts, rels, offs = [], [], []
    for M, s in blocks:
        offs.append(len(shifts))
        rels.extend(vembed(r, len(shifts)) for r in M.relations)
        shifts.extend(x + s for x in M.shifts)
    return FPModule(ring, shifts, rels, check=False), offs


def _hom_complex(F: SemifreeResolution, N: DGModule, pmin: int, pmax: int) -> ChainComplex:
    """Hom_Gamma(F, N)_p = prod_a N_{h_a + p} shifted by -deg u_a, homologically indexed."""
    A = F.ring
    p = A.p
    z = A.ambient.zero_exp
    slots, terms, offs = {}, {}, {}
    for q in range(pmin, pmax + 1):
        sl = [a for a, u in enumerate(F.gens) if N.term(u.h + q).rank]
        slots[q] = sl
        M, o = _block_module(A, [(N.term(F.gens[a].h + q), -F.gens[a].deg) for a in sl])
        terms[q] = M
        offs[q] = dict(zip(sl, o))
    dts = {b: F.dterms(b) for b in range(len(F.gens))}
    diffs = {}
    for q in range(pmin + 1, pmax + 1):
        imgs = []
        lower = offs[q - 1]
        for a in slots[q]:
            k = F.gens[a].h + q
            Nk = N.term(k)
            for j in range(Nk.rank):
                g = Nk.gen(j)
                v: dict = {}
                if a in lower:
                    v = vadd(v, vembed(N.apply_d(k, g), lower[a]), p)
                for b in slots[q - 1]:
                    for c, a2, S in dts[b]:
                        if a2 != a:
                            continue
                        sgn = 1 if (q + q * len(S)) % 2 else -1
                        w = N.apply_eS(S, k, g)
                        if not w:
                            continue
                        w = vmul_poly(w, c, p)
                        w = vscale(w, sgn, p)
                        v = vadd(v, vembed(w, lower[b]), p)
                imgs.append(v)
        diffs[q] = ModuleMap(terms[q], terms[q - 1], imgs, 0, check=False)
    return ChainComplex(terms, diffs)


def dg_ext(alg: KoszulDGAlgebra, M, N, imax: int, hbound: int | None = None,
           resolution: SemifreeResolution | None = None) -> ExtTable:
    """Ext^i_Gamma(M, N) = H_{-i} Hom_Gamma(F, N) for 0 <= i <= imax.

    M and N are DG modules or discrete modules killed by the f_i.
    """
    M = _as_dg(alg, M)
    N = _as_dg(alg, N)
    top = N.top
    need = imax + top + 1
    hb = need if hbound is None else max(hbound, need)
    F = resolution or SemifreeResolution(M)
    F.extend(hb)
    C = _hom_complex(F, N, -imax - 1, top + 1)
    groups = {i: C.homology(-i) for i in range(imax + 1)}
    return ExtTable("dg_ext", (0, imax), groups, C, None,
                    {"semifree": F, "hbound": hb, "valid_through": F.valid_through})


def _tensor_complex(F: SemifreeResolution, N: DGModule, kmax: int) -> ChainComplex:
    """(F (x)_Gamma N)_k = sum_a N_{k - h_a} shifted by +deg u_a."""
    A = F.ring
    p = A.p
    slots, terms, offs = {}, {}, {}
    for k in range(kmax + 1):
        sl = [a for a, u in enumerate(F.gens) if k - u.h >= 0 and N.term(k - u.h).rank]
        slots[k] = sl
        M, o = _block_module(A, [(N.term(k - F.gens[a].h), F.gens[a].deg) for a in sl])
        terms[k] = M
        offs[k] = dict(zip(sl, o))
    diffs = {}
    for k in range(1, kmax + 1):
        imgs = []
        lower = offs[k - 1]
        for a in slots[k]:
            ha = F.gens[a].h
            Nk = N.term(k - ha)
            for j in range(Nk.rank):
                g = Nk.gen(j)
                v: dict = {}
                if a in lower:
                    w = N.apply_d(k - ha, g)
                    v = vadd(v, vembed(vscale(w, -1 if ha % 2 else 1, p), lower[a]), p)
                for c, b, S in F.dterms(a):
                    if b not in lower:
                        continue
                    hb = F.gens[b].h
                    w = N.apply_eS(S, k - ha, g)
                    if not w:
                        continue
                    w = vscale(vmul_poly(w, c, p), -1 if (len(S) * hb) % 2 else 1, p)
                    v = vadd(v, vembed(w, lower[b]), p)
                imgs.append(v)
        diffs[k] = ModuleMap(terms[k], terms[k - 1], imgs, 0, check=False)
    return ChainComplex(terms, diffs)


def dg_tor(alg: KoszulDGAlgebra, M, N, kmax: int, resolution: SemifreeResolution | None = None) -> ExtTable:
    """Tor^Gamma_k(M, N) = H_k(F (x)_Gamma N) for 0 <= k <= kmax."""
    M = _as_dg(alg, M)
    N = _as_dg(alg, N)
    F = resolution or SemifreeResolution(M)
    F.extend(kmax + 1)
    C = _tensor_complex(F, N, kmax + 1)
    groups = {k: C.homology(k) for k in range(kmax + 1)}
    return ExtTable("dg_tor", (0, kmax), groups, C, None,
                    {"semifree": F, "valid_through": F.valid_through})
