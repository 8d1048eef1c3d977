"""Chain complexes of FPModules, minimal free resolutions, Ext, Tor and Hom."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..ring_core.linalg import left_certificate, rank as _rank, solve
from ..ring_core.quotient import QuotientRing
from ..ring_core.submodule import Submodule
from ..ring_core.vec import vadd, vlincomb, vmul_mono, vproject
from .module import FPModule, ModuleMap, SubQuotient, same_submodule, subquotient


class ChainComplex:
    """Homologically indexed: diffs[i] maps terms[i] -> terms[i-1]."""

    def __init__(self, terms: dict, diffs: dict | None = None):
        self.terms = dict(terms)
        self.diffs = dict(diffs or {})
        for i, d in self.diffs.items():
            if i not in self.terms or i - 1 not in self.terms:
                raise ValueError(f"differential {i} has no source or target")
            if d.source.rank != self.terms[i].rank or d.target.rank != self.terms[i - 1].rank:
                raise ValueError(f"differential {i} has the wrong shape")
            if d.twist != 0:
                raise ValueError("differentials must have degree zero")
        self._hom: dict = {}

    @property
    def ring(self) -> QuotientRing:
        return next(iter(self.terms.values())).ring

    def indices(self):
        return sorted(self.terms)

    def is_complex(self) -> bool:
        for i, d in self.diffs.items():
            e = self.diffs.get(i - 1)
            if e is not None and not e.compose(d).is_zero():
                return False
        return True

    def cycles(self, i: int) -> list:
        C = self.terms[i]
        d = self.diffs.get(i)
        if d is None:
            return [C.gen(j) for j in range(C.rank)]
        return d.kernel_gens()

    def boundaries(self, i: int) -> list:
        d = self.diffs.get(i + 1)
        return [] if d is None else [v for v in d.images if v]

    def homology(self, i: int) -> SubQuotient:
        if i not in self._hom:
            if i not in self.terms:
                self._hom[i] = subquotient(FPModule(self.ring, ()), [])
            else:
                d, e = self.diffs.get(i), self.diffs.get(i + 1)
                if d is not None and e is not None and not d.compose(e).is_zero():
                    raise ValueError(f"malformed complex: d o d != 0 at degree {i}")
                self._hom[i] = subquotient(self.terms[i], self.cycles(i), self.boundaries(i))
        return self._hom[i]

    def homology_dims(self, i: int, lo: int, hi: int) -> list:
        return self.homology(i).module.dims(lo, hi)


@dataclass
class ChainMap:
    """Degree-zero chain map given by component maps."""
    source: ChainComplex
    target: ChainComplex
    maps: dict
    shift: int = 0  # f_i : source_i -> target_{i+shift}

    def is_chain_map(self) -> bool:
        s = self.shift
        for i, f in self.maps.items():
            dt = self.target.diffs.get(i + s)
            ds = self.source.diffs.get(i)
            left = dt.compose(f) if dt is not None else None
            g = self.maps.get(i - 1)
            right = g.compose(ds) if (ds is not None and g is not None) else None
            if left is None and right is None:
                continue
            if left is None:
                if not right.is_zero():
                    return False
            elif right is None:
                if not left.is_zero():
                    return False
            elif not left.equals(right):
                return False
        return True


def induced_on_homology(f: ChainMap, i: int) -> ModuleMap:
    """H_i(source) -> H_{i+shift}(target)."""
    Hs = f.source.homology(i)
    Ht = f.target.homology(i + f.shift)
    imgs = []
    for z in Hs.reps:
        w = f.maps[i].apply(z) if i in f.maps else {}
        c = Ht.to_class(w)
        if c is None:
            raise ValueError("image of a cycle is not a cycle")
        imgs.append(c)
    return ModuleMap(Hs.module, Ht.module, imgs, f.maps[i].twist if i in f.maps else 0, check=False)


def exact_at(f: ModuleMap, g: ModuleMap) -> bool:
    """image f == kernel g inside the middle module."""
    return same_submodule(g.source, [v for v in f.images if v], g.kernel_gens())


@dataclass
class FreeResolution:
    module: FPModule
    complex: ChainComplex
    augmentation: ModuleMap  # F_0 -> module
    length: int
    period: int | None = None
    period_start: int | None = None

    def ranks(self) -> list:
        return [self.complex.terms[i].rank for i in range(self.length + 1)]

    def betti(self) -> dict:
        """{i: {degree: count}}"""
        out = {}
        for i in range(self.length + 1):
            row: dict = {}
            for s in self.complex.terms[i].shifts:
                row[s] = row.get(s, 0) + 1
            out[i] = dict(sorted(row.items()))
        return out

    def terms(self, i):
        return self.complex.terms.get(i)

    def diff(self, i):
        return self.complex.diffs.get(i)


def free_resolution(M: FPModule, length: int) -> FreeResolution:
    """Minimal graded free resolution F_length -> ... -> F_0 -> M."""
    ring = M.ring
    mz = M.minimize()
    Mm = mz.module
    F0 = FPModule.free(ring, Mm.shifts)
    terms = {0: F0}
    diffs = {}
    aug = ModuleMap(F0, M, mz.from_min.images, 0, check=False)
    cols = list(Mm.relations)
    degs = Mm.relation_degrees()
    for i in range(1, length + 1):
        Fi = FPModule.free(ring, degs)
        terms[i] = Fi
        diffs[i] = ModuleMap(Fi, terms[i - 1], cols, 0, check=False)
        if i < length:
            sub = Submodule(ring, terms[i - 1].shifts, cols, degs)
            cols, degs = sub.syzygies(), sub.syzygy_degrees()
    res = FreeResolution(M, ChainComplex(terms, diffs), aug, length)
    _detect_period(res)
    return res


def padded_resolution(res: FreeResolution, where: int = 1) -> FreeResolution:
    """A non-minimal resolution: add a trivial summand R(-a) -> R(-a) in degrees where, where-1."""
    ring = res.module.ring
    C = res.complex
    if where < 1 or where > res.length:
        raise ValueError("padding position outside the resolution")
    T = C.terms[where - 1]
    a = T.shifts[0] if T.rank else 0
    terms = {i: FPModule.free(ring, list(F.shifts) + ([a] if i in (where, where - 1) else []))
             for i, F in C.terms.items()}
    diffs = {}
    for i, d in C.diffs.items():
        imgs = [dict(v) for v in d.images]
        if i == where:
            imgs.append({(T.rank, ring.ambient.zero_exp): 1})
        elif i == where - 1:
            imgs.append({})
        diffs[i] = ModuleMap(terms[i], terms[i - 1], imgs, 0, check=False)
    aug_imgs = list(res.augmentation.images) + ([{}] if where == 1 else [])
    aug = ModuleMap(terms[0], res.module, aug_imgs, 0, check=False)
    return FreeResolution(res.module, ChainComplex(terms, diffs), aug, res.length)


def _detect_period(res: FreeResolution) -> None:
    """Record the first i with d_{i+2} == d_i up to a uniform degree shift."""
    C = res.complex
    for i in range(1, res.length - 1):
        a, b = C.diffs.get(i), C.diffs.get(i + 2)
        if a is None or b is None or a.source.rank == 0:
            continue
        if a.source.rank != b.source.rank or a.target.rank != b.target.rank:
            continue
        sa, sb = a.source.shifts, b.source.shifts
        delta = sb[0] - sa[0]
        if any(y - x != delta for x, y in zip(sa, sb)):
            continue
        if any(y - x != delta for x, y in zip(a.target.shifts, b.target.shifts)):
            continue
        if all(x == y for x, y in zip(a.images, b.images)):
            res.period, res.period_start = 2, i
            return


# -- Hom, Ext, Tor -------------------------------------------------------------

def hom_free_into(F: FPModule, N: FPModule) -> FPModule:
    """Hom(F, N) for free F, as a direct sum of shifted copies of N.

    Generator (j, g) sends e_j to the g-th generator of N; its degree is shift_g - shift_j.
    """
    shifts, rels = [], []
    n = N.rank
    for j, a in enumerate(F.shifts):
        o = j * n
        shifts.extend(s - a for s in N.shifts)
        rels.extend({(c + o, e): v for (c, e), v in r.items()} for r in N.relations)
    return FPModule(N.ring, shifts, rels, check=False)


def hom_precompose(d: ModuleMap, N: FPModule, HF: FPModule, HG: FPModule) -> ModuleMap:
    """phi -> phi o d : Hom(F, N) -> Hom(G, N) for d: G -> F free."""
    n = N.rank
    p = N.p
    imgs = []
    for j in range(d.target.rank):
        for g in range(n):
            v: dict = {}
            for k, col in enumerate(d.images):
                for (jj, e), c in col.items():
                    if jj == j:
                        v = vadd(v, {(k * n + g, e): c}, p)
            imgs.append(v)
    return ModuleMap(HF, HG, imgs, 0, check=False)


def tensor_free_with(F: FPModule, N: FPModule) -> FPModule:
    shifts, rels = [], []
    n = N.rank
    for j, a in enumerate(F.shifts):
        o = j * n
        shifts.extend(s + a for s in N.shifts)
        rels.extend({(c + o, e): v for (c, e), v in r.items()} for r in N.relations)
    return FPModule(N.ring, shifts, rels, check=False)


def tensor_map_with(d: ModuleMap, N: FPModule, TF: FPModule, TG: FPModule) -> ModuleMap:
    """d (x) 1 : F (x) N -> G (x) N for d: F -> G free."""
    n = N.rank
    imgs = []
    for col in d.images:
        for g in range(n):
            imgs.append({(jj * n + g, e): c for (jj, e), c in col.items()})
    return ModuleMap(TF, TG, imgs, 0, check=False)


@dataclass
class ExtTable:
    """Ext^i(M, N) (or Tor_i) for i in `range_`, with cocycle representatives."""
    kind: str
    range_: tuple
    groups: dict
    complex: ChainComplex | None = None
    resolution: FreeResolution | None = None
    extra: dict = dc_field(default_factory=dict)

    def module(self, i) -> FPModule:
        return self.groups[i].module

    def dims(self, i, lo, hi) -> list:
        return self.groups[i].module.dims(lo, hi)

    def is_zero(self, i) -> bool:
        return self.groups[i].module.is_zero()


def _cochain_complex(res: FreeResolution, N: FPModule, top: int) -> ChainComplex:
    """Hom(F, N) indexed so that terms[-i] = Hom(F_i, N)."""
    C = res.complex
    terms, diffs = {}, {}
    for i in range(top + 1):
        terms[-i] = hom_free_into(C.terms[i], N)
    for i in range(top):
        d = C.diffs.get(i + 1)
        # Hom(F_i, N) -> Hom(F_{i+1}, N), homological index -i -> -(i+1)
        diffs[-i] = hom_precompose(d, N, terms[-i], terms[-(i + 1)])
    return ChainComplex(terms, diffs)


def ext(M: FPModule, N: FPModule, imax: int, resolution: FreeResolution | None = None) -> ExtTable:
    res = resolution or free_resolution(M, imax + 1)
    C = _cochain_complex(res, N, imax + 1)
    groups = {i: C.homology(-i) for i in range(imax + 1)}
    return ExtTable("ext", (0, imax), groups, C, res)


def tor(M: FPModule, N: FPModule, kmax: int, resolution: FreeResolution | None = None) -> ExtTable:
    res = resolution or free_resolution(M, kmax + 1)
    terms, diffs = {}, {}
    for i in range(kmax + 2):
        terms[i] = tensor_free_with(res.complex.terms[i], N)
    for i in range(1, kmax + 2):
        diffs[i] = tensor_map_with(res.complex.diffs[i], N, terms[i], terms[i - 1])
    C = ChainComplex(terms, diffs)
    groups = {i: C.homology(i) for i in range(kmax + 1)}
    return ExtTable("tor", (0, kmax), groups, C, res)


@dataclass
class HomModule:
    """Hom(M, N) with each generator realised as a map M -> N."""
    source: FPModule
    target: FPModule
    sub: SubQuotient

    @property
    def module(self) -> FPModule:
        return self.sub.module

    def to_map(self, v: dict, twist: int) -> ModuleMap:
        """The map M -> N given by a vector in the Hom(F_0, N) cover."""
        n = self.target.rank
        imgs = [vproject(v, j * n, (j + 1) * n) for j in range(self.source.rank)]
        return ModuleMap(self.source, self.target, imgs, twist, check=False)

    def from_map(self, f: ModuleMap) -> dict:
        n = self.target.rank
        out: dict = {}
        for j, img in enumerate(f.images):
            out.update({(c + j * n, e): a for (c, e), a in img.items()})
        return out

    def generators(self) -> list:
        H = self.sub.ambient
        return [self.to_map(v, H.degree_of(v)) for v in self.sub.reps]

    def basis(self, t: int) -> list:
        """A vector-space basis of Hom(M, N)_t, as maps."""
        H = self.sub.ambient
        field = self.source.ring.field
        cand = []
        for v in self.sub.reps:
            dv = H.degree_of(v)
            for e in self.source.ring.ambient.monomials(t - dv):
                w = H.reduce(vmul_mono(v, e, 1, H.p))
                if w:
                    cand.append(w)
        keep, rows = [], []
        for w in cand:
            trial = rows + [H.coords(w, t)]
            if _rank(trial, field) > len(rows):
                rows = trial
                keep.append(w)
        return [self.to_map(w, t) for w in keep]


def hom_module(M: FPModule, N: FPModule) -> HomModule:
    F0 = FPModule.free(M.ring, M.shifts)
    F1 = FPModule.free(M.ring, M.relation_degrees())
    d = ModuleMap(F1, F0, M.relations, 0, check=False)
    H0 = hom_free_into(F0, N)
    H1 = hom_free_into(F1, N)
    delta = hom_precompose(d, N, H0, H1)
    return HomModule(M, N, subquotient(H0, delta.kernel_gens()))


@dataclass
class SplitResult:
    split: bool
    retraction: ModuleMap | None
    certificate: list | None = None  # left null vector when no retraction exists
    hom_dim: int = 0


def split_injection_test(alpha: ModuleMap) -> SplitResult:
    """Decide whether some beta with beta o alpha == id exists, by one linear system.

    The unknowns are coordinates in a basis of Hom(Q, M) in degree -twist; the
    equations are the coordinates of beta o alpha - id in Hom(F_0(M), M)_0.
    """
    M, Q = alpha.source, alpha.target
    t = alpha.twist
    field = M.ring.field
    H = hom_module(Q, M)
    basis = H.basis(-t)
    ident = M.identity()

    def coords(f: ModuleMap):
        out = []
        for j, img in enumerate(f.images):
            out.extend(M.coords(img, M.shifts[j]))
        return out

    b = coords(ident)
    cols = [coords(beta.compose(alpha)) for beta in basis]
    A = [[col[r] for col in cols] for r in range(len(b))]
    x = solve(A, b, field) if cols else (None if any(b) else [])
    if x is None:
        return SplitResult(False, None, left_certificate(A, b, field) if cols else None, len(basis))
    beta = Q.zero_map(M, -t)
    for c, bl in zip(x, basis):
        if c:
            beta = beta + bl.scaled(c)
    if not beta.compose(alpha).equals(ident):
        raise AssertionError("retraction failed verification")
    return SplitResult(True, beta, None, len(basis))


def find_retraction(alpha: ModuleMap) -> ModuleMap | None:
    """Module-theoretic route to a retraction: lift id_M through Hom(Q, M) -> Hom(M, M)."""
    M, Q = alpha.source, alpha.target
    t = alpha.twist
    p = M.p
    H = hom_module(Q, M)
    F0 = FPModule.free(M.ring, M.shifts)
    HM = hom_free_into(F0, M)
    n = M.rank
    imgs, degs = [], []
    for v in H.sub.reps:
        dv = H.sub.ambient.degree_of(v)
        beta = H.to_map(v, dv)
        comp = beta.compose(alpha)
        w: dict = {}
        for j, img in enumerate(comp.images):
            w.update({(c + j * n, e): a for (c, e), a in img.items()})
        imgs.append(w)
        degs.append(dv + t)
    target: dict = {}
    z = M.ring.ambient.zero_exp
    for j in range(n):
        target[(j * n + j, z)] = 1
    target = HM.reduce(target)
    sub = Submodule(M.ring, HM.shifts, imgs + list(HM.relations), degs + HM.relation_degrees())
    c = sub.lift(target)
    if c is None:
        return None
    coeff = vproject(c, 0, len(imgs))
    v = vlincomb(coeff, H.sub.reps, p)
    beta = H.to_map(H.sub.ambient.reduce(v), -t)
    if not beta.compose(alpha).equals(M.identity()):
        raise AssertionError("retraction failed verification")
    return beta


def degree_window_iso(f: ModuleMap, lo: int, hi: int) -> bool:
    """f is bijective in every degree of [lo, hi]."""
    field = f.source.ring.field
    for d in range(lo, hi + 1):
        a, b = f.source.dim(d), f.target.dim(d + f.twist)
        if a != b:
            return False
        if a and _rank(f.degree_matrix(d), field) != a:
            return False
    return True


ext_disc = ext
tor_disc = tor
