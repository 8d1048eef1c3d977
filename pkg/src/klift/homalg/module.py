"""Finitely presented graded modules and homogeneous maps between them."""
from __future__ import annotations

from ..ring_core.linalg import rank as _rank
from ..ring_core.quotient import QuotientRing, RingElem, vec_entry
from ..ring_core.submodule import Submodule, is_homogeneous_vec, minimal_generators, vec_degree
from ..ring_core.vec import vadd, vembed, ventry, vlincomb, vmul_poly, vneg, vproject, vscale


class FPModule:
    """coker(R^r -> R^m): generators of degrees `shifts`, relation vectors in R^m."""

    def __init__(self, ring: QuotientRing, shifts, relations=(), *, check: bool = True):
        self.ring = ring
        self.shifts = tuple(int(s) for s in shifts)
        rels = []
        for r in relations:
            r = ring.reduce_vec(dict(r))
            if not r:
                continue
            if check:
                if any(j >= len(self.shifts) or j < 0 for j, _ in r):
                    raise ValueError("relation has more entries than the module has generators")
                if not is_homogeneous_vec(r, self.shifts, ring):
                    raise ValueError("relations must be homogeneous")
            rels.append(r)
        self.relations = rels
        self._sub: Submodule | None = None
        self._min = None
        self._dim_cache: dict = {}

    # -- constructors ------------------------------------------------------
    @classmethod
    def free(cls, ring: QuotientRing, shifts) -> "FPModule":
        return cls(ring, shifts, ())

    @classmethod
    def cyclic(cls, ring: QuotientRing, ideal_gens=(), shift: int = 0) -> "FPModule":
        rels = [{(0, e): c for e, c in ring.lift_poly(g).terms.items()} for g in ideal_gens]
        return cls(ring, (shift,), rels)

    @classmethod
    def from_matrix(cls, ring: QuotientRing, shifts, columns) -> "FPModule":
        """columns: list of relations, each a list of ring elements / strings."""
        rels = []
        for col in columns:
            if len(col) != len(shifts):
                raise ValueError("relation length does not match the number of generators")
            v = {}
            for j, entry in enumerate(col):
                f = ring.lift_poly(entry) if not isinstance(entry, str) else ring.ambient.parse(entry)
                for e, c in f.terms.items():
                    v[(j, e)] = c
            rels.append(v)
        return cls(ring, shifts, rels)

    # -- basic data --------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.shifts)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def nvars(self) -> int:
        return self.ring.ambient.nvars

    def relation_degrees(self):
        return [self.degree_of(r) for r in self.relations]

    def degree_of(self, v: dict) -> int | None:
        return vec_degree(v, self.shifts, self.ring)

    @property
    def relsub(self) -> Submodule:
        if self._sub is None:
            self._sub = Submodule(self.ring, self.shifts, self.relations)
        return self._sub

    def gen(self, j: int) -> dict:
        return {(j, self.ring.ambient.zero_exp): 1}

    def reduce(self, v: dict) -> dict:
        return self.relsub.reduce(v) if (self.relations or not self.ring.ideal.is_zero()) else dict(v)

    def is_zero_elem(self, v: dict) -> bool:
        return not self.reduce(v)

    def elem(self, entries) -> dict:
        """Vector from a list of ring elements / polynomial strings."""
        v = {}
        for j, entry in enumerate(entries):
            f = self.ring.ambient.parse(entry) if isinstance(entry, str) else self.ring.lift_poly(entry)
            for e, c in f.terms.items():
                v[(j, e)] = c
        return self.reduce(v)

    def entries(self, v: dict) -> list:
        return [RingElem(self.ring, vec_entry(self.ring.ambient, v, j)) for j in range(self.rank)]

    # -- Hilbert function --------------------------------------------------
    def _leads_by_comp(self):
        out: dict = {}
        for c, e in self.relsub.gb.leads:
            out.setdefault(c, []).append(e)
        return out

    def basis(self, d: int) -> list:
        """Standard terms (component, exponent) of degree d; a vector-space basis of M_d."""
        leads = self._leads_by_comp() if (self.relations or not self.ring.ideal.is_zero()) else {}
        out = []
        for j, s in enumerate(self.shifts):
            ls = leads.get(j, ())
            for e in self.ring.ambient.monomials(d - s):
                if not any(all(a <= b for a, b in zip(l, e)) for l in ls):
                    out.append((j, e))
        return out

    def dim(self, d: int) -> int:
        if d not in self._dim_cache:
            self._dim_cache[d] = len(self.basis(d))
        return self._dim_cache[d]

    def dims(self, lo: int, hi: int) -> list:
        return [self.dim(d) for d in range(lo, hi + 1)]

    def coords(self, v: dict, d: int) -> list:
        """Coordinates of a degree-d vector in the standard basis of M_d."""
        r = self.reduce(v)
        return [r.get(t, 0) for t in self.basis(d)]

    def from_coords(self, coords, d: int) -> dict:
        return {t: c for t, c in zip(self.basis(d), coords) if c}

    def is_zero(self) -> bool:
        return all(self.is_zero_elem(self.gen(j)) for j in range(self.rank))

    def min_degree(self) -> int | None:
        live = [s for j, s in enumerate(self.shifts) if not self.is_zero_elem(self.gen(j))]
        return min(live) if live else None

    def is_finite_length(self) -> bool:
        leads = self._leads_by_comp() if (self.relations or not self.ring.ideal.is_zero()) else {}
        n = self.nvars
        for j in range(self.rank):
            ls = leads.get(j, ())
            for i in range(n):
                if not any(l[i] > 0 and sum(l) == l[i] for l in ls):
                    return False
        return True

    def top_degree(self) -> int | None:
        """Largest nonzero degree of a finite-length module."""
        if not self.is_finite_length():
            raise ValueError("module is not of finite length")
        leads = self._leads_by_comp()
        w = self.ring.ambient.degrees
        top = None
        for j, s in enumerate(self.shifts):
            bound = s
            for i in range(self.nvars):
                a = min(l[i] for l in leads[j] if l[i] > 0 and sum(l) == l[i])
                bound += (a - 1) * w[i]
            for d in range(bound, s - 1, -1):
                if any(t[0] == j for t in self.basis(d)):
                    top = d if top is None else max(top, d)
                    break
        return top

    def hilbert_window(self, lo: int, hi: int) -> dict:
        return {d: self.dim(d) for d in range(lo, hi + 1)}

    # -- derived modules ---------------------------------------------------
    def shifted(self, s: int) -> "FPModule":
        """Same module with every degree raised by s."""
        return FPModule(self.ring, [a + s for a in self.shifts], self.relations, check=False)

    def change_ring(self, ring: QuotientRing) -> "FPModule":
        if ring.ambient != self.ring.ambient:
            raise ValueError("rings must share the ambient polynomial ring")
        return FPModule(ring, self.shifts, self.relations)

    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, [self.gen(j) for j in range(self.rank)], 0)

    def zero_map(self, target: "FPModule", twist: int = 0) -> "ModuleMap":
        return ModuleMap(self, target, [{} for _ in range(self.rank)], twist)

    def multiplication(self, f) -> "ModuleMap":
        """The map x -> f x, of degree deg f."""
        f = self.ring.lift_poly(f)
        if not f.is_homogeneous():
            raise ValueError("multiplier must be homogeneous")
        d = f.degree() or 0
        imgs = [vmul_poly(self.gen(j), f.terms, self.p) for j in range(self.rank)]
        return ModuleMap(self, self, imgs, d)

    def minimize(self) -> "Minimized":
        """Minimal presentation together with inverse isomorphisms."""
        if self._min is None:
            self._min = _minimize(self)
        return self._min

    def presentation_str(self) -> str:
        rows = [[str(x) for x in self.entries(r)] for r in self.relations]
        return f"coker(shifts={list(self.shifts)}; rels={rows})"

    def __repr__(self):
        return f"FPModule(rank={self.rank}, shifts={list(self.shifts)}, relations={len(self.relations)})"


class Minimized:
    def __init__(self, module, to_min, from_min):
        self.module = module
        self.to_min = to_min
        self.from_min = from_min


def _minimize(M: FPModule) -> Minimized:
    ring, p = M.ring, M.p
    z = ring.ambient.zero_exp
    m = M.rank
    rels = [dict(r) for r in M.relations]
    subst = {j: {(j, z): 1} for j in range(m)}
    alive = list(range(m))

    def substitute(v, c, expr):
        q = ventry(v, c)
        if not q:
            return v
        rest = {t: a for t, a in v.items() if t[0] != c}
        return vadd(rest, vmul_poly(expr, q, p), p)

    while True:
        found = None
        for ri, r in enumerate(rels):
            units = sorted(j for (j, e) in r if e == z)
            if units:
                found = (ri, units[0])
                break
        if found is None:
            break
        ri, c = found
        r = rels.pop(ri)
        a = r[(c, z)]
        inv = ring.field.inv(a)
        expr = vscale({t: v for t, v in r.items() if t != (c, z)}, -inv, p)
        rels = [ring.reduce_vec(substitute(v, c, expr)) for v in rels]
        rels = [v for v in rels if v]
        for j in subst:
            subst[j] = substitute(subst[j], c, expr)
        alive.remove(c)

    renum = {old: new for new, old in enumerate(alive)}

    def ren(v):
        return {(renum[j], e): a for (j, e), a in v.items()}

    shifts = [M.shifts[j] for j in alive]
    rels = [ren(v) for v in rels]
    rels = minimal_generators(ring, shifts, rels) if rels else []
    Mm = FPModule(ring, shifts, rels, check=False)
    to_min = ModuleMap(M, Mm, [ring.reduce_vec(ren(subst[j])) for j in range(m)], 0, check=False)
    from_min = ModuleMap(Mm, M, [M.gen(j) for j in alive], 0, check=False)
    return Minimized(Mm, to_min, from_min)


class ModuleMap:
    """Homogeneous R-linear map of degree `twist`, given by images of generators."""

    def __init__(self, source: FPModule, target: FPModule, images, twist: int = 0, *, check: bool = True):
        if len(images) != source.rank:
            raise ValueError("need one image per source generator")
        self.source = source
        self.target = target
        self.twist = int(twist)
        self.images = [target.reduce(dict(v)) for v in images]
        if check:
            for j, v in enumerate(self.images):
                if v:
                    if not is_homogeneous_vec(v, target.shifts, target.ring):
                        raise ValueError("images must be homogeneous")
                    if target.degree_of(v) != source.shifts[j] + self.twist:
                        raise ValueError(
                            f"image of generator {j} has degree {target.degree_of(v)}, "
                            f"expected {source.shifts[j] + self.twist}")
            if not self.is_well_defined():
                raise ValueError("map does not respect the relations of the source")

    @property
    def p(self):
        return self.source.p

    def apply(self, v: dict) -> dict:
        return self.target.reduce(vlincomb(v, self.images, self.p))

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero_elem(vlincomb(r, self.images, self.p)) for r in self.source.relations)

    def compose(self, inner: "ModuleMap") -> "ModuleMap":
        """self o inner."""
        if inner.target.rank != self.source.rank:
            raise ValueError("maps are not composable")
        return ModuleMap(inner.source, self.target, [self.apply(v) for v in inner.images],
                         self.twist + inner.twist, check=False)

    def __matmul__(self, inner):
        return self.compose(inner)

    def _check_parallel(self, other):
        if other.source.rank != self.source.rank or other.target.rank != self.target.rank:
            raise ValueError("maps have different shapes")
        if other.twist != self.twist:
            raise ValueError("maps have different degrees")

    def __add__(self, other):
        self._check_parallel(other)
        return ModuleMap(self.source, self.target,
                         [vadd(a, b, self.p) for a, b in zip(self.images, other.images)], self.twist, check=False)

    def __neg__(self):
        return ModuleMap(self.source, self.target, [vneg(a, self.p) for a in self.images], self.twist, check=False)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [vscale(a, c, self.p) for a in self.images], self.twist,
                         check=False)

    def is_zero(self) -> bool:
        return all(not v for v in self.images)

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()

    # -- kernels, images, cokernels -------------------------------------------
    def _preimage_sub(self) -> Submodule:
        T = self.target
        gens = list(self.images) + list(T.relations)
        degs = [s + self.twist for s in self.source.shifts] + T.relation_degrees()
        return Submodule(T.ring, T.shifts, gens, degs)

    def kernel_gens(self) -> list:
        """Generators (vectors in the source cover) of the kernel, minimal modulo source relations."""
        k = self.source.rank
        sub = self._preimage_sub()
        gens = []
        for s in sub.syzygies():
            v = self.source.reduce(vproject(s, 0, k))
            if v:
                gens.append(v)
        return minimal_generators(self.source.ring, self.source.shifts, gens,
                                  modulo=self.source.relations) if gens else []

    def kernel(self) -> "SubQuotient":
        return subquotient(self.source, self.kernel_gens())

    def image(self) -> "SubQuotient":
        return subquotient(self.target, [v for v in self.images if v])

    def cokernel(self) -> tuple:
        T = self.target
        C = FPModule(T.ring, T.shifts, list(T.relations) + [v for v in self.images if v], check=False)
        return C, ModuleMap(T, C, [T.gen(j) for j in range(T.rank)], 0, check=False)

    def is_injective(self) -> bool:
        return not self.kernel_gens()

    def is_surjective(self) -> bool:
        C, _ = self.cokernel()
        return C.is_zero()

    def is_iso(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def lift_through(self, v: dict):
        """A source vector w with self(w) == v, or None."""
        sub = self._preimage_sub()
        c = sub.lift(v)
        if c is None:
            return None
        return self.source.reduce(vproject(c, 0, self.source.rank))

    def degree_matrix(self, d: int) -> list:
        """Matrix of M_d -> N_{d+twist} in standard bases (rows index the target)."""
        src = self.source.basis(d)
        tgt_d = d + self.twist
        cols = []
        for (j, e) in src:
            v = self.apply({(j, e): 1})
            cols.append(self.target.coords(v, tgt_d))
        nrows = self.target.dim(tgt_d)
        return [[cols[c][r] for c in range(len(cols))] for r in range(nrows)]

    def rank_in_degree(self, d: int) -> int:
        return _rank(self.degree_matrix(d), self.source.ring.field)

    def __repr__(self):
        return f"ModuleMap({self.source.rank}->{self.target.rank}, twist={self.twist})"


class SubQuotient:
    """A module presented on chosen vectors `reps` of an ambient module, modulo `den`.

    `module` is generated by the classes of reps; `to_class` expresses an ambient
    vector lying in span(reps) + den as an element of `module`.
    """

    def __init__(self, module: FPModule, ambient: FPModule, reps, den, sub: Submodule):
        self.module = module
        self.ambient = ambient
        self.reps = reps
        self.den = den
        self._sub = sub

    def to_class(self, v: dict):
        c = self._sub.lift(v)
        if c is None:
            return None
        return self.module.reduce(vproject(c, 0, len(self.reps)))

    def inclusion(self) -> ModuleMap:
        """The map into the ambient module (only meaningful when den is empty)."""
        return ModuleMap(self.module, self.ambient, self.reps, 0, check=False)


def subquotient(M: FPModule, num, den=()) -> SubQuotient:
    """(span(num) + den + rel) / (den + rel), presented on a minimal subset of num."""
    den = [M.reduce(v) for v in den]
    den = [v for v in den if v]
    num = [M.reduce(v) for v in num]
    num = [v for v in num if v]
    if num:
        num = minimal_generators(M.ring, M.shifts, num, modulo=list(den) + list(M.relations))
    k = len(num)
    gens = num + den + list(M.relations)
    degs = [M.degree_of(v) for v in gens]
    sub = Submodule(M.ring, M.shifts, gens, degs)
    rels = [vproject(s, 0, k) for s in sub.syzygies()]
    Q = FPModule(M.ring, degs[:k], rels, check=False)
    return SubQuotient(Q, M, num, den, sub)


def same_submodule(M: FPModule, a, b) -> bool:
    """span(a) == span(b) modulo the relations of M."""
    sa = Submodule(M.ring, M.shifts, [v for v in a if v] + list(M.relations))
    sb = Submodule(M.ring, M.shifts, [v for v in b if v] + list(M.relations))
    return sa.contains_all(b) and sb.contains_all(a)


def contained(M: FPModule, a, b) -> bool:
    """span(a) is contained in span(b) modulo the relations of M."""
    sb = Submodule(M.ring, M.shifts, [v for v in b if v] + list(M.relations))
    return sb.contains_all(a)


def direct_sum(mods) -> tuple:
    """The sum, the inclusions and the projections."""
    mods = list(mods)
    ring = mods[0].ring
    shifts, rels, offs = [], [], []
    for M in mods:
        offs.append(len(shifts))
        rels.extend(vembed(r, len(shifts)) for r in M.relations)
        shifts.extend(M.shifts)
    S = FPModule(ring, shifts, rels, check=False)
    incs, projs = [], []
    for M, o in zip(mods, offs):
        incs.append(ModuleMap(M, S, [S.gen(o + j) for j in range(M.rank)], 0, check=False))
        imgs = []
        for j in range(S.rank):
            imgs.append(M.gen(j - o) if o <= j < o + M.rank else {})
        projs.append(ModuleMap(S, M, imgs, 0, check=False))
    return S, incs, projs


def torsion_submodule(M: FPModule, f) -> SubQuotient:
    """M[f] = {m : f m = 0}."""
    return M.multiplication(f).kernel()


def quotient_by_elem(M: FPModule, f) -> tuple:
    """M / f M with the projection."""
    return M.multiplication(f).cokernel()


def multiple_submodule(M: FPModule, f) -> list:
    """Generators of f M."""
    return [v for v in M.multiplication(f).images if v]


def pushout(gamma: ModuleMap, iota: ModuleMap) -> tuple:
    """E = (M + P) / {(gamma w, -iota w)} for gamma: W -> M, iota: W -> P (both degree 0)."""
    if gamma.source.rank != iota.source.rank:
        raise ValueError("maps must share their source")
    if gamma.twist != 0 or iota.twist != 0:
        raise ValueError("pushout needs degree-zero maps; shift the target first")
    M, P = gamma.target, iota.target
    p = M.p
    m = M.rank
    rels = [dict(r) for r in M.relations] + [vembed(r, m) for r in P.relations]
    for a, b in zip(gamma.images, iota.images):
        rels.append(vadd(a, vembed(vneg(b, p), m), p))
    E = FPModule(M.ring, list(M.shifts) + list(P.shifts), rels, check=False)
    to_E_from_M = ModuleMap(M, E, [E.gen(j) for j in range(m)], 0, check=False)
    to_E_from_P = ModuleMap(P, E, [E.gen(m + j) for j in range(P.rank)], 0, check=False)
    return E, to_E_from_M, to_E_from_P
