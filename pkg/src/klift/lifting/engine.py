"""One step of lifting along x: alpha_0, the split test, the extension E and the obstruction."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

from ..homalg import FPModule, ModuleMap, ext, hom_module, pushout, split_injection_test
from ..homalg.complex import exact_at, find_retraction
from ..homalg.module import multiple_submodule, quotient_by_elem, same_submodule, torsion_submodule
from ..koszul_dg import KoszulDGAlgebra, dg_ext
from ..ring_core.quotient import QuotientRing, RingElem
from ..ring_core.submodule import Submodule
from ..ring_core.vec import vadd, vmul_mono, vmul_poly


class LiftingError(ValueError):
    """A precondition of the lifting construction is violated."""


def as_elem(A: QuotientRing, x) -> RingElem:
    if isinstance(x, RingElem):
        return x
    return A(A.ambient.parse(x) if isinstance(x, str) else x)


def xpow(A: QuotientRing, x: RingElem, k: int) -> RingElem:
    out = A(1)
    for _ in range(k):
        out = out * x
    return out


def xdeg(x: RingElem) -> int:
    d = x.degree()
    if not d:
        raise LiftingError(f"{x} must be a nonzero homogeneous element of positive degree")
    return d


def kills(M: FPModule, f: RingElem) -> bool:
    return all(M.is_zero_elem(vmul_poly(M.gen(j), f.poly.terms, M.p)) for j in range(M.rank))


# -- syzygy cover -------------------------------------------------------------

@dataclass
class OmegaCover:
    module: FPModule      # minimal presentation of L, equal to P / Omega
    P: FPModule
    p: ModuleMap          # P -> module
    omega: FPModule
    iota: ModuleMap       # omega -> P
    to_min: ModuleMap     # L -> module
    from_min: ModuleMap   # module -> L


def omega_cover(L: FPModule) -> OmegaCover:
    """P free on minimal generators of L, Omega = ker(P -> L) presented by its syzygies."""
    mz = L.minimize()
    Lm = mz.module
    A = L.ring
    P = FPModule.free(A, Lm.shifts)
    p = ModuleMap(P, Lm, [Lm.gen(j) for j in range(Lm.rank)], 0, check=False)
    rels = list(Lm.relations)
    degs = Lm.relation_degrees()
    syz = Submodule(A, P.shifts, rels, degs).syzygies() if rels else []
    omega = FPModule(A, degs, syz, check=False)
    iota = ModuleMap(omega, P, rels, 0, check=False)
    if rels and not exact_at(iota, p):
        raise AssertionError("syzygy cover is not exact")
    return OmegaCover(Lm, P, p, omega, iota, mz.to_min, mz.from_min)


# -- lifting preconditions ----------------------------------------------------

def check_lifting(M: FPModule, L: FPModule, pi: ModuleMap, x: RingElem, n: int) -> list:
    """Violated identities for L being an order-n lifting of M via pi: L -> M."""
    bad = []
    if not kills(M, x):
        bad.append("x M != 0")
    if not kills(L, xpow(L.ring, x, n)):
        bad.append(f"x^{n} L != 0")
    if not pi.is_surjective():
        bad.append("L -> M is not onto")
    elif not same_submodule(L, pi.kernel_gens(), multiple_submodule(L, x)):
        bad.append("ker(L -> M) != x L")
    if n >= 2:
        if not same_submodule(L, torsion_submodule(L, x).reps, multiple_submodule(L, xpow(L.ring, x, n - 1))):
            bad.append(f"L[x] != x^{n - 1} L")
        if not same_submodule(L, torsion_submodule(L, xpow(L.ring, x, n - 1)).reps, multiple_submodule(L, x)):
            bad.append(f"L[x^{n - 1}] != x L")
    return bad


# -- alpha_0 ------------------------------------------------------------------

@dataclass
class Alpha0:
    map: ModuleMap            # M(-n deg x) -> Omega/x Omega, degree zero
    twist: int                # n deg x
    cover: OmegaCover
    quotient: FPModule        # Omega / x Omega
    proj: ModuleMap           # Omega -> Omega / x Omega
    pi: ModuleMap             # minimal L -> M
    syzygy: FPModule          # ker(P/xP -> M)
    r0: ModuleMap             # Omega / x Omega -> syzygy
    exact: bool               # M -> Omega/xOmega -> syzygy -> 0 exact

    @property
    def source(self) -> FPModule:
        return self.map.source

    def twisted(self) -> ModuleMap:
        """alpha_0 as a map M -> Omega/xOmega of degree n deg x."""
        M = self.source.shifted(-self.twist)
        return ModuleMap(M, self.quotient, self.map.images, self.twist, check=False)


def alpha0(M: FPModule, L: FPModule, x, n: int, pi: ModuleMap | None = None, check: bool = True) -> Alpha0:
    """alpha_0(m) = class of x^n l in Omega/x Omega, for l in L lifting m (taken as a vector in P)."""
    A = M.ring
    x = as_elem(A, x)
    dx = xdeg(x)
    if pi is None:
        if n != 1:
            raise LiftingError("a map L -> M is needed for n >= 2")
        pi = L.identity() if L is M else ModuleMap(L, M, [M.gen(j) for j in range(M.rank)], 0)
    if check:
        bad = check_lifting(M, L, pi, x, n)
        if bad:
            raise LiftingError("not a lifting: " + "; ".join(bad))
    cov = omega_cover(L)
    pim = pi.compose(cov.from_min)
    Q, proj = quotient_by_elem(cov.omega, x)
    t = n * dx
    Ms = M.shifted(t)
    xn = xpow(A, x, n).poly.terms
    imgs = []
    for j in range(M.rank):
        l = pim.lift_through(M.gen(j))
        if l is None:
            raise LiftingError("L -> M is not onto")
        w = A.reduce_vec(vmul_poly(l, xn, A.p))
        c = cov.iota.lift_through(w) if w else {}
        if c is None:
            raise AssertionError("x^n l is not in Omega")
        imgs.append(Q.reduce(c))
    amap = ModuleMap(Ms, Q, imgs, 0, check=check)
    # r0 : Omega/x Omega -> ker(P/xP -> M)
    P = cov.P
    Pbar = FPModule(A, P.shifts, [vmul_poly(P.gen(j), x.poly.terms, A.p) for j in range(P.rank)], check=False)
    to_M = ModuleMap(Pbar, M, pim.images, 0, check=False)
    K = to_M.kernel()
    r_imgs = []
    for v in cov.iota.images:
        c = K.to_class(v)
        if c is None:
            raise AssertionError("Omega does not map into the syzygy of M")
        r_imgs.append(c)
    r0 = ModuleMap(Q, K.module, r_imgs, 0, check=False)
    exact = r0.compose(amap).is_zero() and r0.is_surjective() and (
        exact_at(amap, r0) if Q.rank else True)
    if check and not exact:
        raise AssertionError("M -> Omega/x Omega -> syzygy -> 0 is not exact")
    return Alpha0(amap, t, cov, Q, proj, pim, K.module, r0, exact)


# -- verification -------------------------------------------------------------

@dataclass
class LiftingReport:
    flags: dict
    by_dims: bool = False
    window: tuple | None = None

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


def _dims_equal(a: FPModule, b: FPModule, window) -> bool:
    return a.dims(*window) == b.dims(*window)


def verify_lifting(E: FPModule, L: FPModule, M: FPModule, x, n: int, g: ModuleMap | None = None,
                   f: ModuleMap | None = None, pi: ModuleMap | None = None, window=None) -> LiftingReport:
    """Flags: (i) 0 -> M -> E -> L -> 0 exact, (ii) E/xE = M, (iii) E/x^nE = L, (iv) E[x^n] = xE, (v) E[x] = x^nE.

    With the maps g: M -> E, f: E -> L and pi: L -> M the isomorphisms are checked
    through them; without maps (ii) and (iii) compare Hilbert functions in `window`.
    """
    A = E.ring
    x = as_elem(A, x)
    xn = xpow(A, x, n)
    flags = {}
    flags["x^(n+1) E = 0"] = kills(E, xpow(A, x, n + 1))
    xE = multiple_submodule(E, x)
    xnE = multiple_submodule(E, xn)
    by_dims = g is None or f is None
    if window is None:
        lows = [m.min_degree() for m in (E, L, M) if not m.is_zero()]
        lo = min(lows) if lows else 0
        window = (lo, lo + (n + 2) * xdeg(x) + 6)
    if by_dims:
        Q1, _ = quotient_by_elem(E, x)
        Qn, _ = quotient_by_elem(E, xn)
        flags["(i) exact"] = all(E.dim(d) == M.dim(d - (n * xdeg(x))) + L.dim(d) for d in range(*window))
        flags["(ii) E/xE = M"] = _dims_equal(Q1, M, window)
        flags["(iii) E/x^nE = L"] = _dims_equal(Qn, L, window)
    else:
        flags["(i) exact"] = g.is_injective() and f.is_surjective() and exact_at(g, f)
        if pi is None:
            Q1, _ = quotient_by_elem(E, x)
            flags["(ii) E/xE = M"] = _dims_equal(Q1, M, window)
        else:
            h = pi.compose(f)
            flags["(ii) E/xE = M"] = h.is_surjective() and same_submodule(E, h.kernel_gens(), xE)
        flags["(iii) E/x^nE = L"] = same_submodule(E, f.kernel_gens(), xnE)
    flags["(iv) E[x^n] = xE"] = same_submodule(E, torsion_submodule(E, xn).reps, xE)
    flags["(v) E[x] = x^nE"] = same_submodule(E, torsion_submodule(E, x).reps, xnE)
    return LiftingReport(flags, by_dims, window if by_dims else None)


# -- one lifting step ---------------------------------------------------------

@dataclass
class Obstruction:
    kind: str            # "alpha0_not_injective" or "extension_class"
    witness: dict        # a vector: kernel element of alpha_0, or an Ext^1 cocycle
    nonzero: bool        # witness checked to be a nonzero class
    group: FPModule | None = None
    detail: dict = dc_field(default_factory=dict)


@dataclass
class LiftStepResult:
    success: bool
    n: int
    alpha0: Alpha0
    split_linear: bool
    E: FPModule | None = None
    g: ModuleMap | None = None       # M(-n deg x) -> E
    f: ModuleMap | None = None       # E -> L (minimal presentation of L)
    pi: ModuleMap | None = None      # E -> M
    mult_x: ModuleMap | None = None  # L -> E, multiplication by x
    beta0: ModuleMap | None = None
    report: LiftingReport | None = None
    obstruction: Obstruction | None = None
    ext2: dict | None = None


def extension_from(al: Alpha0, beta: ModuleMap, x: RingElem):
    """E = pushout of (beta o proj: Omega -> M) and (Omega -> P), with its structure maps."""
    cov = al.cover
    Ms = al.source
    gamma = beta.compose(al.proj)
    E, g, j = pushout(gamma, cov.iota)
    L = cov.module
    m = Ms.rank
    f = ModuleMap(E, L, [{} for _ in range(m)] + [L.gen(k) for k in range(L.rank)], 0, check=False)
    pi = al.pi.compose(f)
    mx = ModuleMap(L, E, [E.reduce(vmul_poly(E.gen(m + k), x.poly.terms, E.p)) for k in range(L.rank)],
                   xdeg(x), check=False)
    return E, g, f, pi, mx


def obstruction_of(al: Alpha0, x: RingElem) -> Obstruction:
    """Witness that alpha_0 has no retraction."""
    a = al.map
    kern = a.kernel_gens()
    if kern:
        return Obstruction("alpha0_not_injective", kern[0], not a.source.is_zero_elem(kern[0]),
                           detail={"kernel_generators": len(kern)})
    # 0 -> M -> Omega/xOmega -> S -> 0 is exact: its class in Ext^1_{A/x}(S, M)
    A = a.source.ring
    Abar = A.quotient([x])
    Ms = a.source
    S = al.syzygy
    E1 = ext(S.change_ring(Abar), Ms.change_ring(Abar), 1)
    res = E1.resolution
    F0, F1 = res.complex.terms[0], res.complex.terms[1]
    d1 = res.complex.diffs[1]
    w = []
    for v in res.augmentation.images:
        u = al.r0.lift_through(v)
        if u is None:
            raise AssertionError("syzygy generator does not lift")
        w.append(u)
    n = Ms.rank
    p = A.p
    cocycle: dict = {}
    for k, col in enumerate(d1.images):
        val: dict = {}
        for (jj, e), c in col.items():
            val = vadd(val, vmul_mono(w[jj], e, c, p), p)
        val = al.quotient.reduce(val)
        m = a.lift_through(val) if val else {}
        if m is None:
            raise AssertionError("relation image is not in the image of alpha_0")
        for (g, e), c in m.items():
            cocycle[(k * n + g, e)] = c
    H = E1.groups[1]
    cls = H.to_class(cocycle)
    nonzero = cls is not None and not H.module.is_zero_elem(cls)
    return Obstruction("extension_class", cocycle, nonzero, H.module,
                       {"class": cls, "resolution_ranks": [F0.rank, F1.rank]})


def ext2_window(M: FPModule, x: RingElem, window=None) -> dict:
    """dims of Ext^2 over Kos(x; A) of (M, M) in an internal-degree window."""
    G = KoszulDGAlgebra(M.ring, [x])
    E = dg_ext(G, M, M, 2)
    mod = E.module(2)
    if window is None:
        lo = mod.min_degree() if not mod.is_zero() else 0
        window = (lo, lo + 6)
    return {"window": list(window), "dims": mod.dims(*window), "zero": mod.is_zero()}


def lift_step(M: FPModule, L: FPModule, x, n: int, pi: ModuleMap | None = None, *,
              method: str = "module", with_ext2: bool = False, al: Alpha0 | None = None,
              beta: ModuleMap | None = None) -> LiftStepResult:
    """Try to lift the order-n lifting L of M to order n + 1."""
    A = M.ring
    x = as_elem(A, x)
    al = al or alpha0(M, L, x, n, pi)
    lin = split_injection_test(al.map)
    if beta is None:
        beta = find_retraction(al.map) if method == "module" else lin.retraction
    ext2 = ext2_window(M, x) if with_ext2 else None
    if beta is None:
        return LiftStepResult(False, n, al, lin.split, obstruction=obstruction_of(al, x), ext2=ext2)
    E, g, f, pi_E, mx = extension_from(al, beta, x)
    rep = verify_lifting(E, al.cover.module, al.source, x, n, g, f, al.pi)
    if not rep.ok:
        raise AssertionError(f"constructed extension fails verification: {rep.flags}")
    return LiftStepResult(True, n, al, lin.split, E, g, f, pi_E, mx, beta, rep, None, ext2)


def exhaustive_lift_search(al: Alpha0, x, n: int, cap: int = 243) -> dict:
    """Try every degree-zero map Omega/xOmega -> M as gamma-bar (up to cap) and verify each pushout."""
    A = al.source.ring
    x = as_elem(A, x)
    basis = hom_module(al.quotient, al.source).basis(0)
    q = A.p or 0
    if q == 0:
        raise LiftingError("exhaustive search needs a finite field")
    total = q ** len(basis)
    if total > cap:
        return {"searched": 0, "total": total, "found": None, "complete": False}
    found = None
    for coeffs in product(range(q), repeat=len(basis)):
        beta = al.quotient.zero_map(al.source, 0)
        for c, b in zip(coeffs, basis):
            if c:
                beta = beta + b.scaled(c)
        E, g, f, _, _ = extension_from(al, beta, x)
        if verify_lifting(E, al.cover.module, al.source, x, n, g, f, al.pi).ok:
            found = coeffs
            break
    return {"searched": total, "total": total, "found": found, "complete": True}
