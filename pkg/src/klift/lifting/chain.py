"""Iterated lifting: chains L_1 = M, L_2, ..., the limit module, several elements, and the regularity check."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import ceil

from ..homalg import FPModule, ModuleMap, ext, hom_module
from ..homalg.complex import exact_at
from ..homalg.module import multiple_submodule, quotient_by_elem, same_submodule
from ..koszul_dg import KoszulDGAlgebra, dg_ext, is_regular_sequence
from ..ring_core.linalg import nullspace
from ..ring_core.quotient import QuotientRing
from ..ring_core.vec import vmul_poly
from .engine import (LiftingError, LiftStepResult, Obstruction, alpha0, as_elem, ext2_window, kills, lift_step,
                     xdeg, xpow)


# -- limit ----------------------------------------------------------------------

@dataclass
class LimitResult:
    module: FPModule | None
    pi: ModuleMap | None                # limit -> M
    to_chain: list                      # limit -> L_n for n = 1..N
    flags: dict
    window: tuple
    stable_through: int
    chain_too_short: bool
    min_chain_needed: int
    exact: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.module is not None and all(self.flags.values())


def _injective_through(f: ModuleMap, hi: int) -> bool:
    lo = f.source.min_degree()
    if lo is None:
        return True
    return all(f.rank_in_degree(d) == f.source.dim(d) for d in range(lo, hi + 1))


def reconstruct_limit(chain: list, projs: list, pi_last: ModuleMap, M: FPModule, x, D: int) -> LimitResult:
    """The limit of L_1 <- L_2 <- ... <- L_N, checked in internal degrees <= D.

    chain[n-1] = L_n, projs[n-1]: L_{n+1} -> L_n, pi_last: L_N -> M.  The limit keeps the
    minimal relations of L_N in degrees below N deg x + min degree; those are the
    relations that x^N does not account for.
    """
    A = M.ring
    x = as_elem(A, x)
    dx = xdeg(x)
    N = len(chain)
    LN = chain[-1]
    mz = LN.minimize()
    Lm = mz.module
    lo = Lm.min_degree()
    if lo is None:
        return LimitResult(FPModule(A, ()), None, [], {"empty": True}, (0, D), D, False, 1)
    need = max(1, ceil((D - lo) / dx) + 2)
    stable = lo + (N - 2) * dx
    bound = N * dx + lo
    degs = Lm.relation_degrees()
    kept = [r for r, d in zip(Lm.relations, degs) if d < bound]
    Lh = FPModule(A, Lm.shifts, kept, check=False)
    qs = [None] * N
    qs[N - 1] = ModuleMap(Lh, LN, mz.from_min.images, 0)
    for n in range(N - 1, 0, -1):
        qs[n - 1] = projs[n - 1].compose(qs[n])
    flags = {}
    win = (lo, D)
    for n in range(1, N + 1):
        q = qs[n - 1]
        xn = xpow(A, x, n)
        Qn, _ = quotient_by_elem(Lh, xn)
        flags[f"L/x^{n}L = L_{n} (window)"] = (
            q.is_surjective()
            and all(not q.apply(v) or chain[n - 1].is_zero_elem(q.apply(v)) for v in multiple_submodule(Lh, xn))
            and Qn.dims(lo, D + 1) == chain[n - 1].dims(lo, D + 1))
    pi = pi_last.compose(qs[N - 1])
    mx = Lh.multiplication(x)
    flags["x injective (window)"] = _injective_through(mx, D - dx)
    flags["L -> M onto"] = pi.is_surjective()
    flags["x L in ker (L -> M)"] = pi.compose(mx).is_zero()
    flags["0 -> L -> L -> M -> 0 dims (window)"] = all(
        Lh.dim(d) == Lh.dim(d - dx) + M.dim(d) for d in range(lo, D + 1))
    exact = {"x injective": mx.is_injective(),
             "L/xL = M": pi.is_surjective() and same_submodule(Lh, pi.kernel_gens(), multiple_submodule(Lh, x))}
    return LimitResult(Lh, pi, qs, flags, win, stable, N < need, need, exact)


# -- chains along one element -------------------------------------------------

@dataclass
class LiftCertificate:
    success: bool
    M: FPModule
    x: object
    chain: list                     # L_1 = M, ..., L_N
    pis: list                       # L_n -> M
    projs: list                     # L_{n+1} -> L_n
    mult_x: list                    # L_n -> L_{n+1}
    steps: list                     # LiftStepResult per step
    sequences_exact: list
    obstruction: tuple | None = None  # (n, Obstruction)
    ext2: dict | None = None
    limit: LimitResult | None = None
    retries: int = 0


def _retraction_alternatives(al, beta: ModuleMap, k: int) -> list:
    """Up to k other retractions beta + psi with psi o alpha_0 = 0."""
    if k <= 0:
        return []
    Ms = al.source
    basis = hom_module(al.quotient, Ms).basis(0)
    if not basis:
        return []
    field = Ms.ring.field

    def coords(f: ModuleMap):
        out = []
        for j, img in enumerate(f.images):
            out.extend(Ms.coords(img, Ms.shifts[j]))
        return out

    cols = [coords(b.compose(al.map)) for b in basis]
    rows = len(cols[0]) if cols else 0
    mat = [[col[r] for col in cols] for r in range(rows)]
    null = nullspace(mat, len(basis), field) if rows else [[1 if i == j else 0 for i in range(len(basis))]
                                                            for j in range(len(basis))]
    out = []
    for vec in null[:k]:
        psi = al.quotient.zero_map(Ms, 0)
        for c, b in zip(vec, basis):
            if c:
                psi = psi + b.scaled(c)
        out.append(beta + psi)
    return out


def _ses_exact(inc: ModuleMap, pi: ModuleMap) -> bool:
    return inc.is_injective() and pi.is_surjective() and exact_at(inc, pi)


def lift_to_order(M: FPModule, x, N_max: int, *, D: int | None = None, retry_breadth: int = 0,
                  with_ext2: bool = True, method: str = "module") -> LiftCertificate:
    """Lift M step by step to L_{N_max}; optionally reconstruct the limit in degrees <= D."""
    A = M.ring
    x = as_elem(A, x)
    if not kills(M, x):
        raise LiftingError("x does not annihilate M")
    ext2 = ext2_window(M, x) if with_ext2 else None
    retries = 0
    first_fail: list = []

    def extend(n, L, pi, path):
        nonlocal retries
        if n >= N_max:
            return path
        al = alpha0(M, L, x, n, pi)
        res = lift_step(M, L, x, n, pi, al=al, method=method)
        if not res.success:
            if not first_fail:
                first_fail.append((path, res))
            return None
        alts = _retraction_alternatives(al, res.beta0, retry_breadth)
        for k, cand in enumerate([res.beta0] + alts):
            r = res if k == 0 else lift_step(M, L, x, n, pi, al=al, beta=cand)
            if k:
                retries += 1
            full = extend(n + 1, r.E, r.pi, path + [r])
            if full is not None:
                return full
        return None

    path = extend(1, M, M.identity(), [])
    success = path is not None
    obstruction = None
    if not success:
        path, bad = first_fail[0]
        obstruction = (bad.n, bad.obstruction)
    chain, pis, projs, mult = [M], [M.identity()], [], []
    seq = []
    for r in path:
        from_min = r.alpha0.cover.from_min
        to_min = r.alpha0.cover.to_min
        chain.append(r.E)
        pis.append(r.pi)
        projs.append(from_min.compose(r.f))
        inc = r.mult_x.compose(to_min)
        mult.append(inc)
        seq.append(_ses_exact(inc, r.pi))
    cert = LiftCertificate(success, M, x, chain, pis, projs, mult, path, seq, obstruction, ext2, retries=retries)
    if success and D is not None:
        cert.limit = reconstruct_limit(chain, projs, pis[-1], M, x, D)
    return cert


# -- several elements ---------------------------------------------------------

def _as_module_over(N: FPModule, R: QuotientRing, extra) -> FPModule:
    """N (over a quotient of R by extra) as an R-module: add the relations extra * generators."""
    rels = list(N.relations)
    for f in extra:
        f = as_elem(R, f)
        rels.extend(vmul_poly(N.gen(j), f.poly.terms, R.p) for j in range(N.rank))
    return FPModule(R, N.shifts, rels, check=False)


@dataclass
class MultiCertificate:
    success: bool
    stages: list                    # (j, LiftCertificate, descent flags)
    module: FPModule | None
    round_trip: dict = dc_field(default_factory=dict)
    failed_stage: int | None = None


def lift_multi(A: QuotientRing, elems, M: FPModule, N_max: int, D: int, *, retry_breadth: int = 0,
               with_ext2: bool = False) -> MultiCertificate:
    """Lift M along x_t, then x_{t-1}, ..., x_1 over the rings A/(x_1..x_{j-1})."""
    xs = [as_elem(A, f) for f in elems]
    t = len(xs)
    for f in xs:
        if not kills(M, f):
            raise LiftingError(f"{f} does not annihilate M")
    if t == 0:
        return MultiCertificate(True, [], M, {"discrete": True, "iso": True})
    cur = M
    stages = []
    pis = []
    for j in range(t, 0, -1):
        R = A.quotient(xs[:j - 1]) if j > 1 else A
        xj = as_elem(R, xs[j - 1].poly)
        Mj = _as_module_over(cur, R, [xj] if j < t else [])
        cert = lift_to_order(Mj, xj, N_max, D=D, retry_breadth=retry_breadth, with_ext2=with_ext2)
        if not cert.success or cert.limit is None or not cert.limit.ok:
            stages.append((j, cert, {}))
            return MultiCertificate(False, stages, None, failed_stage=j)
        L = cert.limit.module
        E_LM = ext(L, Mj, 2)
        E_LL = ext(L, L, 2)
        descent = {"Ext2(L, M) = 0": E_LM.is_zero(2), "Ext2(L, L) = 0": E_LL.is_zero(2)}
        descent["consistent"] = (not descent["Ext2(L, M) = 0"]) or descent["Ext2(L, L) = 0"]
        stages.append((j, cert, descent))
        pis.append(cert.limit.pi)
        cur = L
    # round trip: L (x) Kos(x_1..x_t) is discrete with H_0 = M
    G = KoszulDGAlgebra(A, xs)
    K = G.koszul_complex(cur)
    discrete = all(K.homology(h).module.is_zero() for h in range(1, t + 1))
    comp = None
    for pi in pis[::-1]:
        comp = pi if comp is None else comp.compose(pi)
    full = ModuleMap(cur, M, comp.images, 0, check=False) if comp is not None else None
    ideal_mult = []
    for f in xs:
        ideal_mult.extend(multiple_submodule(cur, f))
    iso = full is not None and full.is_surjective() and same_submodule(cur, full.kernel_gens(), ideal_mult)
    rt = {"discrete": discrete, "iso": iso}
    return MultiCertificate(all(rt.values()), stages, cur, rt)


# -- regular sequences ---------------------------------------------------------

class LCIInconsistency(RuntimeError):
    """The Ext window, the lifting and the Koszul test disagree."""


@dataclass
class LCIVerdict:
    verdict: str                 # "regular", "not regular", "undetermined"
    ext2_zero: bool
    ext2_dims: list
    window: tuple
    lift_success: bool | None
    regular: bool
    detail: dict = dc_field(default_factory=dict)


def check_lci(A: QuotientRing, elems, M: FPModule, *, N_max: int = 4, D: int | None = None,
              window: tuple | None = None) -> LCIVerdict:
    """Ext^2 over Kos(elems; A) of (M, M), lifting of M to A, and the Koszul regularity test."""
    if not A.ideal.is_zero():
        raise LiftingError("check_lci needs a polynomial ring (zero ideal)")
    xs = [as_elem(A, f) for f in elems]
    if M.is_zero():
        raise LiftingError("M must be nonzero")
    reg = is_regular_sequence(A, xs)
    if not xs:
        return LCIVerdict("regular", True, [], (0, 0), True, True, {"vacuous": True})
    G = KoszulDGAlgebra(A, xs)
    E = dg_ext(G, M, M, 2)
    mod = E.module(2)
    zero = mod.is_zero()
    if window is None:
        lo = mod.min_degree() if not zero else (M.min_degree() or 0) - 2 * max(f.degree() or 1 for f in xs) - 2
        window = (lo, lo + 8)
    dims = mod.dims(*window)
    lift_ok = None
    detail = {"witness_degree": reg.witness_degree}
    if zero:
        if D is None:
            D = (M.min_degree() or 0) + 4
        mc = lift_multi(A, xs, M, N_max, D)
        lift_ok = mc.success
        detail["round_trip"] = mc.round_trip
        if not lift_ok:
            raise LCIInconsistency("Ext^2 vanishes but the lifting failed")
        if not reg.regular:
            raise LCIInconsistency("a discrete lifting exists but the sequence is not regular")
    verdict = "regular" if (reg.regular and zero) else ("not regular" if not reg.regular else "undetermined")
    return LCIVerdict(verdict, zero, dims, tuple(window), lift_ok, reg.regular, detail)
