"""Koszul DG algebras Kos(f_1..f_r; A) and Koszul complexes."""
from __future__ import annotations

from itertools import combinations

from ..homalg import ChainComplex, FPModule, ModuleMap
from ..homalg.complex import tensor_free_with
from ..ring_core.quotient import QuotientRing, RingElem
from ..ring_core.vec import vadd, vmul_poly


def _as_elem(A: QuotientRing, f) -> RingElem:
    return f if isinstance(f, RingElem) else A(A.ambient.parse(f) if isinstance(f, str) else f)


def merge_sign(S, T):
    """Sign and sorted union for e_S * e_T, or None when S and T meet."""
    if set(S) & set(T):
        return None
    inv = sum(1 for s in S for t in T if s > t)
    return (-1 if inv % 2 else 1), tuple(sorted(S + T))


class KoszulDGAlgebra:
    """The exterior algebra on e_1..e_r over A with d(e_i) = f_i."""

    def __init__(self, ring: QuotientRing, elems=(), degrees=None):
        self.ring = ring
        self.elems = [_as_elem(ring, f) for f in elems]
        degs = []
        for k, f in enumerate(self.elems):
            if not f.is_homogeneous():
                raise ValueError(f"element {f} is not homogeneous")
            d = f.degree()
            if d is None:
                if degrees is None:
                    raise ValueError("a zero element needs an explicit degree")
                d = degrees[k]
            if d == 0:
                raise ValueError(f"element {f} is not in the maximal ideal")
            degs.append(d)
        self.degs = degs
        self.r = len(self.elems)

    def subsets(self, h: int) -> list:
        if h < 0 or h > self.r:
            return []
        return list(combinations(range(self.r), h))

    def sdeg(self, S) -> int:
        return sum(self.degs[i] for i in S)

    def d_terms(self, S):
        """d(e_S) = sum_j (-1)^j f_{S_j} e_{S minus S_j}, as (sign, i, rest)."""
        return [((-1) ** j, S[j], S[:j] + S[j + 1:]) for j in range(len(S))]

    def pi0(self) -> QuotientRing:
        return self.ring.quotient(self.elems) if self.elems else self.ring

    def koszul_complex(self, M: FPModule | None = None) -> ChainComplex:
        """Kos(f; M) = Kos(f; A) (x) M, with the free case M = A by default."""
        A = self.ring
        M = M if M is not None else FPModule.free(A, (0,))
        p = A.p
        n = M.rank
        terms, diffs = {}, {}
        index = {}
        for h in range(self.r + 1):
            subs = self.subsets(h)
            index[h] = {S: k for k, S in enumerate(subs)}
            F = FPModule.free(A, [self.sdeg(S) for S in subs])
            terms[h] = tensor_free_with(F, M)
        for h in range(1, self.r + 1):
            imgs = []
            for S in self.subsets(h):
                for g in range(n):
                    v: dict = {}
                    for sign, i, rest in self.d_terms(S):
                        pos = index[h - 1][rest] * n + g
                        f = self.elems[i].poly.terms
                        v = vadd(v, vmul_poly({(pos, A.ambient.zero_exp): sign % p if p else sign}, f, p), p)
                    imgs.append(v)
            diffs[h] = ModuleMap(terms[h], terms[h - 1], imgs, 0, check=False)
        return ChainComplex(terms, diffs)

    def __repr__(self):
        return f"Kos({', '.join(str(f) for f in self.elems)}; {self.ring!r})"


def koszul_complex(A: QuotientRing, elems) -> ChainComplex:
    return KoszulDGAlgebra(A, elems).koszul_complex()


def koszul_homology(A: QuotientRing, elems, k: int) -> FPModule:
    return koszul_complex(A, elems).homology(k).module


class RegularityResult:
    def __init__(self, regular: bool, witness_degree=None, witness=None):
        self.regular = regular
        self.witness_degree = witness_degree
        self.witness = witness

    def __bool__(self):
        return self.regular

    def __repr__(self):
        if self.regular:
            return "RegularityResult(regular)"
        return f"RegularityResult(not regular, H_{self.witness_degree} != 0)"


def is_regular_sequence(A: QuotientRing, elems) -> RegularityResult:
    """Koszul test: H_i(Kos(f; A)) == 0 for 1 <= i <= r."""
    G = KoszulDGAlgebra(A, elems)
    if G.r == 0:
        return RegularityResult(True)
    K = G.koszul_complex()
    for i in range(1, G.r + 1):
        H = K.homology(i)
        if not H.module.is_zero():
            j = next(j for j in range(H.module.rank) if not H.module.is_zero_elem(H.module.gen(j)))
            return RegularityResult(False, i, H.reps[j])
    return RegularityResult(True)
