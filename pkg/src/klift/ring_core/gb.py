"""Homogeneous Buchberger algorithm for submodules of graded free modules.

A vector of S^m is a dict {(component, exponent): coefficient}.  Ideals are
the case m == 1.  An optional block split (components < n_first versus the
rest) gives an elimination order, used for lifts and syzygies.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .polyring import GradedPolyRing


class ModuleOrder:
    """Term order on a graded free module: block, total degree, monomial, position."""

    def __init__(self, ring: GradedPolyRing, shifts, n_first: int | None = None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.n_first = len(self.shifts) if n_first is None else n_first
        self._keys: dict = {}

    def key(self, term):
        k = self._keys.get(term)
        if k is None:
            comp, exp = term
            r = self.ring
            k = (comp < self.n_first, self.shifts[comp] + r.wdeg(exp), r.mono_key(exp), -comp)
            self._keys[term] = k
        return k

    def term_degree(self, term) -> int:
        return self.shifts[term[0]] + self.ring.wdeg(term[1])

    def lead(self, v):
        return max(v, key=self.key)

    def degree(self, v) -> int | None:
        if not v:
            return None
        return self.term_degree(next(iter(v)))


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def addmul(v: dict, w: dict, c, mexp, p: int) -> None:
    """v += c * x^mexp * w, in place."""
    shift = any(mexp)
    for (comp, e), a in w.items():
        t = (comp, tuple(x + y for x, y in zip(e, mexp))) if shift else (comp, e)
        val = v.get(t, 0) + c * a
        if p:
            val %= p
        if val:
            v[t] = val
        else:
            v.pop(t, None)


def scale(v: dict, c, p: int) -> dict:
    if p:
        return {t: a * c % p for t, a in v.items()}
    return {t: a * c for t, a in v.items()}


def _inv(a, p):
    return pow(a, -1, p) if p else 1 / a


class GroebnerBasis:
    """A Gröbner basis with normal-form reduction."""

    def __init__(self, order: ModuleOrder, p: int, vecs=()):
        self.order = order
        self.p = p
        self.vecs: list = []
        self.leads: list = []
        self.by_comp: dict = {}
        for v in vecs:
            self.append(v)

    def append(self, v: dict) -> int:
        lt = self.order.lead(v)
        c = v[lt]
        if c != 1:
            v = scale(v, _inv(c, self.p), self.p)
        self.vecs.append(v)
        self.leads.append(lt)
        self.by_comp.setdefault(lt[0], []).append(len(self.vecs) - 1)
        return len(self.vecs) - 1

    def find_divisor(self, term):
        comp, e = term
        for i in self.by_comp.get(comp, ()):
            if divides(self.leads[i][1], e):
                return i
        return None

    def reduce(self, v: dict) -> dict:
        """Fully reduced normal form of v."""
        v = dict(v)
        rem: dict = {}
        p = self.p
        key = self.order.key
        while v:
            t = max(v, key=key)
            c = v[t]
            i = self.find_divisor(t)
            if i is None:
                rem[t] = c
                del v[t]
                continue
            lt = self.leads[i]
            m = tuple(x - y for x, y in zip(t[1], lt[1]))
            addmul(v, self.vecs[i], (-c) % p if p else -c, m, p)
        return rem

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def __len__(self):
        return len(self.vecs)


@dataclass
class GBResult:
    basis: GroebnerBasis
    minimal: list = dc_field(default_factory=list)
    complete: bool = True


def groebner(gens, order: ModuleOrder, p: int, *, background=(), max_degree=None) -> GBResult:
    """Homogeneous Buchberger run, processed degree by degree.

    background vectors are inserted before gens of the same degree; the
    indices of gens that are not redundant at their degree are reported in
    GBResult.minimal, giving a minimal generating set modulo the background.
    """
    inputs = []
    for i, v in enumerate(background):
        if v:
            inputs.append((order.degree(v), 0, i, v))
    for i, v in enumerate(gens):
        if v:
            inputs.append((order.degree(v), 1, i, v))
    inputs.sort(key=lambda x: x[:3])

    G = GroebnerBasis(order, p)
    heap: list = []
    pending: set = set()
    minimal: list = []
    ptr = 0
    complete = True

    def add(v):
        new = G.append(v)
        comp, e = G.leads[new]
        for k in G.by_comp[comp]:
            if k == new:
                continue
            ek = G.leads[k][1]
            lcm = tuple(max(a, b) for a, b in zip(e, ek))
            d = order.term_degree((comp, lcm))
            heapq.heappush(heap, (d, k, new))
            pending.add((k, new))

    def chain_skip(i, j):
        comp = G.leads[i][0]
        lcm = tuple(max(a, b) for a, b in zip(G.leads[i][1], G.leads[j][1]))
        for k in G.by_comp[comp]:
            if k == i or k == j:
                continue
            if not divides(G.leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
                continue
            return True
        return False

    def spoly(i, j):
        ti, tj = G.leads[i], G.leads[j]
        lcm = tuple(max(a, b) for a, b in zip(ti[1], tj[1]))
        s: dict = {}
        addmul(s, G.vecs[i], 1, tuple(a - b for a, b in zip(lcm, ti[1])), p)
        addmul(s, G.vecs[j], p - 1 if p else -1, tuple(a - b for a, b in zip(lcm, tj[1])), p)
        return s

    inf = float("inf")
    while True:
        d_in = inputs[ptr][0] if ptr < len(inputs) else inf
        d_pair = heap[0][0] if heap else inf
        d = min(d_in, d_pair)
        if d == inf:
            break
        if max_degree is not None and d > max_degree:
            complete = False
            break
        while heap and heap[0][0] == d:
            _, i, j = heapq.heappop(heap)
            pending.discard((i, j))
            if chain_skip(i, j):
                continue
            r = G.reduce(spoly(i, j))
            if r:
                add(r)
        while ptr < len(inputs) and inputs[ptr][0] == d:
            _, kind, idx, v = inputs[ptr]
            ptr += 1
            r = G.reduce(v)
            if r:
                add(r)
                if kind == 1:
                    minimal.append(idx)
    return GBResult(interreduce(G), minimal, complete)


def interreduce(G: GroebnerBasis) -> GroebnerBasis:
    n = len(G.vecs)
    keep = []
    for i in range(n):
        ci, ei = G.leads[i]
        red = False
        for j in G.by_comp.get(ci, ()):
            if j != i and divides(G.leads[j][1], ei) and (G.leads[j] != G.leads[i] or j < i):
                red = True
                break
        if not red:
            keep.append(i)
    order, p = G.order, G.p
    keep.sort(key=lambda i: order.key(G.leads[i]))
    base = GroebnerBasis(order, p, [G.vecs[i] for i in keep])
    out = GroebnerBasis(order, p)
    for i in range(len(base.vecs)):
        lt = base.leads[i]
        tail = dict(base.vecs[i])
        del tail[lt]
        # tail terms sit below lt, so element i never acts on them
        r = base.reduce(tail)
        r[lt] = 1
        out.append(r)
    return out
