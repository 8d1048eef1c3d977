"""Homogeneous ideals, quotient rings R = S/I and their elements."""
from __future__ import annotations

from .field import Field
from .gb import GroebnerBasis, ModuleOrder, groebner
from .polyring import GradedPolyRing, Poly, format_terms


def poly_to_vec(f: Poly, comp: int = 0) -> dict:
    return {(comp, e): c for e, c in f.terms.items()}


def vec_entry(ring: GradedPolyRing, v: dict, comp: int) -> Poly:
    return Poly(ring, {e: c for (j, e), c in v.items() if j == comp})


def _check_homogeneous(polys, what):
    for f in polys:
        if not f.is_homogeneous():
            raise ValueError(f"{what} must be homogeneous: {f}")


class Ideal:
    """Homogeneous ideal of a GradedPolyRing, with a cached reduced Gröbner basis."""

    def __init__(self, ring: GradedPolyRing, gens=()):
        gens = [ring(g) for g in gens]
        _check_homogeneous(gens, "ideal generators")
        self.ring = ring
        self.gens = [g for g in gens if g]
        self._gb: GroebnerBasis | None = None
        self._minimal = None

    def _compute(self):
        order = ModuleOrder(self.ring, (0,))
        res = groebner([poly_to_vec(g) for g in self.gens], order, self.ring.field.characteristic)
        self._gb = res.basis
        self._minimal = [self.gens[i] for i in sorted(res.minimal)]

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._compute()
        return self._gb

    def groebner_polys(self) -> list:
        return [vec_entry(self.ring, v, 0) for v in self.gb.vecs]

    def minimal_generators(self) -> list:
        if self._minimal is None:
            self._compute()
        return list(self._minimal)

    def reduce(self, f: Poly) -> Poly:
        f = self.ring(f)
        if not self.gens:
            return f
        return Poly(self.ring, {e: c for (_, e), c in self.gb.reduce(poly_to_vec(f)).items()})

    def contains(self, f) -> bool:
        return not self.reduce(f)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + list(other.gens))

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return all(other.contains(g) for g in self.gens) and all(self.contains(g) for g in other.gens)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(str(g) for g in self.groebner_polys()))))

    def is_zero(self) -> bool:
        return not self.gens

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"


class QuotientRing:
    """R = S/I for a graded polynomial ring S and a homogeneous ideal I."""

    def __init__(self, ambient: GradedPolyRing, ideal_gens=()):
        self.ambient = ambient
        self.field: Field = ambient.field
        self.p = ambient.field.characteristic
        self.ideal = ideal_gens if isinstance(ideal_gens, Ideal) else Ideal(ambient, ideal_gens)
        self._bg_cache: dict = {}

    @classmethod
    def polynomial(cls, field, names, degrees=None, order="grevlex", ideal=()):
        if not isinstance(field, Field):
            field = Field.parse(field) if isinstance(field, str) else Field(field)
        S = GradedPolyRing(field, names, degrees, order)
        return cls(S, [S(g) for g in ideal])

    def _ident(self):
        return (self.ambient, tuple(sorted(str(g) for g in self.ideal.groebner_polys())))

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.ideal.is_zero():
            return repr(self.ambient)
        return f"{self.ambient!r}/({', '.join(str(g) for g in self.ideal.gens)})"

    @property
    def names(self):
        return self.ambient.names

    @property
    def degrees(self):
        return self.ambient.degrees

    def quotient(self, extra) -> "QuotientRing":
        extra = [self.ambient(self.lift_poly(g)) for g in extra]
        return QuotientRing(self.ambient, self.ideal.gens + extra)

    def lift_poly(self, x) -> Poly:
        if isinstance(x, RingElem):
            return x.poly
        return self.ambient(x)

    def reduce(self, f) -> Poly:
        return self.ideal.reduce(self.lift_poly(f))

    def __call__(self, x) -> "RingElem":
        return RingElem(self, self.reduce(x))

    def var(self, name) -> "RingElem":
        return self(self.ambient.var(name))

    def gens(self):
        return [self(g) for g in self.ambient.gens()]

    def is_zero_ring(self) -> bool:
        return self.ideal.contains(self.ambient.one())

    def background(self, m: int, offset: int = 0) -> list:
        """The vectors g * e_j (g in the Gröbner basis of I) for j < m."""
        key = (m, offset)
        if key not in self._bg_cache:
            out = []
            if not self.ideal.is_zero():
                for v in self.ideal.gb.vecs:
                    for j in range(offset, offset + m):
                        out.append({(j, e): c for (_, e), c in v.items()})
            self._bg_cache[key] = out
        return self._bg_cache[key]

    def reduce_vec(self, v: dict) -> dict:
        """Reduce each component of a vector modulo I."""
        if self.ideal.is_zero() or not v:
            return dict(v)
        parts: dict = {}
        for (j, e), c in v.items():
            parts.setdefault(j, {})[(0, e)] = c
        out = {}
        gb = self.ideal.gb
        for j in sorted(parts):
            for (_, e), c in gb.reduce(parts[j]).items():
                out[(j, e)] = c
        return out

    def standard_monomials(self, d: int) -> list:
        lead_exps = [lt[1] for lt in self.ideal.gb.leads] if not self.ideal.is_zero() else []
        return [e for e in self.ambient.monomials(d)
                if not any(all(a <= b for a, b in zip(l, e)) for l in lead_exps)]

    def hilbert(self, d: int) -> int:
        return len(self.standard_monomials(d))


class RingElem:
    """Element of a QuotientRing, kept in normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring: QuotientRing, poly: Poly):
        self.ring = ring
        self.poly = poly

    def _lift(self, other):
        if isinstance(other, RingElem):
            return other.poly
        return self.ring.ambient(other)

    def __add__(self, other):
        return self.ring(self.poly + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.ring(self.poly - self._lift(other))

    def __rsub__(self, other):
        return self.ring(self._lift(other) - self.poly)

    def __neg__(self):
        return RingElem(self.ring, -self.poly)

    def __mul__(self, other):
        return self.ring(self.poly * self._lift(other))

    __rmul__ = __mul__

    def __pow__(self, k):
        return self.ring(self.poly ** k)

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.poly == other.poly
        try:
            return self.poly == self.ring.reduce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self):
        return not self.poly.is_zero()

    def is_homogeneous(self) -> bool:
        return self.poly.is_homogeneous()

    def degree(self):
        return self.poly.degree()

    def __str__(self):
        return format_terms(self.ring.ambient, self.poly.sorted_terms())

    def __repr__(self):
        return f"RingElem({self})"
