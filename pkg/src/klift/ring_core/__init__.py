"""Exact graded commutative algebra: fields, polynomial rings, Gröbner bases."""
from .field import Field
from .gb import GroebnerBasis, ModuleOrder, groebner
from .polyring import GradedPolyRing, Poly
from .quotient import Ideal, QuotientRing, RingElem, poly_to_vec, vec_entry
from .submodule import Submodule, minimal_generators, vec_degree


def groebner_basis(ideal: Ideal) -> list:
    """Reduced Gröbner basis of a homogeneous ideal, as polynomials."""
    return ideal.groebner_polys()


def normal_form(f, ideal: Ideal) -> Poly:
    return ideal.reduce(f)


def syzygies(gens, ring: QuotientRing) -> list:
    """Minimal generators of the syzygy module of homogeneous elements of R."""
    polys = [ring.lift_poly(g) for g in gens]
    degs = []
    for f in polys:
        if not f.is_homogeneous():
            raise ValueError(f"syzygies need homogeneous input: {f}")
        degs.append(f.degree() if f else 0)
    sub = Submodule(ring, (0,), [poly_to_vec(ring.reduce(f)) for f in polys], degs)
    return [tuple(ring(vec_entry(ring.ambient, s, j)) for j in range(len(polys))) for s in sub.syzygies()]


__all__ = [
    "Field", "GradedPolyRing", "Poly", "Ideal", "QuotientRing", "RingElem",
    "GroebnerBasis", "ModuleOrder", "groebner", "Submodule", "minimal_generators",
    "groebner_basis", "normal_form", "syzygies", "poly_to_vec", "vec_entry", "vec_degree",
]
