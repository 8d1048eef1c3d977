"""JSON encodings of graded modules, presentations and nested results."""
from __future__ import annotations

from fractions import Fraction

from ..homalg import FPModule
from ..ring_core.quotient import RingElem, vec_entry


def graded(M: FPModule, D: int) -> dict:
    """Hilbert function from the minimal degree; up to the top degree, or to D if M is infinite."""
    if M.is_zero():
        return {"min_degree": None, "dims": [], "finite": True}
    lo = M.min_degree()
    if M.is_finite_length():
        return {"min_degree": lo, "dims": M.dims(lo, M.top_degree()), "finite": True}
    return {"min_degree": lo, "dims": M.dims(lo, max(lo, D)), "finite": False}


def vec_column(M: FPModule, v: dict) -> list:
    R = M.ring
    return [str(RingElem(R, vec_entry(R.ambient, v, j))) for j in range(M.rank)]


def matrix(images: list, target: FPModule) -> list:
    """Row-major: rows are target generators, columns are images."""
    cols = [vec_column(target, v) for v in images]
    return [[c[r] for c in cols] for r in range(target.rank)]


def presentation(M: FPModule | None) -> dict | None:
    if M is None:
        return None
    M = M.minimize().module
    return {"shifts": list(M.shifts), "relations": matrix(M.relations, M)}


def plain(obj):
    """Convert nested results to JSON-native values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, FPModule):
        return presentation(obj)
    if isinstance(obj, RingElem):
        return str(obj)
    return str(obj)
