"""Arithmetic on sparse module vectors {(component, exponent): coefficient}."""
from __future__ import annotations

from .gb import addmul


def vadd(u: dict, v: dict, p: int) -> dict:
    w = dict(u)
    for t, c in v.items():
        val = w.get(t, 0) + c
        if p:
            val %= p
        if val:
            w[t] = val
        else:
            w.pop(t, None)
    return w


def vneg(v: dict, p: int) -> dict:
    return {t: ((-c) % p if p else -c) for t, c in v.items()}


def vsub(u: dict, v: dict, p: int) -> dict:
    return vadd(u, vneg(v, p), p)


def vscale(v: dict, c, p: int) -> dict:
    if p:
        c %= p
        if not c:
            return {}
        return {t: a * c % p for t, a in v.items()}
    if not c:
        return {}
    return {t: a * c for t, a in v.items()}


def vmul_poly(v: dict, poly_terms: dict, p: int) -> dict:
    """(polynomial) * v, the polynomial given as {exponent: coefficient}."""
    out: dict = {}
    for e, c in poly_terms.items():
        addmul(out, v, c, e, p)
    return out


def vmul_mono(v: dict, exp, c, p: int) -> dict:
    out: dict = {}
    addmul(out, v, c, exp, p)
    return out


def ventry(v: dict, comp: int) -> dict:
    """The polynomial at one component, as {exponent: coefficient}."""
    return {e: c for (j, e), c in v.items() if j == comp}


def vembed(v: dict, offset: int) -> dict:
    return {(j + offset, e): c for (j, e), c in v.items()}


def vproject(v: dict, lo: int, hi: int) -> dict:
    """Components lo..hi-1, renumbered from zero."""
    return {(j - lo, e): c for (j, e), c in v.items() if lo <= j < hi}


def vlincomb(coeffs: dict, vecs, p: int) -> dict:
    """sum_i coeffs_i * vecs_i where coeffs is itself a vector {(i, exp): c}."""
    out: dict = {}
    for (i, e), c in coeffs.items():
        addmul(out, vecs[i], c, e, p)
    return out


def unit(comp: int, nvars: int) -> dict:
    return {(comp, (0,) * nvars): 1}
