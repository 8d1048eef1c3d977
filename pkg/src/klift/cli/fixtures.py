"""Pinned regression fixtures with hand-derived expected values."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from ..homalg import FPModule
from ..koszul_dg.formulas import (derived_quotient_dg, derived_tensor_dg, derived_tensor_formula,
                                  mixed_char_example, periodic_complex, tor_An_formula, two_term_complex)
from ..lifting import lift_to_order
from ..ring_core import QuotientRing
from .encode import graded


def _mixed_char() -> tuple:
    # Z over Z[x]/(px), reduced mod p, against F_p: Ext^i is F_p for every i; the discrete
    # quotient F_p[x] only sees i = 0, 1.
    rep = mixed_char_example(3, imax=6)
    expected = {"dg": [1] * 7, "direct": [1] * 7, "discrete": [1, 1, 0, 0, 0, 0, 0], "strict_gap": True}
    actual = {"dg": rep.dg_dims, "direct": rep.direct_dims, "discrete": rep.discrete_dims,
              "strict_gap": rep.strict_gap}
    return expected, actual


def _tor_power_quotient() -> tuple:
    # M = F3[x]/(x^2), n = 3: Tor_0 = M/x^3M = M, Tor_1 = M[x^3] = M raised by 3, Tor_2 = 0
    A = QuotientRing.polynomial("F3", ["x"])
    x = A.var("x")
    M = FPModule.cyclic(A, [x ** 2])
    want = [{"min_degree": 0, "dims": [1, 1], "finite": True},
            {"min_degree": 3, "dims": [1, 1], "finite": True},
            {"min_degree": None, "dims": [], "finite": True}]
    C = two_term_complex(M, x ** 3)
    dg = derived_quotient_dg(M, x, 3, 2)
    actual = {"formula": [graded(tor_An_formula(M, x, 3, k), 12) for k in range(3)],
              "complex": [graded(C.homology(k).module, 12) for k in range(3)],
              "dg": [graded(dg.module(k), 12) for k in range(3)]}
    return {"formula": want, "complex": want, "dg": want}, actual


def _tensor_over_power_quotient() -> tuple:
    # M = F3[x]/(x^2) over A_3 against A_1: k in degrees 0, 2, 3, 5 for k = 0, 1, 2, 3
    A = QuotientRing.polynomial("F3", ["x"])
    x = A.var("x")
    M = FPModule.cyclic(A, [x ** 2])
    want = [{"min_degree": d, "dims": [1], "finite": True} for d in (0, 2, 3, 5)]
    C = periodic_complex(M, x, 3, 1, 4)
    dg = derived_tensor_dg(M, x, 3, 1, 3)
    actual = {"formula": [graded(derived_tensor_formula(M, x, 3, 1, k), 12) for k in range(4)],
              "complex": [graded(C.homology(k).module, 12) for k in range(4)],
              "dg": [graded(dg.module(k), 12) for k in range(4)]}
    return {"formula": want, "complex": want, "dg": want}, actual


def _k_u_chain() -> tuple:
    # k over F3[u] lifts to k[u]/(u^n) for every n; the limit is k[u]
    A = QuotientRing.polynomial("F3", ["u"])
    u = A.var("u")
    c = lift_to_order(FPModule.cyclic(A, [u]), u, 5, D=8)
    expected = {"success": True, "chain": [[1] * n for n in range(1, 6)], "limit_dims": [1] * 9,
                "limit_free_rank": 1, "limit_ok": True}
    lim = c.limit
    free = lim.module.minimize().module if lim and lim.module else None
    actual = {"success": c.success,
              "chain": [graded(L, 8)["dims"] for L in c.chain],
              "limit_dims": lim.module.dims(0, 8) if lim and lim.module else None,
              "limit_free_rank": free.rank if free is not None and not free.relations else None,
              "limit_ok": bool(lim and lim.ok)}
    return expected, actual


FIXTURES = [
    ("mixed_char_gap", _mixed_char),
    ("tor_power_quotient", _tor_power_quotient),
    ("tensor_over_power_quotient", _tensor_over_power_quotient),
    ("k_u_lifting_chain", _k_u_chain),
]


def _row(item) -> dict:
    name, fn = item
    expected, actual = fn()
    return {"name": name, "expected": expected, "actual": actual, "pass": expected == actual}


def run_fixtures(threads: int | None = None) -> dict:
    """Run every fixture; KLIFT_THREADS (or threads) sets the worker count, order is kept."""
    n = threads or int(os.environ.get("KLIFT_THREADS", "1") or 1)
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            rows = list(pool.map(_row, FIXTURES))
    else:
        rows = [_row(item) for item in FIXTURES]
    return {"fixtures": rows, "all_pass": all(r["pass"] for r in rows)}
