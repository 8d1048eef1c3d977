"""Dispatch of script commands to the library, producing JSON-ready payloads."""
from __future__ import annotations

from ..homalg import ChainComplex, ext, free_resolution, tor
from ..koszul_dg import KoszulDGAlgebra, dg_ext, dg_module_from_complex, is_regular_sequence, koszul_homology
from ..koszul_dg.formulas import (derived_quotient_dg, derived_tensor_dg, derived_tensor_formula,
                                  direct_summand_check, periodic_complex, tor_An_formula, two_term_complex)
from ..lifting import (LCIInconsistency, check_lci, exhaustive_lift_search, lift_multi, lift_step,
                       lift_to_order)
from .encode import graded, matrix, plain, presentation
from .fixtures import run_fixtures


# -- commands --------------------------------------------------------------------------

def cmd_resolve(a: dict) -> dict:
    M, length = a["M"], a["length"]
    res = free_resolution(M, length)
    diffs = {str(i): matrix(res.diff(i).images, res.terms(i - 1)) for i in range(1, length + 1)}
    betti = {str(i): {str(d): c for d, c in row.items()} for i, row in res.betti().items()}
    return {"ranks": res.ranks(), "betti": betti, "differentials": diffs,
            "period": res.period, "period_start": res.period_start}


def cmd_ext(a: dict) -> dict:
    M, N, imax, D = a["M"], a["N"], a["imax"], a["D"]
    res = free_resolution(M, imax + 2)
    E = ext(M, N, imax, resolution=res)
    return {"ext": [graded(E.module(i), D) for i in range(imax + 1)]}


def cmd_tor(a: dict) -> dict:
    M, N, kmax, D = a["M"], a["N"], a["kmax"], a["D"]
    T = tor(M, N, kmax, resolution=free_resolution(M, kmax + 2))
    return {"tor": [graded(T.module(i), D) for i in range(kmax + 1)]}


def cmd_koszul(a: dict) -> dict:
    A, xs, D = a["A"], a["elems"], a["D"]
    return {"elems": [str(x) for x in xs],
            "homology": [graded(koszul_homology(A, xs, k), D) for k in range(len(xs) + 1)]}


def cmd_regseq(a: dict) -> dict:
    r = is_regular_sequence(a["A"], a["elems"])
    return {"regular": bool(r), "witness_degree": r.witness_degree}


def cmd_dtensor(a: dict) -> dict:
    M, x, n, i, kmax, D = a["M"], a["x"], a["n"], a["i"], a["kmax"], a["D"]
    if i is None:
        # M (x)^L A/x^n: closed form, two-term complex, and the Koszul model
        formula = [tor_An_formula(M, x, n, k) for k in range(kmax + 1)]
        C = two_term_complex(M, x ** n)
        direct = [C.homology(k).module for k in range(kmax + 1)]
        dg = derived_quotient_dg(M, x, n, kmax)
    else:
        formula = [derived_tensor_formula(M, x, n, i, k) for k in range(kmax + 1)]
        C = periodic_complex(M, x, n, i, kmax + 1)
        direct = [C.homology(k).module for k in range(kmax + 1)]
        dg = derived_tensor_dg(M, x, n, i, kmax)
    rows = {"formula": [graded(m, D) for m in formula],
            "complex": [graded(m, D) for m in direct],
            "dg": [graded(dg.module(k), D) for k in range(kmax + 1)]}
    rows["agree"] = rows["formula"] == rows["complex"] == rows["dg"]
    return rows


def cmd_dgext(a: dict) -> dict:
    A, xs, M, N, imax, D = a["A"], a["elems"], a["M"], a["N"], a["imax"], a["D"]
    G = KoszulDGAlgebra(A, xs)
    if isinstance(M, ChainComplex):
        if xs:
            raise ValueError("a complex source needs an algebra without Koszul generators")
        M = dg_module_from_complex(G, M)
    E = dg_ext(G, M, N, imax, hbound=a["hbound"])
    return {"ext": [graded(E.module(i), D) for i in range(imax + 1)],
            "hbound": E.extra.get("hbound"), "valid_through": E.extra.get("valid_through")}


def cmd_summand(a: dict) -> dict:
    G = KoszulDGAlgebra(a["A"], a["elems"])
    rep = direct_summand_check(a["A"], G, a["L"], a["N"], a["imax"])
    return {"discrete": rep.discrete, "dims_pi0": plain(rep.dims_pi0), "dims_B": plain(rep.dims_B),
            "dims_dg": plain(rep.dims_dg), "inequality": rep.inequality, "agree_dg": rep.agree_dg,
            "split": plain(rep.split), "window": list(rep.window), "holds": rep.ok}


def _obstruction(ob) -> dict | None:
    if ob is None:
        return None
    return {"kind": ob.kind, "nonzero": ob.nonzero}


def cmd_liftstep(a: dict) -> dict:
    M, x, n, D = a["M"], a["x"], a["n"], a["D"]
    L = a["L"] if a["L"] is not None else M
    r = lift_step(M, L, x, n)
    out = {"success": r.success, "split_linear": r.split_linear, "n": n,
           "E": presentation(r.E), "E_dims": graded(r.E, D) if r.E is not None else None,
           "flags": plain(r.report.flags) if r.report else None,
           "obstruction": _obstruction(r.obstruction)}
    if r.split_linear != r.success:
        raise AssertionError("linear split test and module retraction disagree")
    if a["exhaustive"]:
        s = exhaustive_lift_search(r.alpha0, x, n)
        found = s["found"] is not None
        out["exhaustive"] = {"searched": s["searched"], "total": s["total"], "found": found,
                             "witness": list(s["found"]) if found else None, "complete": s["complete"]}
        if s["complete"] and found != r.success:
            raise AssertionError("exhaustive search disagrees with the lifting step")
    return out


def cmd_lift(a: dict) -> dict:
    M, x, N, D = a["M"], a["x"], a["N"], a["D"]
    c = lift_to_order(M, x, N, D=D, retry_breadth=a["retry"])
    out = {"success": c.success, "chain": [presentation(L) for L in c.chain],
           "chain_dims": [graded(L, D) for L in c.chain], "sequences_exact": list(c.sequences_exact),
           "retries": c.retries, "obstruction": None, "limit": None}
    if c.obstruction is not None:
        n, ob = c.obstruction
        out["obstruction"] = {"n": n, **_obstruction(ob)}
    lim = c.limit
    if lim is not None:
        out["limit"] = {"presentation": presentation(lim.module), "flags": plain(lim.flags),
                        "exact": plain(lim.exact), "window": list(lim.window),
                        "dims": lim.module.dims(lim.window[0], lim.window[1]) if lim.module else None,
                        "stable_through": lim.stable_through, "chain_too_short": lim.chain_too_short,
                        "min_chain_needed": lim.min_chain_needed, "ok": lim.ok}
        if not lim.ok:
            raise AssertionError("limit window checks failed")
    if c.success and not all(c.sequences_exact):
        raise AssertionError("a chain sequence is not exact")
    return out


def cmd_liftmulti(a: dict) -> dict:
    mc = lift_multi(a["A"], a["elems"], a["M"], a["N"], a["D"], retry_breadth=a["retry"])
    stages = [{"j": j, "success": cert.success, "descent": plain(flags)} for j, cert, flags in mc.stages]
    return {"success": mc.success, "failed_stage": mc.failed_stage, "module": presentation(mc.module),
            "round_trip": plain(mc.round_trip), "stages": stages}


def cmd_checklci(a: dict) -> dict:
    v = check_lci(a["A"], a["elems"], a["M"], N_max=a["N"], D=a["D"])
    return {"verdict": v.verdict, "ext2_zero": v.ext2_zero, "ext2_dims": list(v.ext2_dims),
            "window": list(v.window), "lift_success": v.lift_success, "regular": v.regular}


def cmd_paper_examples(a: dict) -> dict:
    return run_fixtures()


COMMANDS = {
    "resolve": cmd_resolve, "ext": cmd_ext, "tor": cmd_tor, "koszul": cmd_koszul, "regseq": cmd_regseq,
    "dtensor": cmd_dtensor, "dgext": cmd_dgext, "summand": cmd_summand, "liftstep": cmd_liftstep,
    "lift": cmd_lift, "liftmulti": cmd_liftmulti, "checklci": cmd_checklci,
    "paper-examples": cmd_paper_examples,
}


def consistent(op: str, payload: dict) -> bool:
    """Internal consistency of a payload (beyond not raising)."""
    if op == "dtensor":
        return payload["agree"]
    if op == "summand":
        return payload["holds"]
    if op == "paper-examples":
        return payload["all_pass"]
    return True


def execute(cmd) -> dict:
    """Run one bound command; errors are reported with the command index."""
    out = {"index": cmd.index, "command": cmd.text, "op": cmd.op, "line": cmd.line,
           "options": plain(cmd.options)}
    try:
        payload = plain(COMMANDS[cmd.op](cmd.args))
    except (LCIInconsistency, AssertionError, ValueError, ArithmeticError) as exc:
        out["ok"] = False
        out["error"] = f"command {cmd.index}: {type(exc).__name__}: {exc}"
        return out
    out["payload"] = payload
    out["ok"] = consistent(cmd.op, payload)
    return out
