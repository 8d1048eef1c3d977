import pytest

from oracles import from_module

from klift.homalg import FPModule, ModuleMap
from klift.lifting import (LiftingError, check_lci, check_lifting, exhaustive_lift_search, ext2_window, lift_multi,
                           lift_step, lift_to_order)
from klift.ring_core import QuotientRing

P = QuotientRing.polynomial


def test_single_step_over_polynomial_ring():
    A = P("F3", ["u"])
    k = FPModule.cyclic(A, ["u"])
    r = lift_step(k, k, "u", 1)
    assert r.success and r.split_linear and r.report.ok
    assert r.E.dims(0, 4) == [1, 1, 0, 0, 0]      # F3[u]/u^2
    s = exhaustive_lift_search(r.alpha0, "u", 1)
    assert s["complete"] and s["total"] == 3 and s["found"] is not None


def test_obstructed_step():
    # over F3[u,v]/(uv), v kills u, so alpha_0 on A/(u) has v in its kernel
    A = P("F3", ["u", "v"], ideal=["u*v"])
    M = FPModule.cyclic(A, ["u"])
    r = lift_step(M, M, "u", 1)
    assert not r.success and not r.split_linear
    assert r.obstruction.kind == "alpha0_not_injective" and r.obstruction.nonzero
    assert r.obstruction.witness == {(0, (0, 1)): 1}
    s = exhaustive_lift_search(r.alpha0, "u", 1)
    assert s["complete"] and s["found"] is None
    assert not ext2_window(M, "u")["zero"]


def test_chain_and_limit():
    A = P("F3", ["u"])
    k = FPModule.cyclic(A, ["u"])
    c = lift_to_order(k, "u", 4, D=8)
    assert c.success and all(c.sequences_exact)
    assert [L.dims(0, 4) for L in c.chain] == [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [1, 1, 1, 0, 0], [1, 1, 1, 1, 0]]
    assert c.limit.ok and c.limit.module.dims(0, 8) == [1] * 9


def test_chain_stops_at_obstruction():
    A = P("F3", ["u", "v"], ideal=["u*v"])
    c = lift_to_order(FPModule.cyclic(A, ["u"]), "u", 3, D=6)
    assert not c.success
    n, obs = c.obstruction
    assert n == 1 and obs.kind == "alpha0_not_injective"


def test_check_lifting_rejects_wrong_quotient():
    A = P("F2", ["x", "y"])
    M = FPModule.cyclic(A, ["x", "y"])
    L = FPModule.cyclic(A, ["x^2", "y"])
    pi = ModuleMap(L, M, [M.gen(0)], 0)
    assert check_lifting(M, L, pi, A.var("x"), 2) == []
    bad = FPModule.cyclic(A, ["x^3", "y"])
    assert check_lifting(M, bad, ModuleMap(bad, M, [M.gen(0)], 0), A.var("x"), 2) != []


def test_lift_multi_recovers_polynomial_ring():
    A = P("F2", ["x", "y"])
    k = FPModule.cyclic(A, ["x", "y"])
    m = lift_multi(A, ["x", "y"], k, 4, 8)
    assert m.success and m.round_trip == {"discrete": True, "iso": True}
    assert m.module.dims(0, 6) == from_module(FPModule.free(A, [0])).dims(0, 6)
    with pytest.raises(LiftingError):
        lift_multi(A, ["x"], FPModule.free(A, [0]), 2, 4)


def test_check_lci_verdicts():
    A = P("F2", ["x", "y"])
    k = FPModule.cyclic(A, ["x", "y"])
    v = check_lci(A, ["x", "y"], k, N_max=4)
    assert (v.verdict, v.ext2_zero, v.lift_success, v.regular) == ("regular", True, True, True)
    v = check_lci(A, ["x", "x*y"], k, N_max=4)
    assert (v.verdict, v.ext2_zero, v.regular) == ("not regular", False, False)
    assert v.detail["witness_degree"] == 1
    with pytest.raises(LiftingError):
        check_lci(P("F2", ["x"], ideal=["x^2"]), ["x"], FPModule.cyclic(P("F2", ["x"], ideal=["x^2"]), ["x"]))
