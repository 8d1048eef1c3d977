from klift.homalg import FPModule
from klift.koszul_dg import (KoszulDGAlgebra, SemifreeResolution, dg_ext, discrete_as_dg_module,
                             is_regular_sequence, koszul_complex, koszul_dg_module, koszul_homology, merge_sign)
from klift.koszul_dg.formulas import direct_summand_check, fiber_seq_An_check, is_projective_window
from klift.ring_core import QuotientRing

P = QuotientRing.polynomial


def _totals(E, imax, lo=-10, hi=10):
    return [sum(E.module(i).dims(lo, hi)) for i in range(imax + 1)]


def test_merge_sign():
    assert merge_sign((0,), (1,)) == (1, (0, 1))
    assert merge_sign((1,), (0,)) == (-1, (0, 1))
    assert merge_sign((0, 2), (1,)) == (-1, (0, 1, 2))
    assert merge_sign((0,), (0, 1)) is None


def test_koszul_complex_squares_to_zero():
    A = P("F3", ["x", "y", "z"], ideal=["x*z"])
    K = koszul_complex(A, ["x", "y", "z"])
    assert K.is_complex()
    assert [K.terms[h].rank for h in range(4)] == [1, 3, 3, 1]


def test_koszul_homology_and_regularity():
    A = P("F2", ["x", "y"])
    assert koszul_homology(A, ["x", "y"], 0).dims(0, 3) == [1, 0, 0, 0]
    assert koszul_homology(A, ["x", "y"], 1).is_zero()
    assert is_regular_sequence(A, ["x", "y"])
    r = is_regular_sequence(A, ["x", "x*y"])
    assert not r and r.witness_degree == 1
    B = P("F5", ["x", "y"], ideal=["x*y"])
    assert not is_regular_sequence(B, ["x"])
    assert is_regular_sequence(B, ["x + y"])


def test_dg_axioms_of_koszul_module():
    A = P("F3", ["x", "y"], ideal=["y^2"])
    G = KoszulDGAlgebra(A, ["x", "y"])
    assert koszul_dg_module(G).check_axioms() == []


def test_semifree_resolution_checks():
    A = P("F5", ["x", "y"])
    G = KoszulDGAlgebra(A, ["x"])
    k = FPModule.cyclic(A, ["x", "y"])
    F = SemifreeResolution(discrete_as_dg_module(k, G))
    F.extend(4)
    assert F.check(F.valid_through) == []
    assert F.as_dg_module(4).check_axioms() == []


def test_dg_ext_equals_discrete_ext_for_regular_element():
    # x regular on F5[x,y]: Kos(x) is F5[y], and Ext over F5[y] of k is k, k(1)
    A = P("F5", ["x", "y"])
    G = KoszulDGAlgebra(A, ["x"])
    k = FPModule.cyclic(A, ["x", "y"])
    E = dg_ext(G, k, k, 3)
    assert _totals(E, 3) == [1, 1, 0, 0]
    assert E.module(1).hilbert_window(-2, 0) == {-2: 0, -1: 1, 0: 0}


def test_dg_ext_over_non_regular_koszul():
    # Kos(x; F3[x]/x^2) has homology k + k(x e): Ext of k is a polynomial ring on a class of bidegree (2, -2)
    A = P("F3", ["x"], ideal=["x^2"])
    G = KoszulDGAlgebra(A, ["x"])
    k = FPModule.cyclic(A, ["x"])
    E = dg_ext(G, k, k, 4)
    assert _totals(E, 4) == [1, 0, 1, 0, 1]
    assert [E.module(i).hilbert_window(-i, -i)[-i] for i in (0, 2, 4)] == [1, 1, 1]


def test_dg_ext_stable_in_hbound():
    A = P("F2", ["x", "y"], ideal=["x*y"])
    G = KoszulDGAlgebra(A, ["x"])
    k = FPModule.cyclic(A, ["x", "y"])
    a = dg_ext(G, k, k, 3)
    b = dg_ext(G, k, k, 3, hbound=a.extra["hbound"] + 3)
    assert [a.module(i).dims(-8, 4) for i in range(4)] == [b.module(i).dims(-8, 4) for i in range(4)]


def test_fiber_sequence_of_power_quotients():
    A = P("F3", ["x"])
    for k in (1, 2, 3):
        rep = fiber_seq_An_check(A, "x", 3, k)
        assert rep.ok
        # H0 of Kos(x^m) is F3[x]/x^m, m one-dimensional pieces
        assert sum(rep.homology_dims["H0(A_n+1)"]) == 4
        assert sum(rep.homology_dims["H0(A_k)"]) == k


def test_summand_comparison_with_nonregular_element():
    # x kills y on F5[x,y]/(xy), so Ext over Kos(x) is strictly larger than over F5[y]
    A = P("F5", ["x", "y"], ideal=["x*y"])
    G = KoszulDGAlgebra(A, ["x"])
    rep = direct_summand_check(A, G, FPModule.cyclic(A, ["y"]), FPModule.cyclic(A, ["x", "y"]), 3)
    assert rep.ok
    assert [sum(rep.dims_pi0[i]) for i in range(4)] == [1, 1, 0, 0]
    assert [sum(rep.dims_B[i]) for i in range(4)] == [1, 1, 1, 1]
    assert rep.dims_B == rep.dims_dg


def test_projective_window():
    A = P("F3", ["x", "y"], ideal=["x*y"])
    G = KoszulDGAlgebra(A, [])
    k = FPModule.cyclic(A, ["x", "y"])
    # A is Gorenstein of dimension one: Ext^1(k, A) = k, Ext^2(k, A) = 0
    assert is_projective_window(G, k, 2) == {"projective": False, "window": (1, 2), "ext_zero": {1: False, 2: True}}
    assert is_projective_window(G, FPModule.free(A, [0]), 2)["projective"]
