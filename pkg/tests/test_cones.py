from __future__ import annotations

import pytest

from taccat.algebra import GF, QQ, PolyMatrix
from taccat.cones import adjunction_dim_check, lifted_cone, s_functor, t_functor
from taccat.complexes import is_contractible_over_top, make_complex, mapping_cone
from taccat.corpus import generate
from taccat.errors import RingMismatch, SquareNotZero, WindowUnsupported
from taccat.operators import eisenbud_operators
from taccat.rings import make_ci_ring

from conftest import dual_numbers, ex1_complex, ex2_pair


def _square_zero(X):
    R = X.ring
    return all(R.is_zero_matrix(X.d(n - 1) @ X.d(n)) for n in range(X.period))


def test_lifted_cone_dual_numbers():
    R, C = dual_numbers()
    L = lifted_cone(C)
    assert str(L.result.d(0)) == "[[-x, -x^2], [1, x]]"
    assert L.result.ring.c == 0
    # squares to zero over Q itself, not just modulo something
    P = L.result.d(0) @ L.result.d(0)
    assert P.is_zero()


def test_lifted_cone_example1():
    C = ex1_complex()
    L = lifted_cone(C, eliminate=1)
    assert L.relation == C.ring.Q("y^2")
    assert L.result.ranks == (4,)
    assert [str(f) for f in L.result.ring.f] == ["x^2"]
    assert _square_zero(L.result)


def test_lifted_cone_rejects_non_operator():
    R, C = dual_numbers()
    with pytest.raises(SquareNotZero):
        lifted_cone(C, t=[[["x + 1"]]])


def test_s_functor_of_lifted_cone_is_mapping_cone():
    R, C = dual_numbers()
    L = lifted_cone(C)
    S = s_functor(L.result, R)
    assert str(S.d(0)) == "[[-x, 0], [1, x]]"
    assert S.d(0) == mapping_cone(eisenbud_operators(C)[0]).d(0)
    assert s_functor(C, R).d(0) == C.d(0)


def test_s_functor_rejects_unrelated_ring():
    R, C = dual_numbers()
    other = make_ci_ring(["y"], QQ, ["y^2"])
    with pytest.raises(RingMismatch):
        s_functor(C, other)


def test_t_functor_towers(ex2):
    R, C = dual_numbers()
    T = t_functor(C)
    assert str(T.final.d(0)) == "[[-x, -x^2], [1, x]]"
    C2, _ = ex2
    T2 = t_functor(C2)
    assert [st.result.ranks for st in T2.stages] == [(4,), (8,), (16,)]
    assert T2.final.ring.c == 0
    assert _square_zero(T2.final)
    same = t_functor(C2, stop=3)
    assert same.stages == [] and same.final is C2


def test_t_functor_order_validation():
    C = ex1_complex()
    with pytest.raises(Exception):
        t_functor(C, order=(0, 0))


def test_corpus_lifted_cone_laws():
    """Every lifted cone squares to zero over the intermediate ring and reduces
    to the mapping cone of the eliminated operator."""
    for item in generate(13, 30):
        C = item.complex
        ops = eisenbud_operators(C)
        for k in range(C.ring.c):
            L = lifted_cone(C, k)
            assert _square_zero(L.result)
            assert L.result.ranks == tuple(C.rank(n - 1) + C.rank(n - 2) for n in range(C.period))
            S = s_functor(L.result, C.ring)
            cone = mapping_cone(ops[k])
            assert all(S.d(n) == cone.d(n) for n in range(C.period))


def test_full_tower_is_contractible_in_codimension_one():
    for item in generate(3, 20, max_c=1):
        T = t_functor(item.complex)
        assert is_contractible_over_top(T.final)


def test_adjunction_contractible_cases():
    R, C = dual_numbers()
    top = R.subring([])
    K = make_complex(top, 1, [2], [[[0, 1], [0, 0]]])
    rep = adjunction_dim_check(C, K, range(4))
    assert rep.agree and all(a == b == 0 for _, a, b in rep.rows)
    TC = t_functor(C).final
    rep = adjunction_dim_check(C, TC, range(4))
    assert rep.agree
    Z = make_complex(top, 1, [0], [PolyMatrix.zeros(top.Q, 0, 0)])
    assert all(a == b == 0 for _, a, b in adjunction_dim_check(C, Z, range(2)).rows)


def test_adjunction_unsupported_window(monkeypatch):
    """Over a regular ring the tower is always contractible; the guard only
    fires if contractibility cannot be detected."""
    import taccat.cones as cones

    monkeypatch.setattr(cones, "is_contractible_over_top", lambda X: False)
    R, C = dual_numbers()
    top = R.subring([])
    D = make_complex(top, 1, [1], [[[0]]])
    with pytest.raises(WindowUnsupported):
        adjunction_dim_check(C, D, range(1))
