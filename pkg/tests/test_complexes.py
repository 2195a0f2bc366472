from __future__ import annotations

import random

import pytest

from taccat import complexes as cx
from taccat.algebra import GF, QQ, PolyMatrix
from taccat.complexes import (
    ChainMap,
    check_totally_acyclic,
    compose,
    find_homotopy,
    hom_space,
    identity_map,
    make_chain_map,
    make_complex,
    mapping_cone,
    periodic_hom_dimension,
    shift,
    zero_map,
)
from taccat.errors import NotAChainMap, NotArtinian, ShapeMismatch, SquareNotZero
from taccat.operators import eisenbud_operators
from taccat.rings import make_ci_ring

from conftest import contractible, dual_numbers, ex1_complex, ex2_pair


def _sign(i):
    return -1 if i % 2 else 1


def _is_chain_map(phi: dict, C, D, i, lo, hi):
    """Independent re-expansion of (-1)^i d^D_{n-i} φ_n = φ_{n-1} d^C_n."""
    R = C.ring
    return all(
        R.is_zero_matrix(D.d(n - i).scale(_sign(i)) @ phi[n] - phi[n - 1] @ C.d(n)) for n in range(lo + 1, hi + 1)
    )


def _homotopy_holds(h, psi, psi2, degrees):
    C, D, i = psi.source, psi.target, psi.degree
    R = C.ring
    return all(
        R.is_zero_matrix(psi[n] - psi2[n] - D.d(n + 1 - i).scale(_sign(i)) @ h[n] - h[n - 1] @ C.d(n)) for n in degrees
    )


# --- construction -----------------------------------------------------------


def test_make_complex_examples(ex2):
    ex1_complex()
    C, D = ex2
    assert C.period == 1 and C.ranks == (2,)
    R = make_ci_ring(["x"], QQ, ["x^3"])
    with pytest.raises(SquareNotZero) as exc:
        make_complex(R, 1, [1], [[["x"]]])
    assert exc.value.degree == 0
    with pytest.raises(ShapeMismatch):
        make_complex(R, 2, [1, 2], [[["x^2"]], [["x"]]])


def test_square_not_zero_names_degree():
    R = make_ci_ring(["x", "y"], QQ, ["x^2", "y^2"])
    with pytest.raises(SquareNotZero) as exc:
        make_complex(R, 2, [1, 1], [[["x"]], [["y"]]], name="C")
    assert "degree" in str(exc.value) and exc.value.degree in (0, 1)


def test_random_perturbations_rejected():
    C = ex1_complex()
    R = C.ring
    Q = R.Q
    rng = random.Random(11)
    monos = [Q.monomial(e) for e in R.kbasis]
    rejected = 0
    trials = 40
    for _ in range(trials):
        M = [
            [C.d(0)[a, b] + sum((m.scale(rng.randrange(7)) for m in monos), Q.zero) for b in range(2)]
            for a in range(2)
        ]
        P = PolyMatrix(Q, M, (2, 2))
        square_zero = all(not R.reduce(e) for e in (P @ P).entries())
        try:
            make_complex(R, 1, [2], [M])
            assert square_zero
        except SquareNotZero:
            assert not square_zero
            rejected += 1
    assert rejected >= 0.9 * trials


def test_total_acyclicity(ex2):
    assert check_totally_acyclic(ex1_complex()).totally_acyclic
    C, D = ex2
    assert check_totally_acyclic(C).totally_acyclic
    R = C.ring
    zero = make_complex(R, 1, [1], [[[0]]])
    rep = check_totally_acyclic(zero)
    assert not rep.exact and not rep.dual_exact
    S = make_ci_ring(["x", "y"], QQ, ["x^2"])
    with pytest.raises(NotArtinian):
        check_totally_acyclic(make_complex(S, 1, [1], [[["x"]]]))


def test_dual_numbers_complex_is_totally_acyclic():
    R, C = dual_numbers()
    assert check_totally_acyclic(C).totally_acyclic


def test_shift_rules():
    C = ex1_complex()
    assert shift(C, 2).d(0) == C.d(0)
    assert shift(C, 1).d(0) == -C.d(0)
    assert shift(shift(C, 1), 1).d(0) == shift(C, 2).d(0)
    R = make_ci_ring(["x"], QQ, ["x^3"])
    P = make_complex(R, 2, [1, 1], [[["x"]], [["x^2"]]])
    assert shift(P, 1).d(0) == -P.d(1)
    assert shift(P, 1).d(1) == -P.d(0)


# --- cones ------------------------------------------------------------------


def test_mapping_cone_examples():
    R, C = dual_numbers()
    t = make_chain_map(C, C, 2, [[[1]]])
    cone = mapping_cone(t)
    assert str(cone.d(0)) == "[[-x, 0], [1, x]]"
    z = mapping_cone(zero_map(C, C, 2))
    assert str(z.d(0)) == "[[-x, 0], [0, x]]"
    E = ex1_complex()
    ops = eisenbud_operators(E)
    big = mapping_cone(ops[0])
    assert big.ranks == (4,)
    assert E.ring.is_zero_matrix(big.d(0) @ big.d(0))


def test_chain_map_validation():
    R, C = dual_numbers()
    with pytest.raises(NotAChainMap):
        make_chain_map(C, C, 1, [[[1]]])  # sign rule: -x·1 != 1·x
    assert make_chain_map(C, C, 2, [[[1]]]).is_chain_map()
    assert make_chain_map(C, C, 1, [[["x"]]]).is_chain_map()


def test_compose_degrees_add():
    E = ex1_complex()
    ops = eisenbud_operators(E)
    tt = compose(ops[0], ops[1])
    assert tt.degree == 4 and tt.is_chain_map()


# --- homotopies -------------------------------------------------------------


def test_homotopy_trivial_cases(ex2):
    C, _ = ex2
    t = eisenbud_operators(C)
    h = find_homotopy(t[2], zero_map(C, C, 2))
    assert h is not None and h.is_zero()
    psi = identity_map(C)
    assert find_homotopy(psi, psi).is_zero()


def _random_nullhomotopic(C, i, rng, F):
    R = C.ring
    Q = R.Q
    monos = [Q.monomial(e) for e in R.kbasis]
    lam = {}
    for n in range(C.period):
        rows, cols = C.rank(n + 1 - i), C.rank(n)
        lam[n] = PolyMatrix(Q, [[sum((m.scale(rng.randrange(F.p)) for m in monos), Q.zero) for _ in range(cols)] for _ in range(rows)], (rows, cols))
    mats = [
        R.reduce_matrix(C.d(n + 1 - i).scale(_sign(i)) @ lam[n % C.period] + lam[(n - 1) % C.period] @ C.d(n))
        for n in range(C.period)
    ]
    return ChainMap(C, C, i, mats)


@pytest.mark.parametrize("i", [0, 1, 2])
def test_constructed_nullhomotopies_are_found(i):
    C = ex1_complex()
    rng = random.Random(i)
    psi = _random_nullhomotopic(C, i, rng, C.ring.field)
    assert psi.is_chain_map()
    h = find_homotopy(psi, zero_map(C, C, i))
    assert h is not None
    assert _homotopy_holds(h, psi, zero_map(C, C, i), range(-3, 4) if h.periodic else h.degrees())


def test_window_homotopy_path(monkeypatch):
    monkeypatch.setattr(cx, "PERIODIC_SEARCH_LIMIT", 0)
    C = ex1_complex()
    psi = _random_nullhomotopic(C, 2, random.Random(5), C.ring.field)
    h = find_homotopy(psi, zero_map(C, C, 2))
    assert h is not None and not h.periodic
    assert _homotopy_holds(h, psi, zero_map(C, C, 2), range(h.lo, h.hi + 1))


def test_non_homotopic_maps_detected():
    R, C = dual_numbers()
    assert find_homotopy(identity_map(C), zero_map(C, C)) is None


# --- Hom spaces -------------------------------------------------------------


def _cyclic_complex(R, n, a):
    """... x^a -> x^(n-a) -> ... over k[x]/(x^n)."""
    if 2 * a == n:
        return make_complex(R, 1, [1], [[[f"x^{a}"]]])
    return make_complex(R, 2, [1, 1], [[[f"x^{a}"]], [[f"x^{n - a}"]]])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_hom_dimension_oracle_cyclic(n):
    """Stable Hom between R/(x^a) and R/(x^b) over k[x]/(x^n) has dimension
    min(a, b, n-a, n-b); the formula is symmetric under syzygies."""
    R = make_ci_ring(["x"], GF(5), [f"x^{n}"])
    for a in range(1, n):
        for b in range(1, n):
            C, D = _cyclic_complex(R, n, a), _cyclic_complex(R, n, b)
            for i in range(4):
                assert hom_space(C, D, i).dim == min(a, b, n - a, n - b), (n, a, b, i)


def test_periodic_search_overcounts_dual_numbers():
    R, C = dual_numbers()
    assert hom_space(C, C, 0).dim == 1
    assert periodic_hom_dimension(C, C, 0) >= hom_space(C, C, 0).dim


def test_hom_examples(ex2):
    C, D = ex2
    H = hom_space(C, C, 0)
    assert H.dim >= 1 and not H.stable.is_null_homotopic(C.ring.algebra.vec(identity_map(C)[0]))
    HD = hom_space(C, D, 0)
    for M in HD.representatives:
        assert M[0, 1] == M[1, 0] == M[1, 1] == C.ring.Q.zero
    R = C.ring
    K = contractible(R)
    for i in range(3):
        assert hom_space(C, K, i).dim == 0
        assert hom_space(K, C, i).dim == 0


def test_representatives_extend_to_chain_maps(ex2):
    C, D = ex2
    for i in range(3):
        H = hom_space(C, D, i)
        for k in range(H.dim):
            phi = H.chain_map(k, -3, 3)
            assert _is_chain_map(phi, C, D, i, -3, 3)


def test_hom_dimension_periodic_in_i():
    C = ex1_complex()
    for i in range(2):
        assert hom_space(C, C, i).dim == hom_space(C, C, i + 2).dim == hom_space(shift(C, 2), C, i).dim


def test_homotopic_operators_have_equivalent_cones():
    C = ex1_complex()
    t = eisenbud_operators(C)[0]
    t2 = t + _random_nullhomotopic(C, 2, random.Random(9), C.ring.field)
    assert t2.is_chain_map() and t2 != t
    A, B = mapping_cone(t), mapping_cone(t2)
    for i in range(3):
        assert hom_space(A, C, i).dim == hom_space(B, C, i).dim
        assert hom_space(C, A, i).dim == hom_space(C, B, i).dim
