from __future__ import annotations

import random

import numpy as np
import pytest

from taccat.algebra import GF, PolyMatrix
from taccat.algebra import linalg
from taccat.complexes import compose, direct_sum, find_homotopy, make_chain_map
from taccat.corpus import generate
from taccat.errors import ShapeMismatch
from taccat.operators import (
    basis_change_operators,
    combine_operators,
    eisenbud_operators,
    invert,
    verify_operator_commutation,
)

from conftest import contractible, dual_numbers, ex1_complex, ex2_pair


def _diag(ring, *vals):
    n = len(vals)
    return PolyMatrix(ring.Q, [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)], (n, n))


def test_example1_operators():
    C = ex1_complex()
    ops = eisenbud_operators(C)
    Q = C.ring.Q
    assert ops[0][0] == PolyMatrix.identity(Q, 2)
    assert ops[1][0] == PolyMatrix.scalar(Q, 2, 2)


def test_example2_operators(ex2):
    C, D = ex2
    R = C.ring
    t = eisenbud_operators(C)
    assert [t[k][0] for k in range(3)] == [_diag(R, 1, 0), _diag(R, 0, 1), _diag(R, 0, 0)]
    s = eisenbud_operators(D)
    assert [s[k][0] for k in range(3)] == [_diag(R, 1, 0), _diag(R, 0, 0), _diag(R, 0, 1)]


def test_dual_numbers_operator():
    R, C = dual_numbers()
    assert str(eisenbud_operators(C)[0][0]) == "[[1]]"


def _lifted_identity_holds(ops):
    C = ops.complex
    R = C.ring
    for n in range(C.period):
        lhs = C.d(n - 1) @ C.d(n)
        rhs = PolyMatrix.zeros(R.Q, *lhs.shape)
        for k in range(R.c):
            rhs = rhs + ops.lifted[k][n].map(lambda p, f=R.f[k]: p * f)
        if lhs != rhs:
            return False
    return True


def test_lifted_square_identity_on_corpus():
    for item in generate(21, 25):
        ops = eisenbud_operators(item.complex)
        assert _lifted_identity_holds(ops)
        assert all(t.is_chain_map() for t in ops.operators)


def test_extraction_is_deterministic():
    C = ex1_complex()
    a, b = eisenbud_operators(C), eisenbud_operators(C)
    assert [[str(m) for m in fam] for fam in a.lifted] == [[str(m) for m in fam] for fam in b.lifted]


def test_commutation_examples(ex2):
    rep = verify_operator_commutation(eisenbud_operators(ex1_complex()))
    assert rep.ok and all(rep.strict.values())
    C, _ = ex2
    rep = verify_operator_commutation(eisenbud_operators(C))
    assert rep.ok and all(rep.strict.values())


def test_commutation_witnesses_on_random_factorizations():
    items = [it for it in generate(5, 30, max_c=2) if it.ring.c == 2]
    assert items
    nonstrict = 0
    for it in items:
        ops = eisenbud_operators(it.complex)
        rep = verify_operator_commutation(ops)
        for (k, j), h in rep.witnesses.items():
            assert h.verify(compose(ops[k], ops[j]), compose(ops[j], ops[k]))
            nonstrict += not rep.strict[(k, j)]
    assert nonstrict > 0


def test_naturality_of_operators():
    """ψ∘t_k ~ s_k∘ψ for a degree-0 map ψ: C -> D."""
    C, D = ex2_pair(GF(5))
    psi = make_chain_map(C, D, 0, [[[1, 0], [0, 0]]])
    t, s = eisenbud_operators(C), eisenbud_operators(D)
    for k in range(3):
        assert find_homotopy(compose(psi, t[k]), compose(s[k], psi)) is not None


def test_operators_invariant_under_homotopy_equivalence():
    """C ≃ C ⊕ K for K contractible, with ψ the inclusion and ζ the projection."""
    C = ex1_complex()
    R = C.ring
    K = contractible(R)
    D = direct_sum(C, K)
    inc = make_chain_map(C, D, 0, [[[1, 0], [0, 1], [0, 0], [0, 0]]])
    proj = make_chain_map(D, C, 0, [[[1, 0, 0, 0], [0, 1, 0, 0]]])
    t, s = eisenbud_operators(C), eisenbud_operators(D)
    for k in range(R.c):
        assert find_homotopy(t[k], compose(proj, compose(s[k], inc))) is not None


def test_basis_change_identity_and_swap():
    C = ex1_complex()
    ops = eisenbud_operators(C)
    same = basis_change_operators(ops, [[1, 0], [0, 1]])
    assert [o[0] for o in same.operators.operators] == [o[0] for o in ops.operators]
    swap = basis_change_operators(ops, [[0, 1], [1, 0]])
    for j, k in ((0, 1), (1, 0)):
        relabelled = combine_operators(ops, [int(i == k) for i in range(2)], swap.complex)
        assert find_homotopy(swap.operators[j], relabelled) is not None


def test_basis_change_formula():
    C = ex1_complex()
    ops = eisenbud_operators(C)
    bc = basis_change_operators(ops, [[1, 0], [1, 2]])
    assert [str(f) for f in bc.ring.f] == ["x^2", "2*y^2 + x^2"]
    # x^2 + 2y^2 = f'_2, so d^2 lifts with t'_1 = 0 and t'_2 = I
    Q = C.ring.Q
    assert bc.operators[0][0] == PolyMatrix.zeros(Q, 2, 2)
    assert bc.operators[1][0] == PolyMatrix.identity(Q, 2)


def test_basis_change_random_matrices():
    C = ex1_complex()
    F = C.ring.field
    ops = eisenbud_operators(C)
    rng = random.Random(4)
    done = 0
    while done < 6:
        A = [[rng.randrange(7) for _ in range(2)] for _ in range(2)]
        if linalg.rank(F.array(A), F) < 2:
            continue
        bc = basis_change_operators(ops, A)
        assert len(bc.witnesses) == 2
        a = invert(A, F)
        assert np.array_equal(linalg.matmul(F.array(A), a, F), linalg.identity(2, F))
        done += 1


def test_basis_change_rejects_singular():
    ops = eisenbud_operators(ex1_complex())
    with pytest.raises(ShapeMismatch):
        basis_change_operators(ops, [[1, 1], [1, 1]])


def test_divisor_order_gives_homotopic_operators():
    for item in generate(8, 15, max_c=2):
        C = item.complex
        if C.ring.c < 2:
            continue
        a = eisenbud_operators(C)
        b = eisenbud_operators(C, divisor_order=(1, 0))
        for k in range(2):
            assert find_homotopy(a[k], b[k]) is not None


def test_combine_operators():
    C = ex1_complex()
    ops = eisenbud_operators(C)
    m = combine_operators(ops, [3, 1])
    assert m[0] == PolyMatrix.scalar(C.ring.Q, 2, 5)
