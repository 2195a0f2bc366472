"""Eisenbud operators: the cofactors of the lifted square of the differential."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import linalg
from .algebra.matrix import PolyMatrix
from .complexes import ChainMap, Homotopy, PeriodicComplex, compose, find_homotopy
from .errors import CommutationFailure, ConventionMismatch, InternalError, ShapeMismatch
from .rings import CIRing, make_ci_ring


@dataclass
class EisenbudOperators:
    """``t_k`` for a complex over ``Q/(f)`` with ``d̃_{n-1} d̃_n = Σ f_k t̃_{k,n}``.

    ``lifted[k][n]`` is ``t̃_{k,n}`` over Q; ``operators[k]`` is the degree-2
    chain map ``t_k: C -> Σ^2 C`` over R.
    """

    complex: PeriodicComplex
    lifted: list
    operators: list
    divisor_order: tuple

    def __getitem__(self, k: int) -> ChainMap:
        return self.operators[k]

    def __len__(self):
        return len(self.operators)

    @property
    def c(self) -> int:
        return len(self.operators)


def eisenbud_operators(C: PeriodicComplex, divisor_order: Sequence[int] | None = None) -> EisenbudOperators:
    R = C.ring
    c = R.c
    order = tuple(range(c)) if divisor_order is None else tuple(divisor_order)
    if sorted(order) != list(range(c)):
        raise ShapeMismatch("divisor order must be a permutation of the relations")
    Q = R.Q
    lifted = [[None] * C.period for _ in range(c)]
    for n in range(C.period):
        square = C.d(n - 1) @ C.d(n)
        rows, cols = square.shape
        cof = [[[Q.zero] * cols for _ in range(rows)] for _ in range(c)]
        for a in range(rows):
            for b in range(cols):
                entry = square[a, b]
                if not entry:
                    continue
                quots, rem = R.cofactors(entry, order)
                if rem:
                    raise InternalError(f"d^2 entry {entry} is not in (f); the complex is corrupt")
                for k in range(c):
                    cof[k][a][b] = quots[k]
        for k in range(c):
            lifted[k][n] = PolyMatrix(Q, cof[k], (rows, cols))
    ops = []
    for k in range(c):
        t = ChainMap(C, C, 2, [R.reduce_matrix(m) for m in lifted[k]], name=f"t{k + 1}")
        if not t.is_chain_map():
            raise InternalError(f"t{k + 1} fails the chain-map identity")
        ops.append(t)
    return EisenbudOperators(C, lifted, ops, order)


@dataclass
class CommutationReport:
    witnesses: dict = field(default_factory=dict)  # (k, j) -> Homotopy
    strict: dict = field(default_factory=dict)  # (k, j) -> bool

    @property
    def ok(self) -> bool:
        return all(h is not None for h in self.witnesses.values())


def verify_operator_commutation(ops: EisenbudOperators) -> CommutationReport:
    report = CommutationReport()
    for k in range(ops.c):
        for j in range(k + 1, ops.c):
            tk_tj = compose(ops[k], ops[j])
            tj_tk = compose(ops[j], ops[k])
            h = find_homotopy(tk_tj, tj_tk)
            if h is None:
                raise CommutationFailure(f"t{k + 1} t{j + 1} and t{j + 1} t{k + 1} are not homotopic")
            report.witnesses[(k, j)] = h
            report.strict[(k, j)] = tk_tj == tj_tk
    return report


def invert(A, F) -> np.ndarray:
    A = linalg.as_array(A, F)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch("basis change matrix must be square")
    R, piv = linalg.rref(np.hstack([A, linalg.identity(n, F)]), F)
    if piv[:n] != list(range(n)):
        raise ShapeMismatch("basis change matrix is singular")
    return R[:, n:]


def combine_operators(ops: EisenbudOperators, coeffs, C: PeriodicComplex | None = None) -> ChainMap:
    """``Σ_i coeffs[i] t_i`` as a chain map on ``C`` (default: the operators' complex)."""
    C = C or ops.complex
    R = C.ring
    Q = R.Q
    period = ops.complex.period
    mats = []
    for n in range(period):
        acc = PolyMatrix.zeros(Q, C.rank(n - 2), C.rank(n))
        for i, a in enumerate(coeffs):
            if a != 0:
                acc = acc + ops[i][n].scale(a)
        mats.append(R.reduce_matrix(acc))
    return ChainMap(C, C, 2, mats)


@dataclass
class BasisChange:
    ring: CIRing
    complex: PeriodicComplex
    operators: EisenbudOperators
    A: np.ndarray
    inverse: np.ndarray
    witnesses: list


def basis_change_operators(ops: EisenbudOperators, A) -> BasisChange:
    """Operators for ``f' = A f`` and the check ``t'_j ~ Σ_i a_ij t_i`` with ``a = A^{-1}``."""
    C = ops.complex
    R = C.ring
    F = R.field
    A = linalg.as_array(A, F)
    a = invert(A, F)
    c = R.c
    f_new = []
    for j in range(c):
        acc = R.Q.zero
        for i in range(c):
            acc = acc + R.f[i].scale(A[j, i])
        f_new.append(acc)
    R2 = make_ci_ring(R.Q, F, f_new)
    C2 = C.with_ring(R2)
    ops2 = eisenbud_operators(C2)
    witnesses = []
    for j in range(c):
        predicted = combine_operators(ops, [a[i, j] for i in range(c)], C2)
        h = find_homotopy(ops2[j], predicted)
        if h is None:
            raise ConventionMismatch(f"t'{j + 1} is not homotopic to the predicted combination")
        witnesses.append(h)
    return BasisChange(R2, C2, ops2, A, a, witnesses)
