"""Exact dense linear algebra over a :class:`~taccat.algebra.fields.Field`.

Vectors are rows. Over F_p arrays are int64 and reduced mod p after every
operation; over Q they are object arrays of ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .fields import Field


def as_array(A, F: Field) -> np.ndarray:
    if isinstance(A, np.ndarray) and A.dtype == np.dtype(F.dtype):
        return F.normalize(A.copy())
    return F.array(A)


def rref(A, F: Field):
    """Reduced row echelon form. Returns ``(R, pivots)``."""
    M = as_array(A, F)
    if M.ndim != 2:
        raise ValueError("rref needs a 2-d array")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c] != 0)[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        # the pivot row vanishes left of column c, so only columns c: change
        M[r, c:] = F.normalize(M[r, c:] * F.inv(M[r, c]))
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col != 0)[0]
        if hit.size:
            M[hit, c:] = F.normalize(M[hit, c:] - np.outer(col[hit], M[r, c:]))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A, F: Field) -> int:
    A = as_array(A, F)
    if A.size == 0:
        return 0
    return len(rref(A, F)[1])


def row_basis(A, F: Field) -> np.ndarray:
    """Rows of the rref spanning the row space of ``A``."""
    A = as_array(A, F)
    if A.shape[0] == 0:
        return A
    R, piv = rref(A, F)
    return R[: len(piv)]


def nullspace(A, F: Field) -> np.ndarray:
    """Basis (as rows) of ``{x : A @ x = 0}``."""
    A = as_array(A, F)
    n = A.shape[1]
    if A.shape[0] == 0:
        return identity(n, F)
    R, piv = rref(A, F)
    free = [j for j in range(n) if j not in set(piv)]
    out = F.zeros((len(free), n))
    for k, j in enumerate(free):
        out[k, j] = F.one
        for i, p in enumerate(piv):
            out[k, p] = -R[i, j]
    return F.normalize(out)


def identity(n: int, F: Field) -> np.ndarray:
    out = F.zeros((n, n))
    for i in range(n):
        out[i, i] = F.one
    return out


def _integral(A: np.ndarray) -> tuple:
    """``(N, d)`` with ``A = N / d`` and N an object array of Python ints."""
    flat = A.reshape(-1)
    d = lcm(*(x.denominator for x in flat)) if flat.size else 1
    N = np.empty(A.shape, dtype=object)
    N.reshape(-1)[:] = [x.numerator * (d // x.denominator) for x in flat]
    return N, d


def matmul(A, B, F: Field) -> np.ndarray:
    if A.shape[1] == 0:
        return F.zeros((A.shape[0], B.shape[1]))
    if F.dtype is object:
        # integer products are far cheaper than Fraction products
        (NA, da), (NB, db) = _integral(A), _integral(B)
        P = NA @ NB
        d = da * db
        out = np.empty(P.shape, dtype=object)
        out.reshape(-1)[:] = [Fraction(int(x), d) for x in P.reshape(-1)]
        return out
    return F.normalize(A @ B)


def stack(blocks, F: Field, width: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return F.zeros((0, width))
    return np.vstack(blocks)


class LinearSolver:
    """Solves ``A @ x = b`` repeatedly for one fixed ``A``.

    The rref of ``[A | I]`` is computed once; each solve is then a
    matrix-vector product plus a consistency check.
    """

    def __init__(self, A, F: Field):
        A = as_array(A, F)
        self.F = F
        self.shape = A.shape
        m, n = A.shape
        aug = np.hstack([A, identity(m, F)]) if m else F.zeros((0, n))
        R, piv = rref(aug, F) if m else (aug, [])
        self.pivots = [p for p in piv if p < n]
        r = len(self.pivots)
        self.transform = R[:, n:]
        self.reduced = R[:r, :n]
        # rows of the transform whose A-part vanished: b must be orthogonal to them
        self.left_null = R[r:, n:]

    def solve(self, b):
        """A particular solution (free variables zero), or ``None``."""
        F = self.F
        m, n = self.shape
        b = as_array(b, F).reshape(-1)
        if self.left_null.shape[0] and np.any(matmul(self.left_null, b.reshape(-1, 1), F) != 0):
            return None
        x = F.zeros(n)
        if m:
            y = matmul(self.transform[: len(self.pivots)], b.reshape(-1, 1), F).reshape(-1)
            for i, p in enumerate(self.pivots):
                x[p] = y[i]
        return x

    def kernel(self) -> np.ndarray:
        return nullspace(self.reduced if self.reduced.shape[0] else self.F.zeros((0, self.shape[1])), self.F)


def solve(A, b, F: Field):
    return LinearSolver(A, F).solve(b)


class Subquotient:
    """The quotient ``Z / B`` of row spaces with ``B ⊆ Z``.

    Representatives are reduced against the rref of ``B`` and mutually
    reduced, so coordinates of a vector are read off at pivot positions.
    """

    def __init__(self, Z, B, F: Field):
        self.F = F
        Z = as_array(Z, F)
        B = as_array(B, F)
        self.ambient = Z.shape[1] if Z.ndim == 2 else B.shape[1]
        self.sub = row_basis(B, F) if B.shape[0] else F.zeros((0, self.ambient))
        self.sub_pivots = list(rref(self.sub, F)[1]) if self.sub.shape[0] else []
        reduced = self.reduce_many(Z) if Z.shape[0] else Z
        if reduced.shape[0]:
            R, piv = rref(reduced, F)
            self.reps = R[: len(piv)]
            self.pivots = piv
        else:
            self.reps = F.zeros((0, self.ambient))
            self.pivots = []

    @property
    def dim(self) -> int:
        return self.reps.shape[0]

    def reduce_many(self, V) -> np.ndarray:
        F = self.F
        V = as_array(V, F)
        if V.ndim == 1:
            V = V.reshape(1, -1)
        for i, p in enumerate(self.sub_pivots):
            col = V[:, p].copy()
            hit = np.nonzero(col != 0)[0]
            if hit.size:
                V[hit] = F.normalize(V[hit] - np.outer(col[hit], self.sub[i]))
        return V

    def coords(self, v, check: bool = True) -> np.ndarray:
        """Coordinates of the class of ``v`` (which must lie in Z) in the rep basis."""
        F = self.F
        w = self.reduce_many(v)[0]
        c = np.array([w[p] for p in self.pivots], dtype=F.dtype) if self.pivots else F.zeros(0)
        if check:
            back = matmul(c.reshape(1, -1), self.reps, F)[0] if self.dim else F.zeros(self.ambient)
            if np.any(back != w):
                raise ArithmeticError("vector does not lie in the numerator space")
        return c

    def coords_many(self, V, check: bool = True) -> np.ndarray:
        V = as_array(V, self.F)
        if V.shape[0] == 0:
            return self.F.zeros((0, self.dim))
        return np.vstack([self.coords(v, check) for v in V]) if self.dim else self.F.zeros((V.shape[0], 0))
