"""Complete intersection rings R = Q/(f_1, ..., f_c) with Q a polynomial ring."""

from __future__ import annotations

from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .algebra.fields import Field
from .algebra.groebner import (
    GroebnerBasis,
    buchberger,
    buchberger_with_cofactors,
    divide_with_cofactors,
    ideal_cofactors,
    ideal_equal,
    ideal_quotient,
)
from .algebra.matrix import PolyMatrix
from .algebra.polynomial import PolyRing, Polynomial, _divides
from .errors import NotArtinian, NotInMSquared, NotRegularSequence, RingMismatch


class CIRing:
    """Quotient of ``Q = k[vars]`` by a sequence ``f``.

    Elements are represented by normal forms modulo the reduced Gröbner basis
    of ``(f)``. An empty ``f`` gives ``Q`` itself.
    """

    def __init__(self, Q: PolyRing, f: Sequence[Polynomial]):
        self.Q = Q
        self.f = tuple(Q(g) for g in f)
        self.gb: GroebnerBasis = buchberger(list(self.f), Q) if self.f else GroebnerBasis(Q, [])
        self._normal_forms: dict = {}

    # --- basic data ----------------------------------------------------
    @property
    def field(self) -> Field:
        return self.Q.field

    @property
    def names(self) -> tuple:
        return self.Q.names

    @property
    def c(self) -> int:
        return len(self.f)

    def __eq__(self, other):
        return isinstance(other, CIRing) and self.Q == other.Q and self.f == other.f

    def __hash__(self):
        return hash((self.Q, self.f))

    def __repr__(self):
        rel = ", ".join(map(str, self.f))
        return f"CIRing({self.field.spec}[{', '.join(self.names)}]/({rel}))"

    @cached_property
    def artinian(self) -> bool:
        if self.gb.is_unit_ideal():
            return True
        pure = set()
        for g in self.gb:
            support = [i for i, k in enumerate(g.lm) if k]
            if len(support) == 1:
                pure.add(support[0])
        return len(pure) == self.Q.nvars

    @cached_property
    def kbasis(self) -> list:
        """Standard monomials (exponent tuples), ascending in the term order."""
        if not self.artinian:
            raise NotArtinian(f"{self!r} is not Artinian")
        if self.gb.is_unit_ideal():
            return []
        n = self.Q.nvars
        bounds = [0] * n
        for g in self.gb:
            support = [i for i, k in enumerate(g.lm) if k]
            if len(support) == 1:
                i = support[0]
                bounds[i] = g.lm[i] if not bounds[i] else min(bounds[i], g.lm[i])
        lms = self.gb.leading_monomials
        out = [
            e
            for e in product(*(range(b) for b in bounds))
            if not any(_divides(m, e) for m in lms)
        ]
        return sorted(out, key=self.Q.key)

    @property
    def dim(self) -> int:
        return len(self.kbasis)

    # --- elements ------------------------------------------------------
    def reduce(self, p) -> Polynomial:
        p = self.Q(p)
        if not self.f:
            return p
        nf = self._normal_forms.get(p)
        if nf is None:
            nf = self._normal_forms[p] = self.gb.reduce(p)
        return nf

    def reduce_matrix(self, M: PolyMatrix) -> PolyMatrix:
        return M.map(self.reduce) if self.f else M

    def matrix(self, entries, shape=None) -> PolyMatrix:
        """Matrix over the ring with entries in normal form."""
        if isinstance(entries, PolyMatrix):
            return self.reduce_matrix(entries)
        return self.reduce_matrix(PolyMatrix(self.Q, entries, shape))

    def element(self, p) -> "RingElement":
        return RingElement(self, self.reduce(p))

    def is_zero(self, p) -> bool:
        return not self.reduce(p)

    def is_zero_matrix(self, M: PolyMatrix) -> bool:
        return all(self.is_zero(e) for e in M.entries())

    @cached_property
    def extended(self):
        """Extended Gröbner basis of ``f`` (basis plus cofactor representations)."""
        return buchberger_with_cofactors(list(self.f), self.Q)

    def cofactors(self, g: Polynomial, order: Sequence[int] | None = None):
        """Write ``g = sum(q_k * f_k) + r``.

        Plain division by ``f`` (in ``order``) is tried first; if it leaves a
        remainder the ideal-membership cofactors from the extended basis are
        used, so ``r`` is zero iff ``g`` lies in ``(f)``.
        """
        order = list(range(self.c)) if order is None else list(order)
        divisors = [self.f[k] for k in order]
        quots, rem = divide_with_cofactors(g, divisors)
        if rem:
            if order == list(range(self.c)):
                quots, rem = ideal_cofactors(g, divisors, self.extended)
            else:
                quots, rem = ideal_cofactors(g, divisors)
        out = [self.Q.zero] * self.c
        for k, q in zip(order, quots):
            out[k] = q
        return out, rem

    def subring(self, keep: Iterable[int]) -> "CIRing":
        """``Q/(f_k : k in keep)``; an intermediate ring of the tower."""
        return CIRing(self.Q, [self.f[k] for k in keep])

    @property
    def top(self) -> "CIRing":
        return CIRing(self.Q, [])

    @cached_property
    def algebra(self) -> "ArtinianAlgebra":
        return ArtinianAlgebra(self)

    def same_base(self, other: "CIRing") -> bool:
        return self.Q == other.Q


class RingElement:
    """Residue class in a :class:`CIRing`, stored by its normal form."""

    __slots__ = ("ring", "rep")

    def __init__(self, ring: CIRing, rep: Polynomial):
        self.ring = ring
        self.rep = rep

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingMismatch("elements of different rings")
            return other.rep
        return self.ring.Q(other)

    def __add__(self, other):
        return self.ring.element(self.rep + self._other(other))

    def __sub__(self, other):
        return self.ring.element(self.rep - self._other(other))

    def __mul__(self, other):
        return self.ring.element(self.rep * self._other(other))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, -self.rep)

    def __pow__(self, n: int):
        out = self.ring.element(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.rep == other.rep
        return self.rep == self.ring.reduce(other)

    def __hash__(self):
        return hash(self.rep)

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        return f"[{self.rep}]"


def lift(r: RingElement) -> Polynomial:
    """Canonical lift to Q: the normal form read as a polynomial."""
    return r.rep


def polynomial_ring(names: Sequence[str], field: Field) -> PolyRing:
    return PolyRing(names, field)


def make_ci_ring(names: Sequence[str] | PolyRing, field: Field | None, f: Sequence) -> CIRing:
    """Validate ``f`` as a regular sequence in m^2 and build the quotient."""
    Q = names if isinstance(names, PolyRing) else PolyRing(names, field)
    if field is not None and Q.field != field:
        raise RingMismatch("field does not match the polynomial ring")
    if not f:
        raise NotRegularSequence(0, "the sequence f must be nonempty")
    fs = [Q(g) for g in f]
    # regularity is checked first: a failing sequence is reported as such even
    # when some member is also outside m^2
    for i, g in enumerate(fs):
        if i == 0:
            if not g:
                raise NotRegularSequence(0, "f1 is zero")
            continue
        prev = buchberger(fs[:i], Q)
        if not ideal_equal(ideal_quotient(prev, g), prev):
            raise NotRegularSequence(i, f"f{i + 1} = {g} is a zero divisor modulo f1..f{i}")
    for i, g in enumerate(fs):
        if g.min_degree() < 2:
            raise NotInMSquared(i, g)
    return CIRing(Q, fs)


class ArtinianAlgebra:
    """k-linear model of an Artinian quotient.

    Matrices over R are vectorized in (row, column, basis) order; ``left_map``
    and ``right_map`` give the k-matrices of multiplication by a fixed
    R-matrix on that layout.
    """

    def __init__(self, ring: CIRing):
        if not ring.artinian:
            raise NotArtinian(f"{ring!r} is not Artinian")
        self.ring = ring
        self.F = ring.field
        self.basis = ring.kbasis
        self.dim = len(self.basis)
        self.index = {e: i for i, e in enumerate(self.basis)}
        d = self.dim
        F = self.F
        table = F.zeros((d, d, d))
        for x, ex in enumerate(self.basis):
            for y, ey in enumerate(self.basis):
                prod = ring.reduce(ring.Q.monomial(tuple(a + b for a, b in zip(ex, ey))))
                table[x, y] = self.coords(prod)
        self.table = table

    def coords(self, p: Polynomial) -> np.ndarray:
        F = self.F
        v = F.zeros(self.dim)
        for e, c in self.ring.reduce(p).items():
            v[self.index[e]] = c
        return v

    def from_coords(self, v) -> Polynomial:
        return self.ring.Q.from_terms({self.basis[i]: c for i, c in enumerate(v) if c != 0})

    def matrix_coords(self, M: PolyMatrix) -> np.ndarray:
        out = self.F.zeros((M.rows, M.cols, self.dim))
        for i in range(M.rows):
            for j in range(M.cols):
                out[i, j] = self.coords(M[i, j])
        return out

    def vec(self, M: PolyMatrix) -> np.ndarray:
        return self.matrix_coords(M).reshape(-1)

    def unvec(self, v, rows: int, cols: int) -> PolyMatrix:
        arr = np.asarray(v).reshape(rows, cols, self.dim)
        return PolyMatrix(
            self.ring.Q,
            [[self.from_coords(arr[i, j]) for j in range(cols)] for i in range(rows)],
            (rows, cols),
        )

    def _mult_tensor(self, M: PolyMatrix) -> np.ndarray:
        """``T[a, j, z, y]``: coefficient of basis z in ``M[a, j] * basis_y``."""
        V = self.matrix_coords(M)
        if V.size == 0:
            return self.F.zeros((M.rows, M.cols, self.dim, self.dim))
        T = np.tensordot(V, self.table, axes=([2], [0]))  # (a, j, y, z)
        return self.F.normalize(T.transpose(0, 1, 3, 2))

    def mult_matrix(self, p: Polynomial) -> np.ndarray:
        return self._mult_tensor(PolyMatrix(self.ring.Q, [[p]], (1, 1)))[0, 0]

    def left_map(self, A: PolyMatrix, s: int) -> np.ndarray:
        """k-matrix of ``X -> A @ X`` for X of shape (A.cols, s)."""
        m, r, d = A.rows, A.cols, self.dim
        T = self._mult_tensor(A).transpose(0, 2, 1, 3)  # (a, z, j, y)
        out = self.F.zeros((m, s, d, r, s, d))
        for c in range(s):
            out[:, c, :, :, c, :] = T
        return out.reshape(m * s * d, r * s * d)

    def right_map(self, B: PolyMatrix, r: int) -> np.ndarray:
        """k-matrix of ``X -> X @ B`` for X of shape (r, B.rows)."""
        s, t, d = B.rows, B.cols, self.dim
        T = self._mult_tensor(B).transpose(1, 2, 0, 3)  # (c, z, j, y)
        out = self.F.zeros((r, t, d, r, s, d))
        for a in range(r):
            out[a, :, :, a, :, :] = T
        return out.reshape(r * t * d, r * s * d)

    def maximal_ideal_images(self, rows: int, cols: int) -> list:
        """k-matrices of multiplication by each variable on (rows x cols) matrices."""
        out = []
        for g in self.ring.Q.gens:
            Mg = self.mult_matrix(g)
            n = rows * cols
            big = self.F.zeros((n, self.dim, n, self.dim))
            for k in range(n):
                big[k, :, k, :] = Mg
            out.append(big.reshape(n * self.dim, n * self.dim))
        return out
