"""Periodic complexes of free modules, chain maps, cones, homotopies and Hom.

Conventions, fixed once for the whole package:

* ``(Σ^i C)_n = C_{n-i}`` with differential ``(-1)^i d^C_{n-i}``.
* A chain map ``ψ: C -> Σ^i D`` has components ``ψ_n: C_n -> D_{n-i}`` with
  ``(-1)^i d^D_{n-i} ψ_n = ψ_{n-1} d^C_n``.
* A homotopy between ``ψ, ψ'`` has ``λ_n: C_n -> D_{n+1-i}`` with
  ``ψ_n - ψ'_n = (-1)^i d^D_{n+1-i} λ_n + λ_{n-1} d^C_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from .algebra import linalg
from .algebra.matrix import PolyMatrix
from .errors import (
    NotAChainMap,
    NotArtinian,
    RingMismatch,
    ShapeMismatch,
    SquareNotZero,
)
from .rings import CIRing


def _sign(i: int) -> int:
    return -1 if i % 2 else 1


class PeriodicComplex:
    """A complex with ``C_n = R^{ranks[n mod p]}`` and ``d_n = diffs[n mod p]``."""

    def __init__(self, ring: CIRing, period: int, ranks: Sequence[int], diffs: Sequence[PolyMatrix], name: str | None = None):
        self.ring = ring
        self.period = period
        self.ranks = tuple(ranks)
        self.diffs = tuple(diffs)
        self.name = name

    def d(self, n: int) -> PolyMatrix:
        return self.diffs[n % self.period]

    def rank(self, n: int) -> int:
        return self.ranks[n % self.period]

    def __eq__(self, other):
        return (
            isinstance(other, PeriodicComplex)
            and self.ring == other.ring
            and self.period == other.period
            and self.ranks == other.ranks
            and self.diffs == other.diffs
        )

    def __hash__(self):
        return hash((self.period, self.ranks, self.diffs))

    def __repr__(self):
        label = self.name or "complex"
        return f"<{label}: period {self.period}, ranks {list(self.ranks)}>"

    def unrolled(self, period: int) -> "PeriodicComplex":
        """The same complex presented with a longer period (a multiple of ours)."""
        if period % self.period:
            raise ShapeMismatch("new period must be a multiple of the old one")
        return PeriodicComplex(self.ring, period, [self.rank(n) for n in range(period)], [self.d(n) for n in range(period)], self.name)

    def with_ring(self, ring: CIRing, check: bool = True) -> "PeriodicComplex":
        """Entrywise reduction into another quotient of the same Q."""
        if not ring.same_base(self.ring):
            raise RingMismatch("rings have different polynomial bases")
        return make_complex(ring, self.period, self.ranks, [ring.reduce_matrix(m) for m in self.diffs], self.name, check=check)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self.ranks)


def make_complex(ring: CIRing, period: int, ranks: Sequence[int], diffs: Sequence, name: str | None = None, check: bool = True) -> PeriodicComplex:
    """Validate shapes and ``d_{n-1} d_n = 0`` and build the complex."""
    if period < 1:
        raise ShapeMismatch("period must be at least 1")
    ranks = tuple(int(r) for r in ranks)
    if len(ranks) != period:
        raise ShapeMismatch(f"expected {period} ranks, got {len(ranks)}")
    if len(diffs) != period:
        raise ShapeMismatch(f"expected {period} differentials, got {len(diffs)}")
    mats = []
    for n, D in enumerate(diffs):
        shape = (ranks[(n - 1) % period], ranks[n])
        if isinstance(D, PolyMatrix):
            if D.shape != shape:
                raise ShapeMismatch(f"d[{n}] has shape {D.shape}, expected {shape}")
            M = ring.reduce_matrix(D)
        else:
            try:
                M = ring.matrix(D, shape)
            except ShapeMismatch:
                raise ShapeMismatch(f"d[{n}] does not have shape {shape}") from None
        mats.append(M)
    C = PeriodicComplex(ring, period, ranks, mats, name)
    if check:
        for n in range(period):
            if not ring.is_zero_matrix(C.d(n - 1) @ C.d(n)):
                raise SquareNotZero(n, name)
    return C


def shift(C: PeriodicComplex, i: int) -> PeriodicComplex:
    s = _sign(i)
    diffs = [C.d(n - i).scale(s) for n in range(C.period)]
    return PeriodicComplex(C.ring, C.period, [C.rank(n - i) for n in range(C.period)], diffs, C.name)


def direct_sum(*complexes: PeriodicComplex) -> PeriodicComplex:
    ring = complexes[0].ring
    p = lcm(*(C.period for C in complexes))
    diffs = [PolyMatrix.diagonal([C.d(n) for C in complexes]) for n in range(p)]
    ranks = [sum(C.rank(n) for C in complexes) for n in range(p)]
    return PeriodicComplex(ring, p, ranks, diffs)


# --- chain maps ----------------------------------------------------------


class ChainMap:
    """``ψ: C -> Σ^degree D`` given by ``mats[n mod period]``."""

    def __init__(self, source: PeriodicComplex, target: PeriodicComplex, degree: int, mats: Sequence[PolyMatrix], name: str | None = None):
        self.source = source
        self.target = target
        self.degree = degree
        self.mats = tuple(mats)
        self.period = len(self.mats)
        self.name = name

    def __getitem__(self, n: int) -> PolyMatrix:
        return self.mats[n % self.period]

    @property
    def ring(self) -> CIRing:
        return self.source.ring

    def __eq__(self, other):
        if not isinstance(other, ChainMap) or self.degree != other.degree:
            return False
        L = lcm(self.period, other.period)
        return all(self[n] == other[n] for n in range(L))

    def __hash__(self):
        return hash((self.degree, self.mats))

    def __repr__(self):
        return f"<ChainMap {self.name or ''} degree {self.degree}, period {self.period}>"

    def _combine(self, other: "ChainMap", op) -> "ChainMap":
        if other.degree != self.degree:
            raise ShapeMismatch("chain maps of different degrees")
        L = lcm(self.period, other.period)
        ring = self.ring
        return ChainMap(self.source, self.target, self.degree, [ring.reduce_matrix(op(self[n], other[n])) for n in range(L)])

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, self.degree, [self.ring.reduce_matrix(m.scale(c)) for m in self.mats], self.name)

    def failures(self) -> list:
        """Degrees (mod the period) where the chain-map identity fails."""
        C, D, i = self.source, self.target, self.degree
        s = _sign(i)
        L = lcm(self.period, C.period, D.period)
        bad = []
        for n in range(L):
            lhs = D.d(n - i).scale(s) @ self[n]
            rhs = self[n - 1] @ C.d(n)
            if not self.ring.is_zero_matrix(lhs - rhs):
                bad.append(n)
        return bad

    def is_chain_map(self) -> bool:
        return not self.failures()


def make_chain_map(source: PeriodicComplex, target: PeriodicComplex, degree: int, mats: Sequence, name: str | None = None, check: bool = True) -> ChainMap:
    if source.ring != target.ring:
        raise RingMismatch("source and target live over different rings")
    ring = source.ring
    if not mats:
        raise ShapeMismatch("a chain map needs at least one matrix")
    L = lcm(len(mats), source.period, target.period)
    out = []
    for n in range(L):
        M = mats[n % len(mats)]
        shape = (target.rank(n - degree), source.rank(n))
        if isinstance(M, PolyMatrix):
            if M.shape != shape:
                raise ShapeMismatch(f"psi[{n}] has shape {M.shape}, expected {shape}")
            out.append(ring.reduce_matrix(M))
        else:
            try:
                out.append(ring.matrix(M, shape))
            except ShapeMismatch:
                raise ShapeMismatch(f"psi[{n % len(mats)}] does not have shape {shape}") from None
    psi = ChainMap(source, target, degree, out, name)
    if check:
        bad = psi.failures()
        if bad:
            raise NotAChainMap(bad[0], name)
    return psi


def identity_map(C: PeriodicComplex) -> ChainMap:
    return ChainMap(C, C, 0, [PolyMatrix.identity(C.ring.Q, C.rank(n)) for n in range(C.period)])


def zero_map(C: PeriodicComplex, D: PeriodicComplex, degree: int = 0) -> ChainMap:
    L = lcm(C.period, D.period)
    return ChainMap(C, D, degree, [PolyMatrix.zeros(C.ring.Q, D.rank(n - degree), C.rank(n)) for n in range(L)])


def compose(phi: ChainMap, psi: ChainMap) -> ChainMap:
    """``(Σ^i φ) ∘ ψ`` for ``ψ: C -> Σ^i D`` and ``φ: D -> Σ^j E``."""
    if psi.target != phi.source:
        raise ShapeMismatch("maps are not composable")
    i = psi.degree
    L = lcm(psi.period, phi.period, psi.source.period, phi.target.period)
    ring = psi.ring
    mats = [ring.reduce_matrix(phi[n - i] @ psi[n]) for n in range(L)]
    return ChainMap(psi.source, phi.target, i + phi.degree, mats)


def mapping_cone(psi: ChainMap) -> PeriodicComplex:
    """Cone of ``ψ: C -> Σ^i D``: ``Cone_n = C_{n-1} ⊕ D_{n-i}`` with
    ``d_n = [[-d^C_{n-1}, 0], [ψ_{n-1}, (-1)^i d^D_{n-i}]]``."""
    C, D, i = psi.source, psi.target, psi.degree
    L = lcm(psi.period, C.period, D.period)
    Q = C.ring.Q
    diffs, ranks = [], []
    for n in range(L):
        top = [-C.d(n - 1), PolyMatrix.zeros(Q, C.rank(n - 2), D.rank(n - i))]
        bottom = [psi[n - 1], D.d(n - i).scale(_sign(i))]
        diffs.append(PolyMatrix.block([top, bottom]))
        ranks.append(C.rank(n - 1) + D.rank(n - i))
    name = f"Cone({psi.name})" if psi.name else None
    return make_complex(C.ring, L, ranks, diffs, name)


# --- k-linear machinery --------------------------------------------------


def _algebra(ring: CIRing):
    if not ring.artinian:
        raise NotArtinian(f"{ring!r} is not Artinian; this computation needs finite k-dimension")
    return ring.algebra


def _assemble(F, row_sizes, col_sizes, blocks: dict) -> np.ndarray:
    ro = np.concatenate([[0], np.cumsum(row_sizes)]).astype(int)
    co = np.concatenate([[0], np.cumsum(col_sizes)]).astype(int)
    out = F.zeros((int(ro[-1]), int(co[-1])))
    for (r, c), B in blocks.items():
        out[ro[r] : ro[r + 1], co[c] : co[c + 1]] = F.normalize(out[ro[r] : ro[r + 1], co[c] : co[c + 1]] + B)
    return out


@dataclass
class AcyclicityReport:
    exact: bool
    dual_exact: bool
    witnesses: list = field(default_factory=list)

    @property
    def totally_acyclic(self) -> bool:
        return self.exact and self.dual_exact


def check_totally_acyclic(C: PeriodicComplex) -> AcyclicityReport:
    """Rank count over k: ``rank d_n + rank d_{n+1} = rank(C_n) dim R`` (and dually)."""
    A = _algebra(C.ring)
    F = A.F
    ranks = {n: linalg.rank(A.left_map(C.d(n), 1), F) for n in range(C.period)}
    dual = {n: linalg.rank(A.left_map(C.d(n).T, 1), F) for n in range(C.period)}
    witnesses = []
    for n in range(C.period):
        full = C.rank(n) * A.dim
        if ranks[n] + ranks[(n + 1) % C.period] != full:
            witnesses.append(("homology", n))
        if dual[n] + dual[(n + 1) % C.period] != full:
            witnesses.append(("dual homology", n))
    exact = not any(w[0] == "homology" for w in witnesses)
    dual_exact = not any(w[0] == "dual homology" for w in witnesses)
    return AcyclicityReport(exact, dual_exact, witnesses)


def is_contractible_over_top(C: PeriodicComplex) -> bool:
    """Sufficient test for contractibility of a complex of free modules over a
    polynomial ring: exactness of the complex of k-matrices ``d(0)``.

    A minimal-rank argument: if ``d(0)`` is exact then, by Nakayama, the
    complex splits as a direct sum of trivial complexes ``R --1--> R``.
    """
    F = C.ring.field
    origin = [0] * C.ring.Q.nvars
    ranks = []
    for n in range(C.period):
        M = C.d(n)
        arr = F.zeros(M.shape)
        for a in range(M.rows):
            for b in range(M.cols):
                arr[a, b] = M[a, b].evaluate(origin)
        ranks.append(linalg.rank(arr, F))
    return all(ranks[n] + ranks[(n + 1) % C.period] == C.rank(n) for n in range(C.period))


# --- homotopies ----------------------------------------------------------


@dataclass
class Homotopy:
    """Maps ``λ_n: C_n -> D_{n+1-i}``.

    If ``periodic``, ``λ_n = maps[n mod period]`` for all n; otherwise the
    maps are known for ``n`` in ``[lo - 1, hi]`` and the identity holds for
    ``n`` in ``[lo, hi]`` (a window witness, see :func:`find_homotopy`).
    """

    degree: int
    maps: dict
    periodic: bool
    period: int | None = None
    lo: int = 0
    hi: int = 0

    def __getitem__(self, n: int) -> PolyMatrix:
        if self.periodic:
            return self.maps[n % self.period]
        return self.maps[n]

    def degrees(self) -> range:
        return range(0, self.period) if self.periodic else range(self.lo, self.hi + 1)

    def verify(self, psi: ChainMap, psi2: ChainMap) -> bool:
        C, D, i = psi.source, psi.target, psi.degree
        s = _sign(i)
        ring = psi.ring
        for n in self.degrees():
            lhs = psi[n] - psi2[n]
            rhs = D.d(n + 1 - i).scale(s) @ self[n] + self[n - 1] @ C.d(n)
            if not ring.is_zero_matrix(lhs - rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps.values())


#: Above this many unknowns the periodic homotopy search is skipped in favour
#: of the (exact, much cheaper) degree-by-degree window construction.
PERIODIC_SEARCH_LIMIT = 600


def _homotopy_periodic(delta: ChainMap, M: int):
    C, D, i = delta.source, delta.target, delta.degree
    A = _algebra(C.ring)
    F = A.F
    s = _sign(i)
    col_sizes = [D.rank(n + 1 - i) * C.rank(n) * A.dim for n in range(M)]
    row_sizes = [D.rank(n - i) * C.rank(n) * A.dim for n in range(M)]
    if sum(col_sizes) > PERIODIC_SEARCH_LIMIT:
        return None
    blocks = {}
    for n in range(M):
        blocks[(n, n)] = A.left_map(D.d(n + 1 - i), C.rank(n)) * s
        key = (n, (n - 1) % M)
        R = A.right_map(C.d(n), D.rank(n - i))
        blocks[key] = blocks[key] + R if key in blocks else R
    system = _assemble(F, row_sizes, col_sizes, blocks)
    rhs = np.concatenate([A.vec(delta[n]) for n in range(M)]) if sum(row_sizes) else F.zeros(0)
    x = linalg.LinearSolver(system, F).solve(rhs)
    if x is None:
        return None
    maps, pos = {}, 0
    for n in range(M):
        size = col_sizes[n]
        maps[n] = A.unvec(x[pos : pos + size], D.rank(n + 1 - i), C.rank(n))
        pos += size
    return Homotopy(i, maps, True, M)


def _homotopy_window(delta: ChainMap, hi: int):
    """Solve degree 0 jointly for (λ_{-1}, λ_0), then λ_1..λ_hi one at a time."""
    C, D, i = delta.source, delta.target, delta.degree
    A = _algebra(C.ring)
    F = A.F
    s = _sign(i)
    left0 = A.left_map(D.d(1 - i), C.rank(0)) * s
    right0 = A.right_map(C.d(0), D.rank(-i))
    system = np.hstack([left0, right0]) if left0.size or right0.size else F.zeros((left0.shape[0], left0.shape[1] + right0.shape[1]))
    x = linalg.LinearSolver(system, F).solve(A.vec(delta[0]))
    if x is None:
        return None
    k0 = left0.shape[1]
    maps = {
        0: A.unvec(x[:k0], D.rank(1 - i), C.rank(0)),
        -1: A.unvec(x[k0:], D.rank(-i), C.rank(-1)),
    }
    ring = C.ring
    for n in range(1, hi + 1):
        target = ring.reduce_matrix(delta[n] - maps[n - 1] @ C.d(n))
        L = A.left_map(D.d(n + 1 - i), C.rank(n)) * s
        y = linalg.LinearSolver(L, F).solve(A.vec(target))
        if y is None:
            return None  # cannot happen for exact targets
        maps[n] = A.unvec(y, D.rank(n + 1 - i), C.rank(n))
    return Homotopy(i, maps, False, None, 0, hi)


def find_homotopy(psi: ChainMap, psi2: ChainMap) -> Homotopy | None:
    """A homotopy ``ψ ~ ψ'`` or ``None`` if the maps are not homotopic.

    A periodic homotopy over ``L' = 2 lcm(periods)`` degrees is sought first.
    When none exists (or the system is large), a witness over the window
    ``0..L'-1`` is built degree by degree. Existence is decided exactly:
    for totally acyclic complexes over a self-injective ring, ``ψ - ψ'`` is
    null-homotopic iff the degree-0 equation is solvable.
    """
    if psi.source != psi2.source or psi.target != psi2.target or psi.degree != psi2.degree:
        raise ShapeMismatch("maps must share source, target and degree")
    C, D = psi.source, psi.target
    _algebra(C.ring)
    L = lcm(psi.period, psi2.period, C.period, D.period)
    Lp = 2 * L
    delta = psi - psi2
    if all(m.is_zero() for m in delta.mats):
        Q = C.ring.Q
        return Homotopy(psi.degree, {n: PolyMatrix.zeros(Q, D.rank(n + 1 - psi.degree), C.rank(n)) for n in range(Lp)}, True, Lp)
    h = _homotopy_periodic(delta, Lp)
    if h is None:
        h = _homotopy_window(delta, Lp - 1)
    if h is not None and not h.verify(psi, psi2):
        from .errors import InternalError

        raise InternalError("homotopy solver returned an invalid witness")
    return h


# --- Hom in the homotopy category ---------------------------------------


class StableHom:
    """``Hom_K(C, Σ^i D)`` computed at position 0.

    A chain map is determined up to homotopy by ``φ_0: C_0 -> D_{-i}``:

    * ``Z`` = maps ``φ_0`` with ``φ_0 d^C_1`` landing in ``Im d^D_{1-i}``
      (exactly those extending to chain maps);
    * ``B`` = ``d^D_{1-i} α + β d^C_0`` (position-0 parts of null-homotopic maps).

    Both extensions exist because free modules over a self-injective ring are
    injective and the complexes are exact.
    """

    def __init__(self, C: PeriodicComplex, D: PeriodicComplex, i: int):
        if C.ring != D.ring:
            raise RingMismatch("complexes live over different rings")
        self.C, self.D, self.i = C, D, i
        A = self.A = _algebra(C.ring)
        F = self.F = A.F
        s = self.rows = D.rank(-i)
        r0 = self.cols = C.rank(0)
        self.size = s * r0 * A.dim
        # Z: pairs (φ, ψ) with φ d^C_1 = d^D_{1-i} ψ, projected to φ
        right = A.right_map(C.d(1), s)
        left = A.left_map(D.d(1 - i), C.rank(1))
        if right.shape[0]:
            kern = linalg.nullspace(np.hstack([right, F.normalize(-left)]), F)
            self.Z = linalg.row_basis(kern[:, : self.size], F) if kern.shape[0] else F.zeros((0, self.size))
        else:
            self.Z = linalg.identity(self.size, F)
        B1 = A.left_map(D.d(1 - i), r0).T
        B2 = A.right_map(C.d(0), s).T
        self.B = linalg.row_basis(linalg.stack([B1, B2], F, self.size), F) if self.size else F.zeros((0, 0))
        self._down: dict = {}
        self._up: dict = {}

    @cached_property
    def classes(self) -> linalg.Subquotient:
        """``Z / B``: homotopy classes."""
        return linalg.Subquotient(self.Z, self.B, self.F)

    @cached_property
    def reduced(self) -> linalg.Subquotient:
        """``Z / (B + m Z)``: homotopy classes tensored with k."""
        F = self.F
        mz = [linalg.matmul(self.Z, M.T, F) for M in self.A.maximal_ideal_images(self.rows, self.cols)] if self.Z.shape[0] else []
        return linalg.Subquotient(self.Z, linalg.stack([self.B, *mz], F, self.size), F)

    @property
    def dim(self) -> int:
        return self.classes.dim

    def representatives(self) -> list:
        return [self.A.unvec(v, self.rows, self.cols) for v in self.classes.reps]

    # extension of φ_0 to neighbouring degrees
    def _solver_down(self, n: int):
        key = n % lcm(self.C.period, self.D.period)
        if key not in self._down:
            R = self.A.right_map(self.C.d(n), self.D.rank(n - 1 - self.i))
            self._down[key] = linalg.LinearSolver(R, self.F)
        return self._down[key]

    def _solver_up(self, n: int):
        key = n % lcm(self.C.period, self.D.period)
        if key not in self._up:
            L = self.A.left_map(self.D.d(n + 1 - self.i), self.C.rank(n + 1))
            self._up[key] = linalg.LinearSolver(L, self.F)
        return self._up[key]

    def extend(self, phi0, lo: int, hi: int) -> dict:
        """Vectors ``φ_n`` for ``lo <= n <= hi`` (lo <= 0 <= hi) of a chain map with the given ``φ_0``."""
        A, F, C, D, i = self.A, self.F, self.C, self.D, self.i
        s = _sign(i)
        out = {0: linalg.as_array(phi0, F)}
        for n in range(0, lo, -1):
            # φ_{n-1} d^C_n = (-1)^i d^D_{n-i} φ_n
            rhs = linalg.matmul(A.left_map(D.d(n - i), C.rank(n)), out[n].reshape(-1, 1), F).reshape(-1) * s
            x = self._solver_down(n).solve(F.normalize(rhs))
            if x is None:
                raise ArithmeticError("φ_0 does not extend: not a cycle")
            out[n - 1] = x
        for n in range(0, hi):
            # (-1)^i d^D_{n+1-i} φ_{n+1} = φ_n d^C_{n+1}
            rhs = linalg.matmul(A.right_map(C.d(n + 1), D.rank(n - i)), out[n].reshape(-1, 1), F).reshape(-1) * s
            x = self._solver_up(n).solve(F.normalize(rhs))
            if x is None:
                raise ArithmeticError("φ_0 does not extend: not a cycle")
            out[n + 1] = x
        return out

    def contains(self, phi0) -> bool:
        """Whether a position-0 matrix lies in Z."""
        v = linalg.as_array(phi0, self.F).reshape(1, -1)
        return linalg.rank(linalg.stack([self.Z, v], self.F, self.size), self.F) == self.Z.shape[0]

    def is_null_homotopic(self, phi0) -> bool:
        v = linalg.as_array(phi0, self.F).reshape(1, -1)
        return linalg.rank(linalg.stack([self.B, v], self.F, self.size), self.F) == self.B.shape[0]


@dataclass
class HomSpace:
    """Homotopy classes of maps ``C -> Σ^i D`` as a k-vector space."""

    source: PeriodicComplex
    target: PeriodicComplex
    degree: int
    dim: int
    representatives: list  # position-0 matrices φ_0
    stable: StableHom

    def chain_map(self, k: int, lo: int = -2, hi: int = 2) -> dict:
        """Components ``φ_n`` (``lo <= n <= hi``) of a chain map in the k-th class."""
        vecs = self.stable.extend(self.stable.classes.reps[k], lo, hi)
        A = self.stable.A
        return {n: A.unvec(v, self.target.rank(n - self.degree), self.source.rank(n)) for n, v in vecs.items()}


def hom_space(C: PeriodicComplex, D: PeriodicComplex, i: int) -> HomSpace:
    S = StableHom(C, D, i)
    return HomSpace(C, D, i, S.dim, S.representatives(), S)


def class_of(psi: ChainMap, S: StableHom | None = None) -> np.ndarray:
    """Coordinates of the homotopy class of ``ψ`` in ``hom_space`` representatives."""
    S = S or StableHom(psi.source, psi.target, psi.degree)
    return S.classes.coords(S.A.vec(psi[0]))


def periodic_hom_dimension(C: PeriodicComplex, D: PeriodicComplex, i: int, multiple: int = 1) -> int:
    """Dimension of periodic chain maps modulo periodic null-homotopies,
    with period ``multiple * 2 lcm(periods)``.

    Only a diagnostic: non-periodic homotopies can identify periodic maps, so
    this can exceed the true dimension (see :class:`StableHom`).
    """
    A = _algebra(C.ring)
    F = A.F
    s = _sign(i)
    M = multiple * 2 * lcm(C.period, D.period)
    cols = [D.rank(n - i) * C.rank(n) * A.dim for n in range(M)]
    rows = [D.rank(n - 1 - i) * C.rank(n) * A.dim for n in range(M)]
    blocks = {}
    for n in range(M):
        blocks[(n, n)] = A.left_map(D.d(n - i), C.rank(n)) * s
        key = (n, (n - 1) % M)
        R = F.normalize(-A.right_map(C.d(n), D.rank(n - 1 - i)))
        blocks[key] = blocks[key] + R if key in blocks else R
    system = _assemble(F, rows, cols, blocks)
    cycles = sum(cols) - linalg.rank(system, F)
    hcols = [D.rank(n + 1 - i) * C.rank(n) * A.dim for n in range(M)]
    hblocks = {}
    for n in range(M):
        hblocks[(n, n)] = A.left_map(D.d(n + 1 - i), C.rank(n)) * s
        key = (n, (n - 1) % M)
        R = A.right_map(C.d(n), D.rank(n - i))
        hblocks[key] = hblocks[key] + R if key in hblocks else R
    H = _assemble(F, cols, hcols, hblocks)
    return cycles - linalg.rank(H, F)
