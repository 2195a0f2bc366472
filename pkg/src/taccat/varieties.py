"""The graded module E = ⊕ Hom(C, Σ^i D) ⊗ k, its annihilator and varieties."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .algebra import linalg
from .algebra.fields import Field, PrimeField
from .algebra.groebner import GroebnerBasis, buchberger, radical_membership
from .algebra.polynomial import PolyRing, Polynomial
from .complexes import ChainMap, PeriodicComplex, StableHom, mapping_cone
from .errors import InternalError, RingMismatch, StabilizationNotDetected, ZeroPoint
from .operators import EisenbudOperators, eisenbud_operators, invert


def default_window(C: PeriodicComplex, D: PeriodicComplex) -> int:
    Lp = 2 * lcm(C.period, D.period)
    return 2 * Lp + 2 * C.ring.c + 4


def chi_ring(c: int, F: Field) -> PolyRing:
    return PolyRing([f"chi{k + 1}" for k in range(c)], F)


class GradedHomModule:
    """``E_i = Hom_K(C, Σ^i D) ⊗ k`` for ``i >= 0`` with the χ-actions.

    ``E_i`` only depends on ``i mod L'`` (``L' = 2 lcm(periods)``), so the
    module is stored as spaces ``V_r`` for residues r and action matrices
    ``actions[k][r]: V_r -> V_{r+2}`` in the representative bases.
    ``χ_k`` acts by precomposition with ``t_k``.
    """

    def __init__(self, C: PeriodicComplex, D: PeriodicComplex, window: int | None = None, ops: EisenbudOperators | None = None):
        if C.ring != D.ring:
            raise RingMismatch("complexes live over different rings")
        self.C, self.D = C, D
        self.ring = C.ring
        self.F = self.ring.field
        self.c = self.ring.c
        self.Lp = 2 * lcm(C.period, D.period)
        self.window = default_window(C, D) if window is None else window
        if self.window < self.Lp + 2:
            raise StabilizationNotDetected(f"window {self.window} is shorter than one period plus an action step ({self.Lp + 2})")
        self.ops = ops or eisenbud_operators(C)
        self.homs = {r: StableHom(C, D, r) for r in range(self.Lp)}
        self.spaces = {r: h.reduced for r, h in self.homs.items()}
        self.dims = {r: s.dim for r, s in self.spaces.items()}
        self.actions = [{r: self._action(k, r) for r in range(self.Lp)} for k in range(self.c)]
        self._check_commutation()

    def residue(self, i: int) -> int:
        return i % self.Lp

    def dim(self, i: int) -> int:
        return self.dims[self.residue(i)]

    def _action(self, k: int, r: int) -> np.ndarray:
        """Matrix of ``χ_k: V_r -> V_{r+2}`` (columns are images of basis vectors)."""
        src = self.homs[r]
        dst_r = self.residue(r + 2)
        dst = self.homs[dst_r]
        A = src.A
        t0 = self.ops[k][0]
        cols = []
        for v in self.spaces[r].reps:
            phi = src.extend(v, -2, 0)[-2]
            phi_m2 = A.unvec(phi, self.D.rank(-2 - r), self.C.rank(-2))
            image = self.ring.reduce_matrix(phi_m2 @ t0)
            cols.append(self.spaces[dst_r].coords(A.vec(image)))
        out = self.F.zeros((self.dims[dst_r], self.dims[r]))
        for j, col in enumerate(cols):
            out[:, j] = col
        return out

    def _check_commutation(self) -> None:
        F = self.F
        for k, j in combinations(range(self.c), 2):
            for r in range(self.Lp):
                r2 = self.residue(r + 2)
                ab = linalg.matmul(self.actions[k][r2], self.actions[j][r], F)
                ba = linalg.matmul(self.actions[j][r2], self.actions[k][r], F)
                if np.any(ab != ba):
                    raise InternalError(f"chi{k + 1} and chi{j + 1} do not commute on E_{r}")

    def monomial_action(self, exps: Sequence[int], r: int) -> np.ndarray:
        """Matrix of ``χ^exps`` from ``V_r`` to ``V_{r + 2 deg}``."""
        M = linalg.identity(self.dims[r], self.F)
        cur = r
        for k, e in enumerate(exps):
            for _ in range(e):
                M = linalg.matmul(self.actions[k][cur], M, self.F)
                cur = self.residue(cur + 2)
        return M

    def polynomial_action(self, p: Polynomial, r: int) -> np.ndarray:
        """Matrix of a homogeneous polynomial on ``V_r``."""
        F = self.F
        d = p.degree()
        out = F.zeros((self.dims[self.residue(r + 2 * d)], self.dims[r])) if p else None
        if out is None:
            return F.zeros((0, self.dims[r]))
        for e, c in p.items():
            out = F.normalize(out + self.monomial_action(e, r) * c)
        return out

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())


def build_E(C: PeriodicComplex, D: PeriodicComplex, window: int | None = None, ops: EisenbudOperators | None = None) -> GradedHomModule:
    return GradedHomModule(C, D, window, ops)


# --- annihilator ---------------------------------------------------------


@dataclass
class VarietyIdeal:
    """Ideal of ``k[chi1..chic]`` whose zero set is the support variety."""

    ideal: GroebnerBasis
    window: int
    degree: int  # largest degree examined
    stable_for: int  # consecutive degrees without change at the end
    escalated: bool = False  # the default window had to be enlarged

    @property
    def ring(self) -> PolyRing:
        return self.ideal.ring

    @property
    def generators(self) -> list:
        return list(self.ideal.generators)

    def strings(self) -> list:
        return [str(g) for g in self.generators]

    def __str__(self):
        return "(" + ", ".join(self.strings()) + ")"

    def vanishes_at(self, point: Sequence) -> bool:
        if all(v == 0 for v in point):
            return True
        return all(g.evaluate(point) == 0 for g in self.generators)

    def describe(self) -> str:
        return describe_zero_set(self.ideal)


def _monomials(c: int, d: int) -> list:
    out = []
    for combo in combinations_with_replacement(range(c), d):
        e = [0] * c
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    return out


def _kernel_in_degree(E: GradedHomModule, S: PolyRing, d: int, cache: dict) -> list:
    """Homogeneous degree-d polynomials killing every ``V_r``."""
    F = E.F
    monos = sorted(_monomials(E.c, d), key=S.key)
    rows = []
    for e in monos:
        blocks = []
        for r in range(E.Lp):
            key = (e, r)
            if key not in cache:
                # extend a cached lower-degree monomial by one χ
                k = max(i for i, x in enumerate(e) if x) if d else None
                if k is None:
                    cache[key] = linalg.identity(E.dims[r], F)
                else:
                    lower = tuple(x - (i == k) for i, x in enumerate(e))
                    cur = E.residue(r + 2 * (d - 1))
                    cache[key] = linalg.matmul(E.actions[k][cur], cache[(lower, r)], F)
            blocks.append(cache[key].reshape(-1))
        rows.append(np.concatenate(blocks) if blocks else F.zeros(0))
    W = np.vstack(rows) if rows else F.zeros((0, 0))
    if W.shape[1] == 0:
        kern = linalg.identity(len(monos), F)
    else:
        kern = linalg.nullspace(W.T, F)
    return [S.from_terms({monos[j]: v[j] for j in range(len(monos)) if v[j] != 0}) for v in kern]


def annihilator(E: GradedHomModule, max_degree: int | None = None, stable_run: int | None = None) -> VarietyIdeal:
    """Degree-by-degree kernel of ``k[χ] -> End(⊕ V_r)``.

    Stops when the reduced basis has been unchanged for ``stable_run``
    (default ``L'``) consecutive degrees; raises
    :class:`StabilizationNotDetected` if that does not happen by
    ``max_degree`` (default: the window). Every generator is re-checked
    against every ``V_r`` exactly.
    """
    S = chi_ring(E.c, E.F)
    cap = E.window if max_degree is None else max_degree
    run = E.Lp if stable_run is None else stable_run
    gens: list = []
    gb = GroebnerBasis(S, [])
    unchanged = 0
    cache: dict = {}
    d = 0
    while True:
        new = [p for p in _kernel_in_degree(E, S, d, cache) if not gb.contains(p)]
        if new:
            gens.extend(new)
            gb = buchberger(gens, S)
            unchanged = 0
        else:
            unchanged += 1
        if gb.is_unit_ideal() or (unchanged >= run and d >= 1):
            break
        if d >= cap:
            raise StabilizationNotDetected(f"annihilator not stable within degree {cap}")
        d += 1
    for g in gb.generators:
        for r in range(E.Lp):
            M = E.polynomial_action(g, r)
            if np.any(M != 0):
                raise InternalError(f"generator {g} does not annihilate E_{r}")
    return VarietyIdeal(gb, E.window, d, unchanged)


def support_variety(C: PeriodicComplex, D: PeriodicComplex, window: int | None = None, escalate_to: int | None = None) -> VarietyIdeal:
    """Build E and its annihilator, doubling the window on non-stabilization."""
    N = default_window(C, D) if window is None else window
    cap = escalate_to if escalate_to is not None else 4 * N
    ops = eisenbud_operators(C)
    first = N
    while True:
        try:
            E = build_E(C, D, N, ops)
            V = annihilator(E)
            V.escalated = N != first
            return V
        except StabilizationNotDetected:
            if 2 * N > cap:
                raise
            N *= 2


def describe_zero_set(I: GroebnerBasis) -> str:
    """Human-readable zero set for unit, zero, linear and monomial ideals."""
    S = I.ring
    c = S.nvars
    names = S.names
    if I.is_unit_ideal():
        return "{0}"
    if I.is_zero_ideal():
        return f"k^{c}"
    gens = list(I.generators)
    F = S.field
    if all(g.degree() == 1 and g.is_homogeneous() for g in gens):
        coeffs = F.zeros((len(gens), c))
        for a, g in enumerate(gens):
            for e, v in g.items():
                coeffs[a, e.index(1)] = v
        basis = linalg.nullspace(coeffs, F)
        if basis.shape[0]:
            basis = linalg.row_basis(basis, F)
        if basis.shape[0] == 0:
            return "{0}"
        if basis.shape[0] == 1:
            v = basis[0]
            return "{" + "a*(" + ", ".join(str(F.signed(x)) for x in v) + ")}"
        vecs = ["(" + ", ".join(str(F.signed(x)) for x in v) + ")" for v in basis]
        return "span{" + ", ".join(vecs) + "}"
    if all(len(g) == 1 for g in gens):
        supports = [frozenset(i for i, x in enumerate(g.lm) if x) for g in gens]
        # maximal coordinate subspaces containing no generator's support
        comps = []
        for size in range(c, -1, -1):
            for T in combinations(range(c), size):
                Ts = set(T)
                if any(s <= Ts for s in supports):
                    continue
                if any(Ts < set(U) for U in comps):
                    continue
                comps.append(T)
        if comps == [()]:
            return "{0}"
        parts = []
        for T in comps:
            if len(T) == 1:
                parts.append(f"{names[T[0]]}-axis")
            else:
                parts.append("span(" + ", ".join(names[t] for t in T) + ")")
        return " ∪ ".join(parts)
    return "Z" + "(" + ", ".join(map(str, gens)) + ")"


# --- rank variety -------------------------------------------------------


@dataclass
class RankPoint:
    """Nonzero ``a ∈ k^c`` with ``f_a = Σ a_i f_i`` and an invertible
    completion matrix whose last row is ``a``."""

    a: tuple
    f_a: Polynomial
    completion: np.ndarray


def make_rank_point(ring, a: Sequence, completion=None) -> RankPoint:
    F = ring.field
    a = tuple(F(x) for x in a)
    if len(a) != ring.c:
        raise ZeroPoint(f"point needs {ring.c} coordinates")
    if all(x == 0 for x in a):
        raise ZeroPoint("the origin is not a rank point")
    if completion is None:
        p = next(i for i, x in enumerate(a) if x != 0)
        rows = [[F.one if j == i else F.zero for j in range(ring.c)] for i in range(ring.c) if i != p]
        completion = F.array(rows + [list(a)])
    else:
        completion = linalg.as_array(completion, F)
        if tuple(completion[-1]) != a:
            raise ZeroPoint("completion must have the point as its last row")
        invert(completion, F)
    f_a = ring.Q.zero
    for x, f in zip(a, ring.f):
        f_a = f_a + f.scale(x)
    return RankPoint(a, f_a, completion)


def rank_membership(C: PeriodicComplex, D: PeriodicComplex, point, E: GradedHomModule | None = None) -> bool:
    """Coinvariant test: ``a ∈ W`` iff ``E / (χ'_1..χ'_{c-1}) E`` is nonzero in
    infinitely many degrees, where ``χ'_j = Σ_i (M^{-1})_{ij} χ_i`` for the
    completion ``M``. The origin is always a member."""
    E = E or build_E(C, D)
    if not isinstance(point, RankPoint):
        if all(E.F(x) == 0 for x in point):
            return True
        point = make_rank_point(C.ring, point)
    F = E.F
    inv = invert(point.completion, F)
    c = E.c
    for r in range(E.Lp):
        if E.dims[r] == 0:
            continue
        prev = E.residue(r - 2)
        images = []
        for j in range(c - 1):
            M = F.zeros((E.dims[r], E.dims[prev]))
            for i in range(c):
                if inv[i, j] != 0:
                    M = F.normalize(M + E.actions[i][prev] * inv[i, j])
            images.append(M)
        span = linalg.rank(np.hstack(images), F) if images and E.dims[prev] else 0
        if span < E.dims[r]:
            return True
    return False


def grid_points(F: Field, c: int, p: int | None = None) -> list:
    """All nonzero points of F_p^c (or of {0..p-1}^c inside Q)."""
    if isinstance(F, PrimeField) and (p is None or p == F.p):
        values = list(range(F.p))
    else:
        if p is None:
            raise ValueError("a grid size is needed over Q")
        values = list(range(p))
    return [pt for pt in product(values, repeat=c) if any(pt)]


@dataclass
class CrosscheckReport:
    total: int
    agree: int
    disagreements: list = field(default_factory=list)
    members: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def summary(self) -> str:
        return f"grid: {self.agree}/{self.total} agree"


def crosscheck_avrunin_scott(C: PeriodicComplex, D: PeriodicComplex, points: Iterable | None = None, grid: int | None = None, window: int | None = None) -> CrosscheckReport:
    """Compare the ideal-evaluation oracle with the coinvariant oracle pointwise."""
    E = build_E(C, D, window)
    V = annihilator(E)
    pts = list(points) if points is not None else grid_points(E.F, E.c, grid)
    report = CrosscheckReport(len(pts), 0)
    for pt in pts:
        lhs = V.vanishes_at(pt)
        rhs = rank_membership(C, D, pt, E)
        if lhs == rhs:
            report.agree += 1
        else:
            report.disagreements.append((tuple(pt), lhs, rhs))
        if rhs:
            report.members.append(tuple(pt))
    return report


@dataclass
class DadeReport:
    hom_eventually_zero: bool
    variety_is_origin: bool

    @property
    def agree(self) -> bool:
        return self.hom_eventually_zero == self.variety_is_origin


def dade_test(C: PeriodicComplex, D: PeriodicComplex, window: int | None = None) -> DadeReport:
    E = build_E(C, D, window)
    V = annihilator(E)
    S = V.ring
    origin = all(radical_membership(x, V.ideal) for x in S.gens)
    return DadeReport(E.is_zero(), origin)


# --- finite generation ---------------------------------------------------


@dataclass
class GenerationReport:
    degree: int  # every E_i with i > degree is generated from E_{i-2}
    window: int
    failures: list  # degrees i in the window where E_i != Σ χ_k E_{i-2}


def finite_generation_report(C: PeriodicComplex, D: PeriodicComplex, window: int | None = None, E: GradedHomModule | None = None) -> GenerationReport:
    E = E or build_E(C, D, window)
    F = E.F
    failures = []
    for i in range(E.window + 1):
        r = E.residue(i)
        if E.dims[r] == 0:
            continue
        if i < 2:
            failures.append(i)
            continue
        prev = E.residue(i - 2)
        if E.dims[prev] == 0 or E.c == 0:
            failures.append(i)
            continue
        span = linalg.rank(np.hstack([E.actions[k][prev] for k in range(E.c)]), F)
        if span < E.dims[r]:
            failures.append(i)
    g = max(failures) if failures else 0
    if g > E.window - E.Lp:
        raise StabilizationNotDetected(f"generation not detected within window {E.window}")
    return GenerationReport(g, E.window, failures)


# --- variety calculus ----------------------------------------------------


@dataclass
class CalculusReport:
    checks: dict = field(default_factory=dict)  # name -> bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _grid_set(V: VarietyIdeal, pts) -> frozenset:
    return frozenset(p for p in pts if V.vanishes_at(p))


def variety_calculus_suite(
    C: PeriodicComplex,
    D: PeriodicComplex,
    *,
    k_resolution: PeriodicComplex | None = None,
    alpha: ChainMap | None = None,
    beta: ChainMap | None = None,
    grid: int | None = None,
    window: int | None = None,
) -> CalculusReport:
    """Grid and radical checks of the variety calculus.

    * intersection law ``V(C,D) = V(C,C) ∩ V(D,D)``;
    * with a complete resolution K of k: ``V(K,K) = k^c`` and ``V(C,K) = V(C,C)``;
    * for ``α: C -> C'`` and ``β: D -> D'`` the six cone inclusions.
    """
    F = C.ring.field
    c = C.ring.c
    pts = grid_points(F, c, grid)
    memo: dict = {}

    def V(X, Y):
        key = (id(X), id(Y))
        if key not in memo:
            memo[key] = support_variety(X, Y, window)
        return memo[key]

    rep = CalculusReport()
    vcd, vcc, vdd = V(C, D), V(C, C), V(D, D)
    rep.checks["intersection (grid)"] = _grid_set(vcd, pts) == _grid_set(vcc, pts) & _grid_set(vdd, pts)
    # radical containments: √Ann(C,D) ⊇ Ann(C,C) + Ann(D,D) and conversely
    both = buchberger(vcc.generators + vdd.generators, vcc.ring)
    rep.checks["intersection (radical ⊇)"] = all(radical_membership(g, vcd.ideal) for g in both.generators)
    rep.checks["intersection (radical ⊆)"] = all(radical_membership(g, both) for g in vcd.generators)
    if k_resolution is not None:
        K = k_resolution
        rep.checks["V(K,K) is everything"] = _grid_set(V(K, K), pts) == frozenset(pts)
        rep.checks["V(C,K) = V(C,C)"] = _grid_set(V(C, K), pts) == _grid_set(vcc, pts)
    if alpha is not None:
        Cp = alpha.target
        cone = mapping_cone(alpha)
        a, b, z = (_grid_set(V(X, D), pts) for X in (C, Cp, cone))
        rep.checks["V(C,D) ⊆ V(C',D) ∪ V(Cone α,D)"] = a <= b | z
        rep.checks["V(C',D) ⊆ V(C,D) ∪ V(Cone α,D)"] = b <= a | z
        rep.checks["V(Cone α,D) ⊆ V(C,D) ∪ V(C',D)"] = z <= a | b
        rep.details["cone alpha"] = len(z)
    if beta is not None:
        Dp = beta.target
        cone = mapping_cone(beta)
        a, b, z = (_grid_set(V(C, Y), pts) for Y in (D, Dp, cone))
        rep.checks["V(C,D) ⊆ V(C,D') ∪ V(C,Cone β)"] = a <= b | z
        rep.checks["V(C,D') ⊆ V(C,D) ∪ V(C,Cone β)"] = b <= a | z
        rep.checks["V(C,Cone β) ⊆ V(C,D) ∪ V(C,D')"] = z <= a | b
        rep.details["cone beta"] = len(z)
    return rep
