"""Lifted cones, the tower realizing T, base change S, and the adjunction check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra.matrix import PolyMatrix
from .complexes import (
    PeriodicComplex,
    hom_space,
    is_contractible_over_top,
    make_complex,
    shift,
)
from .errors import RingMismatch, ShapeMismatch, WindowUnsupported
from .operators import eisenbud_operators
from .rings import CIRing


@dataclass
class LiftedCone:
    """``C♯`` over ``Q' = R/(f)`` lifted: ``C♯_n = C_{n-1} ⊕ C_{n-2}`` with
    ``d_n = [[-d̃_{n-1}, -f I], [t̃_{n-1}, d̃_{n-2}]]``."""

    base: PeriodicComplex
    result: PeriodicComplex
    level: int  # index (in the base ring's relation list) of the eliminated f
    relation: object
    lifted_operator: list


def lifted_cone(C: PeriodicComplex, eliminate: int | None = None, t: Sequence[PolyMatrix] | None = None) -> LiftedCone:
    """Lift ``C`` from ``R = Q'/(f)`` to ``Q'`` by eliminating ``R.f[eliminate]``.

    ``t`` overrides the lifted operator ``t̃`` (one matrix per degree mod the
    period); by default it is extracted from ``C``.
    """
    R = C.ring
    k = R.c - 1 if eliminate is None else eliminate
    if not 0 <= k < R.c:
        raise ShapeMismatch(f"no relation with index {k}")
    lower = R.subring([j for j in range(R.c) if j != k])
    f = R.f[k]
    if t is None:
        t_tilde = eisenbud_operators(C).lifted[k]
    else:
        if len(t) != C.period:
            raise ShapeMismatch("need one operator matrix per degree of the period")
        t_tilde = [lower.matrix(m) if not isinstance(m, PolyMatrix) else m for m in t]
    Q = R.Q
    diffs, ranks = [], []
    for n in range(C.period):
        top = [-C.d(n - 1), PolyMatrix.scalar(Q, C.rank(n - 2), -f)]
        bottom = [t_tilde[(n - 1) % C.period], C.d(n - 2)]
        diffs.append(lower.reduce_matrix(PolyMatrix.block([top, bottom])))
        ranks.append(C.rank(n - 1) + C.rank(n - 2))
    name = f"{C.name}#" if C.name else None
    result = make_complex(lower, C.period, ranks, diffs, name)
    return LiftedCone(C, result, k, f, list(t_tilde))


@dataclass
class TowerComplex:
    stages: list = field(default_factory=list)
    final: PeriodicComplex | None = None
    order: tuple = ()

    @property
    def ring(self) -> CIRing:
        return self.final.ring


def t_functor(C: PeriodicComplex, order: Sequence[int] | None = None, stop: int = 0) -> TowerComplex:
    """Eliminate relations in ``order`` (default ascending) until ``stop`` remain."""
    R = C.ring
    c = R.c
    order = tuple(range(c)) if order is None else tuple(order)
    if sorted(order) != list(range(c)):
        raise ShapeMismatch("elimination order must be a permutation of the relations")
    if not 0 <= stop <= c:
        raise ShapeMismatch("stop level must lie in 0..c")
    remaining = list(range(c))
    current = C
    stages = []
    for e in order[: c - stop]:
        stage = lifted_cone(current, remaining.index(e))
        stages.append(stage)
        remaining.remove(e)
        current = stage.result
    return TowerComplex(stages, current, order)


def s_functor(D: PeriodicComplex, ring: CIRing) -> PeriodicComplex:
    """Base change ``D ⊗_Q R``: reduce every differential into ``ring``."""
    if not ring.same_base(D.ring) or not all(ring.is_zero(g) for g in D.ring.f):
        raise RingMismatch("target ring is not a quotient of the complex's ring")
    return D.with_ring(ring)


@dataclass
class AdjunctionReport:
    rows: list  # (i, dim Hom_R(SD, Σ^i C), dim Hom_Q(D, Σ^i TC))

    @property
    def agree(self) -> bool:
        return all(a == b for _, a, b in self.rows)


def adjunction_dim_check(C: PeriodicComplex, D: PeriodicComplex, window: Sequence[int]) -> AdjunctionReport:
    """Compare ``Hom_R(SD, Σ^i C)`` with ``Hom_Q(D, Σ^i TC)`` for i in ``window``.

    The right side needs Hom over the top ring. It is computed directly when
    that ring is Artinian, and is zero when either complex is contractible
    over it; anything else raises :class:`WindowUnsupported`.
    """
    R = C.ring
    # D lives over Q/(f_k : k in kept); eliminate the other relations first
    kept = [k for k, f in enumerate(R.f) if f in D.ring.f]
    if len(kept) != D.ring.c or not R.same_base(D.ring):
        raise RingMismatch("D must live over an intermediate ring Q/(some of the f_k)")
    order = [k for k in range(R.c) if k not in kept] + kept
    TC = t_functor(C, order, stop=len(kept)).final
    SD = s_functor(D, R)
    rows = []
    for i in window:
        left = hom_space(SD, C, i).dim
        if D.ring.artinian:
            right = hom_space(D.with_ring(TC.ring, check=False), TC, i).dim
        elif D.is_zero() or is_contractible_over_top(D) or is_contractible_over_top(shift(TC, i)):
            right = 0
        else:
            raise WindowUnsupported("Hom over a non-Artinian ring is only available for contractible complexes")
        rows.append((i, left, right))
    return AdjunctionReport(rows)
