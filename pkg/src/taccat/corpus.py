"""Seeded random periodic totally acyclic complexes for property tests.

Rings are ``k[x, y, z]/(l_1^e, ..., l_c^e)`` for linear forms ``l = G x`` with
``G`` invertible (so the ring is a complete intersection isomorphic to a
monomial one). Complexes are built from

* rank-one factorizations ``(l_i^a, l_i^{e-a})`` of a relation,
* tensor products of factorizations (matrix factorizations of ``Σ a_i f_i``),
* diagonal sums (Koszul-type, period one when ``a = e - a``),
* conjugation by unipotent matrices over R (breaks strict commutation of
  the extracted operators),
* contractible summands.

Every output is validated: ``d^2 = 0`` by construction of the complex and
total acyclicity by the exact rank count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import lcm

from .algebra import linalg
from .algebra.fields import Field, GF
from .algebra.matrix import PolyMatrix
from .algebra.polynomial import Polynomial
from .complexes import PeriodicComplex, check_totally_acyclic, make_complex
from .errors import TaccatError
from .rings import CIRing, make_ci_ring

NAMES = ("x", "y", "z")


@dataclass
class CorpusItem:
    ring: CIRing
    complex: PeriodicComplex
    kind: str
    seed: int


def random_ring(rng: random.Random, F: Field, c: int) -> tuple:
    """Returns ``(ring, forms, exponent)`` with ``f_i = forms[i]^exponent``."""
    names = NAMES[:c]
    while True:
        G = [[rng.randrange(F.p) for _ in range(c)] for _ in range(c)]
        if rng.random() < 0.4:
            G = [[int(i == j) for j in range(c)] for i in range(c)]
        if linalg.rank(F.array(G), F) < c:
            continue
        e = rng.choice((2, 3)) if c == 1 else 2
        ring = None
        from .algebra.polynomial import PolyRing

        Q = PolyRing(names, F)
        forms = [sum((Q.gen(j).scale(G[i][j]) for j in range(c)), Q.zero) for i in range(c)]
        try:
            ring = make_ci_ring(Q, F, [l**e for l in forms])
        except TaccatError:
            continue
        return ring, forms, e


def _rank_one(ring: CIRing, form: Polynomial, e: int, a: int, scale=1) -> tuple:
    Q = ring.Q
    return [[form**a * Q.constant(scale)]], [[form ** (e - a)]]


def _tensor(A0, A1, u, v, Q):
    """Tensor a factorization (A0, A1) of g with (u, v) of f: one of g + f."""
    r = len(A0)
    z = Q.zero
    I = lambda s: [[s if i == j else z for j in range(r)] for i in range(r)]
    uI, vI, mu, mv = I(u), I(v), I(-u), I(-v)

    def block(a, b, c, d):
        return [ra + rb for ra, rb in zip(a, b)] + [rc + rd for rc, rd in zip(c, d)]

    D0 = block(A0, uI, mv, A1)
    D1 = block(A1, mu, vI, A0)
    return D0, D1


def _unipotent(rng: random.Random, ring: CIRing, n: int) -> tuple:
    """A random ``I + N`` with N strictly upper triangular, and its inverse."""
    Q = ring.Q
    F = ring.field
    gens = list(Q.gens)
    N = [[Q.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.6:
                c0 = rng.randrange(F.p)
                lin = sum((g.scale(rng.randrange(F.p)) for g in gens), Q.zero)
                N[i][j] = Q.constant(c0) + lin
    Nm = PolyMatrix(Q, N, (n, n))
    I = PolyMatrix.identity(Q, n)
    P = I + Nm
    inv = I
    power = I
    for _ in range(n):
        power = ring.reduce_matrix(power @ (-Nm))
        inv = inv + power
    return ring.reduce_matrix(P), ring.reduce_matrix(inv)


def _conjugate(rng, ring, C: PeriodicComplex) -> PeriodicComplex:
    Ps = [_unipotent(rng, ring, C.rank(n)) for n in range(C.period)]
    diffs = []
    for n in range(C.period):
        P_prev = Ps[(n - 1) % C.period][0]
        P_inv = Ps[n][1]
        diffs.append(ring.reduce_matrix(P_prev @ C.d(n) @ P_inv))
    return make_complex(ring, C.period, C.ranks, diffs)


def _contractible(ring: CIRing) -> PeriodicComplex:
    return make_complex(ring, 1, [2], [[[0, 1], [0, 0]]])


def _sum(ring, pieces) -> PeriodicComplex:
    p = lcm(*(P.period for P in pieces))
    diffs = [PolyMatrix.diagonal([P.d(n) for P in pieces]) for n in range(p)]
    ranks = [sum(P.rank(n) for P in pieces) for n in range(p)]
    return make_complex(ring, p, ranks, diffs)


def random_complex(rng: random.Random, ring: CIRing, forms, e: int, max_rank: int = 4) -> tuple:
    """One candidate complex (not yet checked for total acyclicity)."""
    Q = ring.Q
    F = ring.field
    c = ring.c
    kind = rng.choice(("mf", "koszul", "sum"))
    if kind == "mf":
        k = rng.randint(1, min(c, 3))
        idx = rng.sample(range(c), k)
        a = rng.randint(1, e - 1)
        A0, A1 = _rank_one(ring, forms[idx[0]], e, a, rng.randrange(1, F.p))
        for i in idx[1:]:
            if 2 * len(A0) > max_rank:
                break
            b = rng.randint(1, e - 1)
            s = Q.constant(rng.randrange(1, F.p))
            A0, A1 = _tensor(A0, A1, forms[i] ** b * s, forms[i] ** (e - b), Q)
        r = len(A0)
        C = make_complex(ring, 2, [r, r], [A0, A1])
    elif kind == "koszul":
        r = rng.randint(1, min(max_rank, 3))
        pieces = []
        for _ in range(r):
            i = rng.randrange(c)
            if e % 2 == 0 and rng.random() < 0.7:
                pieces.append(make_complex(ring, 1, [1], [[[forms[i] ** (e // 2)]]]))
            else:
                a = rng.randint(1, e - 1)
                A0, A1 = _rank_one(ring, forms[i], e, a)
                pieces.append(make_complex(ring, 2, [1, 1], [A0, A1]))
        C = _sum(ring, pieces)
    else:
        i, j = rng.randrange(c), rng.randrange(c)
        a = rng.randint(1, e - 1)
        A0, A1 = _rank_one(ring, forms[i], e, a)
        first = make_complex(ring, 2, [1, 1], [A0, A1])
        second = make_complex(ring, 1, [1], [[[forms[j] ** (e // 2)]]]) if e % 2 == 0 else first
        C = _sum(ring, [first, second])
    if rng.random() < 0.5:
        C = _conjugate(rng, ring, C)
        kind += "+conj"
    if max(C.ranks) + 2 <= max_rank and rng.random() < 0.25:
        C = _sum(ring, [C, _contractible(ring)])
        kind += "+contractible"
    return C, kind


def generate(seed: int, count: int, field: Field | None = None, max_c: int = 3, max_rank: int = 4) -> list:
    """``count`` validated corpus items, deterministic in ``seed``."""
    F = field or GF(5)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c = rng.randint(1, max_c)
        ring, forms, e = random_ring(rng, F, c)
        C, kind = random_complex(rng, ring, forms, e, max_rank)
        if check_totally_acyclic(C).totally_acyclic:
            out.append(CorpusItem(ring, C, kind, seed))
    return out


def generate_pairs(seed: int, count: int, field: Field | None = None, max_c: int = 3, max_rank: int = 4) -> list:
    """Pairs ``(C, D)`` of validated complexes over a common ring."""
    F = field or GF(5)
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        c = rng.randint(1, max_c)
        ring, forms, e = random_ring(rng, F, c)
        pair = []
        while len(pair) < 2:
            C, _ = random_complex(rng, ring, forms, e, max_rank)
            if check_totally_acyclic(C).totally_acyclic:
                pair.append(C)
        out.append(tuple(pair))
    return out
