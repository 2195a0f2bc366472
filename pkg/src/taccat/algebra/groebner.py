"""Division, Buchberger's algorithm and ideal-level predicates."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from itertools import combinations
from pathlib import Path
from typing import Sequence

from ..errors import OrderMismatch, RingMismatch
from .polynomial import (
    PolyRing,
    Polynomial,
    TermOrder,
    _divides,
    _exp_lcm,
    _exp_sub,
)


def _check_ring(ring: PolyRing, polys) -> None:
    for p in polys:
        if p.ring != ring:
            raise RingMismatch(f"{p.ring!r} vs {ring!r}")


def divide_with_cofactors(g: Polynomial, divisors: Sequence[Polynomial]):
    """Multivariate division: ``g = sum(q_i * divisors[i]) + r``.

    The leading term of the running dividend is cancelled by the first divisor
    (in list order) whose leading monomial divides it; otherwise the term moves
    to the remainder. No term of ``r`` is divisible by any divisor's leading
    monomial.
    """
    ring = g.ring
    _check_ring(ring, divisors)
    F = ring.field
    active = [(i, d.lm, d.lc, d) for i, d in enumerate(divisors) if d]
    quot: list[dict] = [dict() for _ in divisors]
    rem: dict = {}
    p = g
    while p:
        lm, lc = p.lm, p.lc
        for i, dlm, dlc, d in active:
            if _divides(dlm, lm):
                shift = _exp_sub(lm, dlm)
                c = F.div(lc, dlc)
                quot[i][shift] = F.add(quot[i].get(shift, F.zero), c)
                p = p - d.mul_term(shift, c)
                break
        else:
            rem[lm] = lc
            p = p - ring.monomial(lm, lc)
    cofactors = [ring.from_terms(q) for q in quot]
    return cofactors, ring.from_terms(rem)


def normal_form(g: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    return divide_with_cofactors(g, basis)[1]


def _spoly(f, g):
    ring = f.ring
    F = ring.field
    lcm = _exp_lcm(f.lm, g.lm)
    return f.mul_term(_exp_sub(lcm, f.lm), F.inv(f.lc)) - g.mul_term(_exp_sub(lcm, g.lm), F.inv(g.lc))


class GroebnerBasis:
    """Reduced Gröbner basis: monic, auto-reduced, sorted by leading monomial."""

    def __init__(self, ring: PolyRing, generators: Sequence[Polynomial]):
        self.ring = ring
        self.order = ring.order
        self.generators = tuple(sorted(generators, key=lambda p: ring.key(p.lm)))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "GroebnerBasis(" + ", ".join(map(str, self.generators)) + ")"

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, self.generators))

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.generators)

    def contains(self, p: Polynomial) -> bool:
        return not self.reduce(p)

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() and g for g in self.generators)

    @property
    def leading_monomials(self) -> list:
        return [g.lm for g in self.generators]

    def strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def _buchberger(gens: Sequence[Polynomial], ring: PolyRing, track: bool):
    """Core loop; optionally tracks each basis element as a combination of ``gens``."""
    n = len(gens)
    zero = ring.zero
    basis: list[Polynomial] = []
    reps: list[list[Polynomial]] = []

    def unit(i):
        return [ring.one if j == i else zero for j in range(n)]

    def reduce_tracked(p, rep):
        # full reduction of p against current basis, carrying the representation
        F = ring.field
        rem_terms: dict = {}
        while p:
            lm, lc = p.lm, p.lc
            for b, rb in zip(basis, reps if track else [None] * len(basis)):
                if _divides(b.lm, lm):
                    shift = _exp_sub(lm, b.lm)
                    c = F.div(lc, b.lc)
                    p = p - b.mul_term(shift, c)
                    if track:
                        rep = [r - x.mul_term(shift, c) for r, x in zip(rep, rb)]
                    break
            else:
                rem_terms[lm] = lc
                p = p - ring.monomial(lm, lc)
        return ring.from_terms(rem_terms), rep

    pairs: list[tuple[int, int]] = []
    for i, g in enumerate(gens):
        if not g:
            continue
        r, rep = reduce_tracked(g, unit(i) if track else None)
        if r:
            basis.append(r)
            reps.append(rep)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))

    while pairs:
        # normal strategy: smallest lcm first
        pairs.sort(key=lambda ij: ring.key(_exp_lcm(basis[ij[0]].lm, basis[ij[1]].lm)))
        i, j = pairs.pop(0)
        fi, fj = basis[i], basis[j]
        lcm = _exp_lcm(fi.lm, fj.lm)
        if all(a == 0 or b == 0 for a, b in zip(fi.lm, fj.lm)):
            continue  # coprime leading monomials
        if any(
            k not in (i, j)
            and _divides(basis[k].lm, lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue  # chain criterion
        s = _spoly(fi, fj)
        rep = None
        if track:
            F = ring.field
            ci = F.inv(fi.lc)
            cj = F.inv(fj.lc)
            si = _exp_sub(lcm, fi.lm)
            sj = _exp_sub(lcm, fj.lm)
            rep = [a.mul_term(si, ci) - b.mul_term(sj, cj) for a, b in zip(reps[i], reps[j])]
        r, rep = reduce_tracked(s, rep)
        if r:
            basis.append(r)
            reps.append(rep)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))

    # minimalize
    keep = []
    for i, b in enumerate(basis):
        if any(
            _divides(basis[j].lm, b.lm) and (basis[j].lm != b.lm or j < i)
            for j in range(len(basis))
            if j != i
        ):
            continue
        keep.append(i)
    basis = [basis[i] for i in keep]
    reps = [reps[i] for i in keep]
    # interreduce and make monic
    out, out_reps = [], []
    F = ring.field
    for k in range(len(basis)):
        others = basis[:k] + basis[k + 1 :]
        other_reps = reps[:k] + reps[k + 1 :]
        p, rep = basis[k], reps[k]
        # reduce non-leading terms against the other elements
        lead = ring.monomial(p.lm, p.lc)
        tail = p - lead
        rem: dict = {}
        while tail:
            lm, lc = tail.lm, tail.lc
            for b, rb in zip(others, other_reps if track else [None] * len(others)):
                if _divides(b.lm, lm):
                    shift = _exp_sub(lm, b.lm)
                    c = F.div(lc, b.lc)
                    tail = tail - b.mul_term(shift, c)
                    if track:
                        rep = [r - x.mul_term(shift, c) for r, x in zip(rep, rb)]
                    break
            else:
                rem[lm] = lc
                tail = tail - ring.monomial(lm, lc)
        p = lead + ring.from_terms(rem)
        inv = F.inv(p.lc)
        out.append(p.scale(inv))
        if track:
            out_reps.append([r.scale(inv) for r in rep])
    order = sorted(range(len(out)), key=lambda k: ring.key(out[k].lm))
    out = [out[k] for k in order]
    if track:
        out_reps = [out_reps[k] for k in order]
    return out, out_reps


# --- optional on-disk cache for plain Buchberger runs ----------------------

class GBCache:
    """Content-addressed store of reduced Gröbner bases (one JSON file per key)."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    @staticmethod
    def key(ring: PolyRing, gens: Sequence[Polynomial]) -> str:
        payload = json.dumps(
            [ring.field.spec, list(ring.names), ring.order.spec, [str(g) for g in gens]]
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def get(self, ring, gens):
        path = self.directory / f"{self.key(ring, gens)}.json"
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        return GroebnerBasis(ring, [ring.parse(s) for s in data["basis"]])

    def put(self, ring, gens, gb: GroebnerBasis) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.directory / f"{self.key(ring, gens)}.json"
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"basis": gb.strings()}, fh)
        os.replace(tmp, path)


_cache: GBCache | None = None


def set_gb_cache(cache: GBCache | None) -> None:
    global _cache
    _cache = cache


def get_gb_cache() -> GBCache | None:
    return _cache


def buchberger(gens: Sequence[Polynomial], ring: PolyRing | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring for an empty generator list")
        ring = gens[0].ring
    _check_ring(ring, gens)
    cache = _cache
    if cache is not None:
        hit = cache.get(ring, gens)
        if hit is not None:
            return hit
    basis, _ = _buchberger(gens, ring, track=False)
    gb = GroebnerBasis(ring, basis)
    if cache is not None:
        cache.put(ring, gens, gb)
    return gb


def buchberger_with_cofactors(gens: Sequence[Polynomial], ring: PolyRing | None = None):
    """Reduced GB plus, for each basis element, its expression in ``gens``."""
    gens = list(gens)
    ring = ring or gens[0].ring
    _check_ring(ring, gens)
    basis, reps = _buchberger(gens, ring, track=True)
    return GroebnerBasis(ring, basis), reps


def ideal_cofactors(g: Polynomial, gens: Sequence[Polynomial], extended=None):
    """Express ``g`` in terms of ``gens``: returns (cofactors, remainder).

    ``g`` is divided by the reduced GB of ``gens`` and the quotients are
    pulled back through the tracked representations, so the remainder is zero
    exactly when ``g`` lies in the ideal. ``extended`` may carry a precomputed
    :func:`buchberger_with_cofactors` result.
    """
    ring = g.ring
    gb, reps = extended or buchberger_with_cofactors(gens, ring)
    quots, rem = divide_with_cofactors(g, list(gb.generators))
    out = [ring.zero] * len(gens)
    for q, rep in zip(quots, reps):
        if q:
            out = [o + q * r for o, r in zip(out, rep)]
    return out, rem


def ideal_equal(I: GroebnerBasis, J: GroebnerBasis) -> bool:
    if I.ring.order != J.ring.order:
        raise OrderMismatch("ideals use different term orders")
    if I.ring != J.ring:
        raise RingMismatch("ideals live in different rings")
    return set(I.generators) == set(J.generators)


def radical_membership(p: Polynomial, I: GroebnerBasis) -> bool:
    """Rabinowitsch test: p ∈ √I iff 1 ∈ I + (1 - t·p) in k[vars, t]."""
    if p.ring != I.ring:
        raise RingMismatch("polynomial and ideal live in different rings")
    if not p:
        return True
    t = "_rabinowitsch"
    big = I.ring.extend([t])
    tt = big.gen(t)
    gens = [big.embed(g) for g in I.generators] + [big.one - tt * big.embed(p)]
    return buchberger(gens, big).is_unit_ideal()


def _contract(gb: GroebnerBasis, big: PolyRing, small: PolyRing, drop: int) -> list:
    """Elements of ``gb`` free of the first ``drop`` extra variables, mapped into ``small``."""
    out = []
    for g in gb.generators:
        if all(e[small.nvars + k] == 0 for e, _ in g.items() for k in range(drop)):
            out.append(small.from_terms({e[: small.nvars]: c for e, c in g.items()}))
    return out


def intersect(I: GroebnerBasis, J: GroebnerBasis) -> GroebnerBasis:
    """I ∩ J via elimination of t from t·I + (1 - t)·J."""
    ring = I.ring
    n = ring.nvars
    big = PolyRing(ring.names + ("_t",), ring.field, TermOrder.elimination(n + 1, [n]))
    t = big.gen(n)
    gens = [t * big.embed(g) for g in I.generators] + [(big.one - t) * big.embed(g) for g in J.generators]
    gb = buchberger(gens, big) if gens else GroebnerBasis(big, [])
    return buchberger(_contract(gb, big, ring, 1), ring) if gb.generators else GroebnerBasis(ring, [])


def ideal_quotient(I: GroebnerBasis, g: Polynomial) -> GroebnerBasis:
    """(I : g) for a single nonzero polynomial g."""
    ring = I.ring
    if not g:
        return GroebnerBasis(ring, [ring.one])
    if I.is_zero_ideal():
        return GroebnerBasis(ring, [])
    meet = intersect(I, buchberger([g], ring))
    return buchberger([h.exact_div(g) for h in meet.generators], ring)


def ideal_sum(I: GroebnerBasis, J: GroebnerBasis) -> GroebnerBasis:
    return buchberger(list(I.generators) + list(J.generators), I.ring)


def ideal_from(gens: Sequence[Polynomial | str], ring: PolyRing) -> GroebnerBasis:
    return buchberger([ring(g) for g in gens], ring)
