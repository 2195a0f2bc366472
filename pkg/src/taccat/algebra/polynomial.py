"""Sparse multivariate polynomials over an exact field.

A polynomial is a map from exponent tuples to nonzero coefficients. Values are
immutable; every arithmetic operation returns a new polynomial in the same
:class:`PolyRing`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping

from ..errors import RingMismatch
from .fields import Field

Exps = tuple

#: Degree of the zero polynomial. Compares below every integer.
ZERO_DEGREE = float("-inf")


@dataclass(frozen=True)
class TermOrder:
    """Monomial order.

    ``precedence`` lists variable indices from most to least significant.
    ``elim`` (only for kind ``"elim"``) is the set of variable indices that are
    eliminated: any monomial involving them beats every monomial free of them.
    """

    kind: str
    precedence: tuple
    elim: frozenset = frozenset()

    @classmethod
    def grevlex(cls, nvars: int) -> "TermOrder":
        return cls("grevlex", tuple(range(nvars - 1, -1, -1)))

    @classmethod
    def lex(cls, nvars: int) -> "TermOrder":
        return cls("lex", tuple(range(nvars - 1, -1, -1)))

    @classmethod
    def elimination(cls, nvars: int, elim: Iterable[int]) -> "TermOrder":
        return cls("elim", tuple(range(nvars - 1, -1, -1)), frozenset(elim))

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order {self.kind!r}")
        if sorted(self.precedence) != list(range(len(self.precedence))):
            raise ValueError("precedence must be a permutation")

    @cached_property
    def key(self) -> Callable[[Exps], tuple]:
        prec = self.precedence
        rev = tuple(reversed(prec))
        if self.kind == "lex":
            return lambda e: tuple(e[i] for i in prec)
        if self.kind == "grevlex":
            return lambda e: (sum(e), tuple(-e[i] for i in rev))
        elim = tuple(sorted(self.elim))
        return lambda e: (sum(e[i] for i in elim), sum(e), tuple(-e[i] for i in rev))

    @property
    def spec(self) -> str:
        return f"{self.kind}:{','.join(map(str, self.precedence))}:{','.join(map(str, sorted(self.elim)))}"


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: Exps, b: Exps) -> Exps:
    return tuple(x - y for x, y in zip(a, b))


def _exp_add(a: Exps, b: Exps) -> Exps:
    return tuple(x + y for x, y in zip(a, b))


def _exp_lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """k[v_1, ..., v_n] with a fixed term order (default grevlex, v_1 < ... < v_n)."""

    def __init__(self, names: Iterable[str], field: Field, order: TermOrder | None = None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.names)
        self.field = field
        self.order = order or TermOrder.grevlex(self.nvars)
        if len(self.order.precedence) != self.nvars:
            raise ValueError("term order does not match the number of variables")
        self.key = self.order.key
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.names, self.field, self.order))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)}; {self.field!r}; {self.order.kind})"

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {self._zero_exp: c} if c != 0 else {})

    def gen(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    @property
    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps: Exps, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exps): c} if c != 0 else {})

    def from_terms(self, terms: Mapping[Exps, object]) -> "Polynomial":
        F = self.field
        out = {}
        for e, c in terms.items():
            c = F(c)
            if c != 0:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatch(f"{x.ring!r} is not {self!r}")
            return x
        if isinstance(x, str):
            from .parse import parse_polynomial

            return parse_polynomial(x, self)
        return self.constant(x)

    def parse(self, text: str) -> "Polynomial":
        from .parse import parse_polynomial

        return parse_polynomial(text, self)

    def with_order(self, order: TermOrder) -> "PolyRing":
        return PolyRing(self.names, self.field, order)

    def extend(self, extra: Iterable[str], order: TermOrder | None = None) -> "PolyRing":
        """Ring with ``extra`` variables appended (they become the most significant)."""
        names = self.names + tuple(extra)
        return PolyRing(names, self.field, order or TermOrder.grevlex(len(names)))

    def embed(self, p: "Polynomial") -> "Polynomial":
        """Image of ``p`` under the inclusion of a ring whose names are a prefix of ours."""
        if p.ring.names != self.names[: p.ring.nvars] or p.ring.field != self.field:
            raise RingMismatch("cannot embed: variable lists are incompatible")
        pad = (0,) * (self.nvars - p.ring.nvars)
        return Polynomial(self, {e + pad: c for e, c in p._terms.items()})


class Polynomial:
    __slots__ = ("ring", "_terms", "_hash", "_lead")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._hash = None
        self._lead = None

    # --- structure -----------------------------------------------------
    def terms(self) -> list:
        """(exponents, coefficient) pairs in decreasing term order."""
        return sorted(self._terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def coefficient(self, exps: Exps):
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring._zero_exp in self._terms)

    def constant_term(self):
        return self._terms.get(self.ring._zero_exp, self.ring.field.zero)

    @property
    def lm(self) -> Exps:
        if self._lead is None:
            if not self._terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lead = max(self._terms, key=self.ring.key)
        return self._lead

    @property
    def lc(self):
        return self._terms[self.lm]

    def degree(self):
        if not self._terms:
            return ZERO_DEGREE
        return max(sum(e) for e in self._terms)

    def min_degree(self):
        if not self._terms:
            return ZERO_DEGREE
        return min(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_components(self) -> dict:
        out: dict = {}
        for e, c in self._terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(out.items())}

    def variables(self) -> set:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    # --- arithmetic ----------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(out.get(e, F.zero), c)
            if s != 0:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _exp_add(e1, e2)
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return Polynomial(self.ring, {e: c for e, c in out.items() if c != 0})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {e: F.mul(x, c) for e, x in self._terms.items()})

    def mul_term(self, exps: Exps, c) -> "Polynomial":
        F = self.ring.field
        if c == 0:
            return self.ring.zero
        return Polynomial(self.ring, {_exp_add(e, exps): F.mul(x, c) for e, x in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division (raises if ``other`` does not divide)."""
        from .groebner import divide_with_cofactors

        (q,), r = divide_with_cofactors(self, [other])
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def evaluate(self, point) -> object:
        F = self.ring.field
        point = [F(v) for v in point]
        total = F.zero
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = F.mul(term, F(v**k))
            total = F.add(total, term)
        return total

    def substitute(self, images) -> "Polynomial":
        """Replace variable i by ``images[i]`` (polynomials of a common target ring)."""
        images = list(images)
        target = images[0].ring if images else self.ring
        total = target.zero
        for e, c in self._terms.items():
            term = target.constant(c)
            for img, k in zip(images, e):
                if k:
                    term = term * img**k
            total = total + term
        return total

    # --- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # --- printing ------------------------------------------------------
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _monomial_str(names, e) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Deterministic text in the session grammar: ``x^2 + 2*y^2``."""
    if p.is_zero():
        return "0"
    F = p.ring.field
    chunks = []
    for e, c in p.terms():
        c = F.signed(c)
        neg = c < 0
        a = -c if neg else c
        mono = _monomial_str(p.ring.names, e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append(("- " if neg else "+ ") + body)
    return " ".join(chunks)
