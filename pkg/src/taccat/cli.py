"""Session files and the ``taccat`` command line.

A session is a line-oriented list of stanzas::

    field Fp 7
    ring vars x y
    ci x^2
    ci y^2
    complex C period 1 ranks 2 ; d[0] = [[x, 3*y], [3*y, -x]]
    map psi : C -> C degree 0 ; psi[0] = [[1, 0], [0, 1]]
    cmd support-variety C C

``#`` starts a comment. A stanza continues onto the next line when that line
is indented, starts with ``;``, or while brackets are unbalanced.
"""

from __future__ import annotations

import argparse
import difflib
import json
import os
import re
import sys
import dataclasses
from dataclasses import dataclass
from math import lcm
from pathlib import Path
from typing import Sequence

from .algebra.fields import QQ, Field, PrimeField, field_from_spec
from .algebra.groebner import GBCache, ideal_equal, set_gb_cache
from .algebra.matrix import PolyMatrix
from .algebra.parse import parse_polynomial
from .algebra.polynomial import PolyRing, Polynomial
from .cones import lifted_cone, t_functor
from .complexes import (
    ChainMap,
    PeriodicComplex,
    check_totally_acyclic,
    hom_space,
    make_chain_map,
    make_complex,
    mapping_cone,
    periodic_hom_dimension,
)
from .errors import ParseError, DuplicateName, StabilizationNotDetected, TaccatError, UndefinedName, UsageError, ValidationError
from .operators import basis_change_operators, eisenbud_operators, verify_operator_commutation
from .rings import CIRing, make_ci_ring
from .varieties import (
    crosscheck_avrunin_scott,
    dade_test,
    finite_generation_report,
    grid_points,
    rank_membership,
    support_variety,
    variety_calculus_suite,
)

DEFAULT_Q_GRID = 5

# command -> argument kinds; "C" a complex, "M" a map, "X" either,
# "i" an integer, "v" trailing integers, "o" trailing key=name options,
# "m" a matrix literal, "k?" an optional integer
COMMANDS = {
    "operators": ("C",),
    "support-variety": ("C", "C"),
    "rank-test": ("C", "C", "v"),
    "crosscheck": ("C", "C"),
    "dade": ("C", "C"),
    "calculus": ("C", "C", "o"),
    "generation": ("C", "C"),
    "hom": ("C", "C", "i"),
    "check": ("X",),
    "cone": ("M",),
    "lifted-cone": ("C", "k?"),
    "tfunctor": ("C",),
    "basis-change": ("C", "m"),
}
CALCULUS_OPTIONS = {"K": "C", "alpha": "M", "beta": "M"}

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")


# --- session data ----------------------------------------------------------


@dataclass
class ComplexDecl:
    name: str
    period: int
    ranks: tuple
    diffs: list  # per degree: rows of Polynomials
    line: int


@dataclass
class MapDecl:
    name: str
    source: str
    target: str
    degree: int
    mats: list
    line: int


@dataclass
class Command:
    name: str
    args: list
    line: int


@dataclass
class Session:
    field: Field = QQ
    names: tuple = ()
    ci: list = dataclasses.field(default_factory=list)
    entries: list = dataclasses.field(default_factory=list)  # ComplexDecl | MapDecl | Command, in order
    _poly_ring: PolyRing | None = None

    @property
    def complexes(self) -> dict:
        return {e.name: e for e in self.entries if isinstance(e, ComplexDecl)}

    @property
    def maps(self) -> dict:
        return {e.name: e for e in self.entries if isinstance(e, MapDecl)}

    @property
    def commands(self) -> list:
        return [e for e in self.entries if isinstance(e, Command)]

    @property
    def poly_ring(self) -> PolyRing:
        if self._poly_ring is None:
            self._poly_ring = PolyRing(self.names, self.field)
        return self._poly_ring


# --- parsing ---------------------------------------------------------------


class _Stanza:
    """A logical line with a map from its columns back to source positions."""

    def __init__(self):
        self.text = ""
        self.spans: list = []  # (start in text, line, column of first char)

    def add(self, text: str, line: int, column: int):
        if self.text:
            self.text += " "
        self.spans.append((len(self.text), line, column))
        self.text += text

    def locate(self, pos: int) -> tuple:
        line, col = self.spans[0][1], self.spans[0][2]
        for start, ln, c0 in self.spans:
            if pos >= start:
                line, col = ln, c0 + pos - start
        return line, col

    @property
    def line(self) -> int:
        return self.spans[0][1]

    def error(self, message: str, pos: int = 0, cls=ParseError):
        line, col = self.locate(pos)
        return cls(message, line, col)


def _stanzas(text: str) -> list:
    out: list = []
    depth = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        stripped = body.lstrip()
        col = len(body) - len(stripped) + 1
        continues = out and (depth > 0 or body[0].isspace() or stripped.startswith(";") or out[-1].text.endswith(";"))
        if not continues:
            out.append(_Stanza())
            depth = 0
        out[-1].add(stripped, lineno, col)
        depth += stripped.count("[") - stripped.count("]")
    return out


def _split_top(text: str, sep: str, base: int) -> list:
    """Split on ``sep`` outside brackets; returns ``(piece, offset)`` pairs."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((text[start:i], base + start))
            start = i + 1
    parts.append((text[start:], base + start))
    return parts


def _strip(piece: str, offset: int) -> tuple:
    lead = len(piece) - len(piece.lstrip())
    return piece.strip(), offset + lead


def _parse_poly(text: str, offset: int, ring: PolyRing, st: _Stanza) -> Polynomial:
    try:
        return parse_polynomial(text, ring)
    except ParseError as exc:
        col = (exc.column or 1) - 1
        raise st.error(str(exc).split(": ", 1)[-1] if exc.line is not None else str(exc), offset + col) from None


def _parse_matrix(text: str, offset: int, ring: PolyRing, st: _Stanza) -> list:
    body, offset = _strip(text, offset)
    if not (body.startswith("[") and body.endswith("]")):
        raise st.error("expected a matrix [[...], ...]", offset)
    inner = body[1:-1]
    rows = []
    for piece, off in _split_top(inner, ",", offset + 1):
        row, off = _strip(piece, off)
        if not (row.startswith("[") and row.endswith("]")):
            raise st.error("expected a row [...]", off)
        entries = []
        for e, eoff in _split_top(row[1:-1], ",", off + 1):
            e, eoff = _strip(e, eoff)
            if not e:
                raise st.error("empty matrix entry", eoff)
            entries.append(_parse_poly(e, eoff, ring, st))
        rows.append(entries)
    widths = {len(r) for r in rows}
    if len(widths) > 1:
        raise st.error("matrix rows have different lengths", offset)
    return rows


def _int(word: str, st: _Stanza, pos: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise st.error(f"expected an integer, got {word!r}", pos) from None


def _words(text: str, base: int) -> list:
    return [(m.group(), base + m.start()) for m in re.finditer(r"\S+", text)]


def _parse_assignments(pieces, letter: str | None, ring, st) -> tuple:
    """``name[k] = matrix`` pieces; returns (symbol, {k: rows})."""
    out = {}
    symbol = None
    for piece, off in pieces:
        piece, off = _strip(piece, off)
        if not piece:
            continue
        m = re.match(r"([A-Za-z_][A-Za-z0-9_']*)\s*\[\s*(-?\d+)\s*\]\s*=", piece)
        if not m:
            raise st.error("expected an assignment NAME[k] = [[...]]", off)
        sym, k = m.group(1), int(m.group(2))
        if letter is not None and sym != letter:
            raise st.error(f"expected {letter}[k], got {sym}[k]", off)
        if symbol is not None and sym != symbol:
            raise st.error(f"mixed matrix names {symbol} and {sym}", off)
        symbol = sym
        if k in out:
            raise st.error(f"{sym}[{k}] given twice", off, DuplicateName)
        out[k] = _parse_matrix(piece[m.end():], off + m.end(), ring, st)
    return symbol, out


def parse_session(text: str) -> Session:
    s = Session()
    defined: set = set()
    have_ring = False
    for st in _stanzas(text):
        words = _words(st.text, 0)
        head, hpos = words[0]
        if head == "field":
            if have_ring or s.entries:
                raise st.error("field must come before the ring", hpos)
            try:
                s.field = field_from_spec(st.text[len("field"):].strip())
            except ValueError as exc:
                raise st.error(str(exc), words[1][1] if len(words) > 1 else hpos) from None
            if isinstance(s.field, PrimeField) and s.field.p < 2:
                raise st.error("field characteristic must be a prime", hpos)
        elif head == "ring":
            if len(words) < 3 or words[1][0] != "vars":
                raise st.error("expected: ring vars NAME ...", hpos)
            if have_ring:
                raise st.error("ring declared twice", hpos, DuplicateName)
            names = [w for w, _ in words[2:]]
            for w, pos in words[2:]:
                if not _NAME.match(w):
                    raise st.error(f"bad variable name {w!r}", pos)
            if len(set(names)) != len(names):
                raise st.error("repeated variable name", hpos, DuplicateName)
            s.names = tuple(names)
            have_ring = True
        elif head == "ci":
            if not have_ring:
                raise st.error("ci before ring", hpos)
            if s.entries:
                raise st.error("ci relations must precede complexes and commands", hpos)
            body, off = _strip(st.text[2:], 2)
            s.ci.append(_parse_poly(body, off, s.poly_ring, st))
        elif head == "complex":
            if not have_ring:
                raise st.error("complex before ring", hpos)
            pieces = _split_top(st.text, ";", 0)
            hdr = _words(*pieces[0])
            if len(hdr) < 6 or hdr[2][0] != "period" or hdr[4][0] != "ranks":
                raise st.error("expected: complex NAME period P ranks r0 ... ; d[k] = [[...]]", hpos)
            name, npos = hdr[1]
            if not _NAME.match(name):
                raise st.error(f"bad name {name!r}", npos)
            if name in defined:
                raise st.error(f"{name} already defined", npos, DuplicateName)
            period = _int(hdr[3][0], st, hdr[3][1])
            if period < 1:
                raise st.error("period must be positive", hdr[3][1])
            ranks = tuple(_int(w, st, p) for w, p in hdr[5:])
            if len(ranks) != period or any(r < 0 for r in ranks):
                raise st.error(f"need {period} nonnegative ranks", hdr[5][1])
            _, diffs = _parse_assignments(pieces[1:], "d", s.poly_ring, st)
            missing = [k for k in range(period) if k not in diffs]
            extra = [k for k in diffs if not 0 <= k < period]
            if missing or extra:
                raise st.error(f"need exactly d[0]..d[{period - 1}]", hpos)
            s.entries.append(ComplexDecl(name, period, ranks, [diffs[k] for k in range(period)], st.line))
            defined.add(name)
        elif head == "map":
            if not have_ring:
                raise st.error("map before ring", hpos)
            pieces = _split_top(st.text, ";", 0)
            m = re.match(r"map\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s+degree\s+(-?\d+)\s*$", pieces[0][0].strip())
            if not m:
                raise st.error("expected: map NAME : C -> D degree i ; psi[k] = [[...]]", hpos)
            name = m.group(1)
            if not _NAME.match(name):
                raise st.error(f"bad name {name!r}", hpos)
            if name in defined:
                raise st.error(f"{name} already defined", hpos, DuplicateName)
            for ref in (m.group(2), m.group(3)):
                if ref not in s.complexes:
                    raise st.error(f"undefined complex {ref}", st.text.find(ref), UndefinedName)
            _, mats = _parse_assignments(pieces[1:], None, s.poly_ring, st)
            if not mats or sorted(mats) != list(range(len(mats))):
                raise st.error("need matrices psi[0]..psi[m-1]", hpos)
            s.entries.append(MapDecl(name, m.group(2), m.group(3), int(m.group(4)), [mats[k] for k in range(len(mats))], st.line))
            defined.add(name)
        elif head == "cmd":
            s.entries.append(_parse_command(st, words, s))
        else:
            hint = difflib.get_close_matches(head, ["field", "ring", "ci", "complex", "map", "cmd"], n=1)
            extra = f"; did you mean '{hint[0]}'?" if hint else ""
            raise st.error(f"unknown stanza {head!r}{extra}", hpos)
    return s


def _parse_command(st: _Stanza, words: list, s: Session) -> Command:
    if len(words) < 2:
        raise st.error("expected: cmd NAME ARGS", words[0][1])
    name, npos = words[1]
    if name not in COMMANDS:
        hint = difflib.get_close_matches(name, list(COMMANDS), n=1)
        extra = f"; did you mean '{hint[0]}'?" if hint else ""
        raise st.error(f"unknown command {name!r}{extra}", npos)
    kinds = COMMANDS[name]
    rest = words[2:]
    args: list = []

    def need_name(word, pos, kind):
        table = {"C": s.complexes, "M": s.maps, "X": {**s.complexes, **s.maps}}[kind]
        if word not in table:
            what = {"C": "complex", "M": "map", "X": "complex or map"}[kind]
            raise st.error(f"undefined {what} {word}", pos, UndefinedName)

    i = 0
    for kind in kinds:
        if kind in ("v", "o", "m"):
            break
        if i >= len(rest):
            if kind == "k?":
                break
            raise st.error(f"{name} needs more arguments", npos)
        word, pos = rest[i]
        if kind in ("C", "M", "X"):
            need_name(word, pos, kind)
            args.append(word)
        else:
            args.append(_int(word, st, pos))
        i += 1
    tail = rest[i:]
    last = kinds[-1]
    if last == "v":
        args.extend(_int(w, st, p) for w, p in tail)
        if not tail:
            raise st.error(f"{name} needs a point", npos)
    elif last == "o":
        for w, p in tail:
            if "=" not in w:
                raise st.error(f"expected KEY=NAME, got {w!r}", p)
            key, val = w.split("=", 1)
            if key not in CALCULUS_OPTIONS:
                raise st.error(f"unknown option {key!r}", p)
            need_name(val, p + len(key) + 1, CALCULUS_OPTIONS[key])
            args.append(f"{key}={val}")
    elif last == "m":
        if not tail:
            raise st.error(f"{name} needs a matrix", npos)
        start = tail[0][1]
        rows = _parse_matrix(st.text[start:], start, s.poly_ring, st)
        args.append(rows)
    elif tail:
        raise st.error(f"too many arguments for {name}", tail[0][1])
    return Command(name, args, st.line)


# --- printing --------------------------------------------------------------


def _fmt_rows(rows) -> str:
    return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in rows) + "]"


def format_session(s: Session) -> str:
    lines = [f"field {s.field.spec}"]
    if s.names:
        lines.append("ring vars " + " ".join(s.names))
    lines += [f"ci {f}" for f in s.ci]
    for e in s.entries:
        if isinstance(e, ComplexDecl):
            ds = " ; ".join(f"d[{k}] = {_fmt_rows(m)}" for k, m in enumerate(e.diffs))
            lines.append(f"complex {e.name} period {e.period} ranks {' '.join(map(str, e.ranks))} ; {ds}")
        elif isinstance(e, MapDecl):
            ms = " ; ".join(f"psi[{k}] = {_fmt_rows(m)}" for k, m in enumerate(e.mats))
            lines.append(f"map {e.name} : {e.source} -> {e.target} degree {e.degree} ; {ms}")
        else:
            args = [_fmt_rows(a) if isinstance(a, list) else str(a) for a in e.args]
            lines.append(" ".join(["cmd", e.name] + args))
    return "\n".join(lines) + "\n"


# --- execution -------------------------------------------------------------


@dataclass
class Options:
    json: bool = False
    window: int | None = None
    grid: int | None = None
    window_escalate: bool = False


class Runner:
    def __init__(self, session: Session, options: Options, out=None):
        self.s = session
        self.opts = options
        self.out = out or sys.stdout
        self.results: list = []
        self._ring: CIRing | None = None
        self._complexes: dict = {}
        self._maps: dict = {}
        self._ops: dict = {}

    # objects are built lazily so that validation errors surface at first use
    @property
    def ring(self) -> CIRing:
        if self._ring is None:
            self._ring = make_ci_ring(self.s.poly_ring, self.s.field, self.s.ci)
        return self._ring

    def complex(self, name: str) -> PeriodicComplex:
        if name not in self._complexes:
            d = self.s.complexes[name]
            diffs = [PolyMatrix(self.s.poly_ring, rows, (len(rows), len(rows[0]) if rows else 0)) for rows in d.diffs]
            self._complexes[name] = make_complex(self.ring, d.period, d.ranks, diffs, name)
        return self._complexes[name]

    def chain_map(self, name: str) -> ChainMap:
        if name not in self._maps:
            m = self.s.maps[name]
            mats = [PolyMatrix(self.s.poly_ring, rows, (len(rows), len(rows[0]) if rows else 0)) for rows in m.mats]
            self._maps[name] = make_chain_map(self.complex(m.source), self.complex(m.target), m.degree, mats, name)
        return self._maps[name]

    def operators(self, name: str):
        if name not in self._ops:
            self._ops[name] = eisenbud_operators(self.complex(name))
        return self._ops[name]

    def grid(self) -> int | None:
        F = self.s.field
        if isinstance(F, PrimeField):
            if self.opts.grid is not None and self.opts.grid != F.p:
                raise UsageError(f"--grid-field {self.opts.grid} does not match the session field F{F.p}")
            return F.p
        return self.opts.grid or DEFAULT_Q_GRID

    def emit(self, lines: list, record: dict):
        if self.opts.json:
            self.results.append(record)
        else:
            for line in lines:
                print(line, file=self.out)

    def run(self) -> int:
        code = 0
        error = None
        try:
            if self.s.ci or self.s.names:
                self.ring  # validate the presentation even without commands
            for e in self.s.entries:
                if isinstance(e, ComplexDecl):
                    self.complex(e.name)
                elif isinstance(e, MapDecl):
                    self.chain_map(e.name)
                else:
                    getattr(self, "cmd_" + e.name.replace("-", "_"))(*e.args)
        except ValidationError as exc:
            code, error = 1, exc
        except UsageError as exc:
            code, error = 2, exc
        except TaccatError as exc:
            code, error = 1, exc
        if self.opts.json:
            doc = {"results": self.results}
            if error is not None:
                doc["error"] = {"type": type(error).__name__, "message": str(error), "exit": code}
            print(json.dumps(doc, indent=2, sort_keys=True), file=self.out)
        if error is not None:
            print(f"error: {type(error).__name__}: {error}", file=sys.stderr)
        return code

    # commands

    def cmd_operators(self, C):
        ops = self.operators(C)
        X = self.complex(C)
        lines, mats = [], {}
        for k in range(ops.c):
            for n in range(X.period):
                lines.append(f"t{k + 1}[{n}] = {ops[k][n]}")
                mats[f"t{k + 1}[{n}]"] = str(ops[k][n])
        report = verify_operator_commutation(ops)
        comm = {}
        for (k, j), strict in sorted(report.strict.items()):
            how = "strictly" if strict else "up to homotopy"
            lines.append(f"t{k + 1} t{j + 1} = t{j + 1} t{k + 1} {how}")
            comm[f"t{k + 1},t{j + 1}"] = "strict" if strict else "homotopy"
        self.emit(lines, {"command": "operators", "complex": C, "operators": mats, "commutation": comm})

    def cmd_support_variety(self, C, D):
        X, Y = self.complex(C), self.complex(D)
        V = support_variety(X, Y, self.opts.window)
        try:
            gen = finite_generation_report(X, Y, V.window).degree
        except StabilizationNotDetected:
            gen = None
        ideal = str(V)
        lines = [f"Ann = {ideal}", f"V = Z{ideal}", f"zero set: {V.describe()}"]
        if V.escalated:
            lines.append(f"note: window escalated to {V.window} before the annihilator stabilized")
        record = {
            "command": "support-variety", "complexes": [C, D], "ideal": V.strings(),
            "window": V.window, "escalated": V.escalated, "generation_degree": gen, "grid_report": None,
        }
        if self.opts.window_escalate:
            esc = self._escalate(X, Y, V)
            record["escalation"] = esc
            lines.append(f"escalated window {esc['window']}: ideal {'changed' if esc['ideal_changed'] else 'unchanged'}")
            for i, (full, p1, p2) in enumerate(zip(esc["hom_dims"], esc["periodic_dims"], esc["periodic_dims_doubled"])):
                flag = "" if full == p1 == p2 else "  <- differs"
                lines.append(f"  Hom({C}, Sigma^{i} {D}): all maps {full}, periodic {p1}, doubled period {p2}{flag}")
        self.emit(lines, record)

    def _escalate(self, X, Y, V) -> dict:
        """Double the window and the period and report what moves."""
        V2 = support_variety(X, Y, 2 * V.window)
        Lp = 2 * lcm(X.period, Y.period)
        return {
            "window": V2.window,
            "ideal": V2.strings(),
            "ideal_changed": not ideal_equal(V.ideal, V2.ideal),
            "hom_dims": [hom_space(X, Y, i).dim for i in range(Lp)],
            "periodic_dims": [periodic_hom_dimension(X, Y, i) for i in range(Lp)],
            "periodic_dims_doubled": [periodic_hom_dimension(X, Y, i, multiple=2) for i in range(Lp)],
        }

    def cmd_rank_test(self, C, D, *point):
        X, Y = self.complex(C), self.complex(D)
        if len(point) != self.ring.c:
            raise UsageError(f"rank-test needs {self.ring.c} coordinates")
        pt = tuple(self.s.field(a) for a in point)
        member = rank_membership(X, Y, pt)
        label = "(" + ", ".join(str(a) for a in point) + ")"
        self.emit([f"rank {label}: {'member' if member else 'not a member'}"],
                  {"command": "rank-test", "complexes": [C, D], "point": list(point), "member": member})

    def cmd_crosscheck(self, C, D):
        rep = crosscheck_avrunin_scott(self.complex(C), self.complex(D), grid=self.grid(), window=self.opts.window)
        lines = [rep.summary()]
        lines += [f"disagree at {pt}: ideal {a}, rank {b}" for pt, a, b in rep.disagreements]
        self.emit(lines, {
            "command": "crosscheck", "complexes": [C, D],
            "grid_report": {"total": rep.total, "agree": rep.agree, "disagreements": [list(map(int, p)) for p, _, _ in rep.disagreements]},
        })

    def cmd_dade(self, C, D):
        rep = dade_test(self.complex(C), self.complex(D), self.opts.window)
        yn = lambda b: "yes" if b else "no"
        lines = [
            f"Hom eventually zero: {yn(rep.hom_eventually_zero)}",
            f"variety is the origin: {yn(rep.variety_is_origin)}",
            f"agree: {yn(rep.agree)}",
        ]
        self.emit(lines, {"command": "dade", "complexes": [C, D], "hom_eventually_zero": rep.hom_eventually_zero,
                          "variety_is_origin": rep.variety_is_origin, "agree": rep.agree})

    def cmd_calculus(self, C, D, *opts):
        kw = dict(o.split("=", 1) for o in opts)
        rep = variety_calculus_suite(
            self.complex(C), self.complex(D),
            k_resolution=self.complex(kw["K"]) if "K" in kw else None,
            alpha=self.chain_map(kw["alpha"]) if "alpha" in kw else None,
            beta=self.chain_map(kw["beta"]) if "beta" in kw else None,
            grid=self.grid(), window=self.opts.window,
        )
        lines = [f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in rep.checks.items()]
        self.emit(lines, {"command": "calculus", "complexes": [C, D], "checks": rep.checks})
        if not rep.ok:
            raise ValidationError("variety calculus check failed")

    def cmd_generation(self, C, D):
        rep = finite_generation_report(self.complex(C), self.complex(D), self.opts.window)
        self.emit([f"generation degree: {rep.degree}"],
                  {"command": "generation", "complexes": [C, D], "generation_degree": rep.degree, "window": rep.window})

    def cmd_hom(self, C, D, i):
        H = hom_space(self.complex(C), self.complex(D), i)
        lines = [f"dim Hom({C}, Sigma^{i} {D}) = {H.dim}"]
        lines += [f"rep {k + 1}: {M}" for k, M in enumerate(H.representatives)]
        self.emit(lines, {"command": "hom", "complexes": [C, D], "degree": i, "dim": H.dim,
                          "representatives": [str(M) for M in H.representatives]})

    def cmd_check(self, name):
        if name in self.s.complexes:
            rep = check_totally_acyclic(self.complex(name))
            where = ", ".join(f"{kind} at degree {n}" for kind, n in rep.witnesses)
            status = "totally acyclic" if rep.totally_acyclic else f"not totally acyclic ({where})"
            self.emit([f"{name}: {status}"], {"command": "check", "name": name, "totally_acyclic": rep.totally_acyclic,
                                              "witnesses": [list(w) for w in rep.witnesses]})
        else:
            psi = self.chain_map(name)
            self.emit([f"{name}: chain map of degree {psi.degree}"],
                      {"command": "check", "name": name, "chain_map": True, "degree": psi.degree})

    def _complex_lines(self, label: str, X: PeriodicComplex) -> list:
        lines = [f"{label}: period {X.period} ranks {' '.join(map(str, X.ranks))}"]
        lines += [f"  d[{n}] = {X.d(n)}" for n in range(X.period)]
        return lines

    def _complex_record(self, X: PeriodicComplex) -> dict:
        return {"period": X.period, "ranks": list(X.ranks), "d": [str(X.d(n)) for n in range(X.period)],
                "relations": [str(f) for f in X.ring.f]}

    def cmd_cone(self, name):
        X = mapping_cone(self.chain_map(name))
        self.emit(self._complex_lines(f"Cone({name})", X), {"command": "cone", "map": name, **self._complex_record(X)})

    def cmd_lifted_cone(self, C, k=None):
        L = lifted_cone(self.complex(C), None if k is None else k - 1)
        rels = ", ".join(str(f) for f in L.result.ring.f) or "0"
        lines = [f"eliminated f{L.level + 1} = {L.relation}; remaining relations: {rels}"]
        lines += self._complex_lines(f"{C}#", L.result)
        self.emit(lines, {"command": "lifted-cone", "complex": C, "eliminated": L.level + 1, **self._complex_record(L.result)})

    def cmd_tfunctor(self, C):
        T = t_functor(self.complex(C))
        lines = [f"stage {s + 1}: ranks {' '.join(map(str, st.result.ranks))}" for s, st in enumerate(T.stages)]
        lines += self._complex_lines(f"T{C}", T.final)
        self.emit(lines, {"command": "tfunctor", "complex": C, "stage_ranks": [list(st.result.ranks) for st in T.stages],
                          **self._complex_record(T.final)})

    def cmd_basis_change(self, C, rows):
        F = self.s.field
        A = [[_constant(e, F) for e in r] for r in rows]
        bc = basis_change_operators(self.operators(C), A)
        X = bc.complex
        lines = ["f' = " + ", ".join(str(f) for f in bc.ring.f)]
        mats = {}
        for k in range(bc.operators.c):
            for n in range(X.period):
                lines.append(f"t'{k + 1}[{n}] = {bc.operators[k][n]}")
                mats[f"t'{k + 1}[{n}]"] = str(bc.operators[k][n])
        lines.append("t'_j ~ sum_i a_ij t_i: verified")
        self.emit(lines, {"command": "basis-change", "complex": C, "relations": [str(f) for f in bc.ring.f],
                          "operators": mats, "verified": True})


def _constant(p: Polynomial, F: Field):
    if not p:
        return F.zero
    if not p.is_constant():
        raise UsageError("basis-change matrix entries must be constants")
    return p.constant_term()


# --- entry point -----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taccat", description="Support and rank varieties of periodic totally acyclic complexes.")
    sub = parser.add_subparsers(dest="action", required=True)
    run = sub.add_parser("run", help="run a session file")
    run.add_argument("file")
    run.add_argument("--json", action="store_true", help="machine-readable output")
    run.add_argument("--window", type=int, help="cohomological window for E")
    run.add_argument("--grid-field", "--field-grid", dest="grid", type=int, help="grid size for crosscheck and calculus")
    run.add_argument("--cache-dir", help="Gröbner basis cache directory (default: $TACCAT_CACHE_DIR)")
    run.add_argument("--window-escalate", action="store_true", help="recompute support varieties at a doubled window and period and report changes")
    run.add_argument("--no-cache", action="store_true", help="disable the Gröbner basis cache")
    return parser


def run_text(text: str, options: Options | None = None, out=None) -> int:
    try:
        session = parse_session(text)
    except ParseError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return Runner(session, options or Options(), out).run()


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cache_dir = args.cache_dir or os.environ.get("TACCAT_CACHE_DIR")
    set_gb_cache(GBCache(cache_dir) if cache_dir and not args.no_cache else None)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return run_text(text, Options(args.json, args.window, args.grid, args.window_escalate))
    finally:
        set_gb_cache(None)


if __name__ == "__main__":
    sys.exit(main())
