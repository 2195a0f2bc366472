"""Immutable matrices of polynomials."""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from ..errors import RingMismatch, ShapeMismatch
from .polynomial import PolyRing, Polynomial


class PolyMatrix:
    """A ``rows x cols`` matrix over a :class:`PolyRing`.

    Shapes with zero rows or columns are allowed (maps from or to the zero
    module).
    """

    __slots__ = ("ring", "rows", "cols", "_entries", "_hash")

    def __init__(self, ring: PolyRing, entries: Sequence[Sequence], shape: tuple | None = None):
        self.ring = ring
        ents = tuple(tuple(ring(e) for e in row) for row in entries)
        if shape is None:
            if not ents:
                raise ShapeMismatch("empty matrix needs an explicit shape")
            shape = (len(ents), len(ents[0]))
        self.rows, self.cols = shape
        if len(ents) != self.rows or any(len(r) != self.cols for r in ents):
            raise ShapeMismatch(f"ragged or mis-shaped matrix, expected {shape}")
        self._entries = ents
        self._hash = None

    # --- constructors --------------------------------------------------
    @classmethod
    def zeros(cls, ring: PolyRing, rows: int, cols: int) -> "PolyMatrix":
        z = ring.zero
        return cls(ring, [[z] * cols for _ in range(rows)], (rows, cols))

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def scalar(cls, ring: PolyRing, n: int, c) -> "PolyMatrix":
        c = ring(c)
        return cls(ring, [[c if i == j else ring.zero for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def block(cls, blocks: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        """Assemble a block matrix; blocks in a row share a row count, etc."""
        ring = blocks[0][0].ring
        heights = [row[0].rows for row in blocks]
        widths = [b.cols for b in blocks[0]]
        for i, row in enumerate(blocks):
            if len(row) != len(widths):
                raise ShapeMismatch("block rows have different lengths")
            for j, b in enumerate(row):
                if b.ring != ring:
                    raise RingMismatch("blocks live in different rings")
                if b.rows != heights[i] or b.cols != widths[j]:
                    raise ShapeMismatch(f"block ({i},{j}) has shape {b.shape}")
        out = []
        for i, row in enumerate(blocks):
            for r in range(heights[i]):
                line = []
                for b in row:
                    line.extend(b._entries[r])
                out.append(line)
        return cls(ring, out, (sum(heights), sum(widths)))

    @classmethod
    def diagonal(cls, blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        ring = blocks[0].ring
        grid = [
            [b if i == j else cls.zeros(ring, blocks[i].rows, blocks[j].cols) for j, b in enumerate(blocks)]
            for i in range(len(blocks))
        ]
        return cls.block(grid)

    # --- access --------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._entries[i][j]

    def tolist(self) -> list:
        return [list(r) for r in self._entries]

    def entries(self) -> Iterable:
        for row in self._entries:
            yield from row

    def is_zero(self) -> bool:
        return all(not e for e in self.entries())

    # --- arithmetic ----------------------------------------------------
    def _check(self, other: "PolyMatrix"):
        if other.ring != self.ring:
            raise RingMismatch(f"{other.ring!r} vs {self.ring!r}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return PolyMatrix(
            self.ring,
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._entries, other._entries)],
            self.shape,
        )

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda e: -e)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero
        cols = list(zip(*other._entries)) if other.rows else [()] * other.cols
        out = []
        for row in self._entries:
            line = []
            for col in cols:
                acc = z
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                line.append(acc)
            out.append(line)
        return PolyMatrix(self.ring, out, (self.rows, other.cols))

    def scale(self, c) -> "PolyMatrix":
        c = self.ring(c)
        return self.map(lambda e: e * c)

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: PolyRing | None = None) -> "PolyMatrix":
        ring = ring or self.ring
        return PolyMatrix(ring, [[fn(e) for e in r] for r in self._entries], self.shape)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(c) for c in zip(*self._entries)], (self.cols, self.rows)) if self.rows else PolyMatrix.zeros(self.ring, self.cols, 0)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def submatrix(self, rows: slice, cols: slice) -> "PolyMatrix":
        ents = [list(r[cols]) for r in self._entries[rows]]
        nrows = len(range(*rows.indices(self.rows)))
        ncols = len(range(*cols.indices(self.cols)))
        return PolyMatrix(self.ring, ents, (nrows, ncols))

    # --- comparison / printing -----------------------------------------
    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._entries))
        return self._hash

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in r) + "]" for r in self._entries) + "]"

    def __repr__(self):
        return f"PolyMatrix({self})"
