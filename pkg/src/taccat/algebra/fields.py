"""Exact scalar fields: the rationals and prime fields F_p (p odd)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """Common interface; concrete fields are :class:`Rationals` and :class:`PrimeField`."""

    characteristic: int
    zero: object
    one: object
    dtype: object

    def __call__(self, x):
        raise NotImplementedError

    def neg(self, a):
        return self(-a)

    def add(self, a, b):
        return self(a + b)

    def sub(self, a, b):
        return self(a - b)

    def mul(self, a, b):
        return self(a * b)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def inv(self, a):
        raise NotImplementedError

    # numpy helpers used by the linear algebra kernel
    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def zeros(self, shape) -> np.ndarray:
        raise NotImplementedError

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr

    def to_scalar(self, x):
        """Convert a numpy array entry back to a canonical field element."""
        return self(x)

    def signed(self, a) -> Fraction | int:
        """Representative used for printing (symmetric range for F_p)."""
        return a


class Rationals(Field):
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)
    dtype = object

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, np.integer)):
            return Fraction(int(x))
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def array(self, data) -> np.ndarray:
        arr = np.array(data, dtype=object)
        if arr.size:
            flat = arr.reshape(-1)
            for k, v in enumerate(flat):
                if not isinstance(v, Fraction):
                    flat[k] = Fraction(v)
        return arr

    def zeros(self, shape) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr

    def elements(self):
        raise ValueError("Q is infinite")

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    @property
    def spec(self) -> str:
        return "Q"


class PrimeField(Field):
    dtype = np.int64

    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p) or p == 2:
            raise ValueError(f"F_p needs an odd prime, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        if isinstance(x, (int, np.integer)):
            return int(x) % self.p
        if isinstance(x, Fraction):
            return (x.numerator % self.p) * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(int(a), -1, self.p)

    def array(self, data) -> np.ndarray:
        return np.array(data, dtype=np.int64) % self.p

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def to_scalar(self, x):
        return int(x) % self.p

    def signed(self, a):
        a = int(a) % self.p
        return a - self.p if a > self.p // 2 else a

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    @property
    def spec(self) -> str:
        return f"Fp {self.p}"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(text: str) -> Field:
    """Parse ``Q`` or ``Fp 7`` (the session-file spelling)."""
    parts = text.split()
    if parts == ["Q"]:
        return QQ
    if len(parts) == 2 and parts[0] == "Fp" and parts[1].isdigit():
        return PrimeField(int(parts[1]))
    raise ValueError(f"unknown field {text!r}")
