"""Square matrices over the polynomial ring and characteristic-polynomial data."""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from gmpy2 import mpq

from .errors import InputError, InvalidSize, MismatchedAmbient
from .polyring import Polynomial, RationalLike, to_rational

__all__ = [
    "PolyMatrix",
    "CharPolyData",
    "generic_matrix",
    "generic_power",
    "identity",
    "matmul",
    "commutator",
    "trace",
    "faddeev_leverrier",
    "charpoly_data",
    "cayley_hamilton_check",
    "adj_standard_form",
    "is_central",
    "evaluate",
]


class PolyMatrix:
    """Immutable ``n x n`` matrix of :class:`Polynomial` entries (row-major)."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Sequence[Sequence[Polynomial]]):
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise InvalidSize("PolyMatrix needs a non-empty square array")
        for r in rows:
            for p in r:
                if not isinstance(p, Polynomial):
                    raise InputError(f"entries must be Polynomial, got {type(p).__name__}")
                if p.n != n:
                    raise MismatchedAmbient(f"entry lives over n={p.n}, matrix is {n}x{n}")
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def _raw(cls, n: int, rows) -> "PolyMatrix":
        obj = cls.__new__(cls)
        obj.n = n
        obj.rows = rows
        return obj

    @classmethod
    def zero(cls, n: int) -> "PolyMatrix":
        z = Polynomial.zero(n)
        return cls._raw(n, tuple((z,) * n for _ in range(n)))

    @classmethod
    def scalar(cls, n: int, value: Polynomial | RationalLike) -> "PolyMatrix":
        if not isinstance(value, Polynomial):
            value = Polynomial.constant(n, value)
        z = Polynomial.zero(n)
        return cls._raw(n, tuple(tuple(value if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_rationals(cls, rows: Sequence[Sequence[RationalLike]]) -> "PolyMatrix":
        """Embed a constant matrix (e.g. a matrix unit ``E_ij``)."""
        n = len(rows)
        return cls([[Polynomial.constant(n, c) for c in r] for r in rows])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "PolyMatrix":
        """Matrix unit ``E_ij`` (1-based)."""
        return cls.from_rationals([[1 if (a, b) == (i, j) else 0 for b in range(1, n + 1)]
                                   for a in range(1, n + 1)])

    def __getitem__(self, ij: tuple[int, int]) -> Polynomial:
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> Iterable[Polynomial]:
        for r in self.rows:
            yield from r

    def map(self, fn: Callable[[Polynomial], Polynomial]) -> "PolyMatrix":
        return PolyMatrix._raw(self.n, tuple(tuple(fn(p) for p in r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries())

    def _check(self, other: "PolyMatrix") -> None:
        if not isinstance(other, PolyMatrix):
            raise InputError(f"expected PolyMatrix, got {type(other).__name__}")
        if other.n != self.n:
            raise MismatchedAmbient(f"matrix sizes differ: {self.n} vs {other.n}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix._raw(self.n, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        return PolyMatrix._raw(self.n, tuple(
            tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.rows, other.rows)))

    def __neg__(self) -> "PolyMatrix":
        return self.map(lambda p: -p)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check(other)
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = Polynomial.zero(n)
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(tuple(new_row))
        return PolyMatrix._raw(n, tuple(out))

    def __mul__(self, c) -> "PolyMatrix":
        """Scalar multiple by a polynomial or rational (use ``@`` for matmul)."""
        if isinstance(c, PolyMatrix):
            return NotImplemented
        if isinstance(c, Polynomial):
            if c.n != self.n:
                raise MismatchedAmbient("scalar lives over a different n")
            return self.map(lambda p: p * c)
        c = to_rational(c)
        return self.map(lambda p: p.scale(c))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "PolyMatrix":
        if not isinstance(e, int) or e < 0:
            raise InputError(f"matrix exponent must be a non-negative integer, got {e!r}")
        result = PolyMatrix.scalar(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def trace(self) -> Polynomial:
        acc = Polynomial.zero(self.n)
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix._raw(self.n, tuple(zip(*self.rows)))

    def to_json(self) -> list:
        return [[p.to_json() for p in r] for r in self.rows]

    @classmethod
    def from_json(cls, n: int, data) -> "PolyMatrix":
        return cls([[Polynomial.from_json(n, p) for p in r] for r in data])

    def __str__(self) -> str:
        return "[" + ",\n ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix(n={self.n},\n{self})"


def identity(n: int) -> PolyMatrix:
    return PolyMatrix.scalar(n, 1)


@functools.lru_cache(maxsize=None)
def generic_matrix(n: int) -> PolyMatrix:
    """The generic matrix ``Y = (x_ij)``."""
    if not isinstance(n, int) or n < 1:
        raise InvalidSize(f"n must be a positive integer, got {n!r}")
    return PolyMatrix._raw(n, tuple(
        tuple(Polynomial.var(n, i, j) for j in range(1, n + 1)) for i in range(1, n + 1)))


@functools.lru_cache(maxsize=None)
def generic_power(n: int, k: int) -> PolyMatrix:
    """``Y**k``, memoized; each power is built from the previous one."""
    if k < 0:
        raise InputError("negative power")
    if k == 0:
        return identity(n)
    return generic_power(n, k - 1) @ generic_matrix(n)


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return a @ b


def commutator(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """``[a, b] = ab - ba``."""
    return a @ b - b @ a


def trace(a: PolyMatrix) -> Polynomial:
    return a.trace()


@dataclass(frozen=True)
class CharPolyData:
    """Coefficients of ``det(t - A) = sum c_k t^k`` plus adj(A) and det(A)."""

    coefficients: tuple[Polynomial, ...]  # c_0 .. c_n
    adjugate: PolyMatrix
    determinant: Polynomial

    def to_json(self) -> dict:
        return {
            "n": self.adjugate.n,
            "coefficients": [c.to_json() for c in self.coefficients],
            "adjugate": self.adjugate.to_json(),
            "determinant": self.determinant.to_json(),
        }


def faddeev_leverrier(a: PolyMatrix) -> CharPolyData:
    """Characteristic polynomial, adjugate and determinant in one pass.

    Only matrix products, traces and division by 1..n are used, so the
    recursion stays inside the polynomial ring over Q.
    """
    n = a.n
    c: list[Polynomial] = [Polynomial.zero(n)] * (n + 1)
    c[n] = Polynomial.one(n)
    m = PolyMatrix.zero(n)
    for k in range(1, n + 1):
        m = a @ m + PolyMatrix.scalar(n, c[n - k + 1])
        c[n - k] = (a @ m).trace().scale(mpq(-1, k))
    sign = 1 if n % 2 else -1  # (-1)^(n-1)
    adjugate = m * sign
    determinant = c[0] if n % 2 == 0 else -c[0]
    return CharPolyData(tuple(c), adjugate, determinant)


@functools.lru_cache(maxsize=None)
def charpoly_data(n: int) -> CharPolyData:
    """Faddeev-LeVerrier data of the generic matrix, cached per n."""
    return faddeev_leverrier(generic_matrix(n))


def cayley_hamilton_check(a: PolyMatrix) -> bool:
    data = faddeev_leverrier(a)
    n = a.n
    acc = PolyMatrix.zero(n)
    power = identity(n)
    for k in range(n + 1):
        acc = acc + power * data.coefficients[k]
        if k < n:
            power = power @ a
    return acc.is_zero()


def adj_standard_form(n: int) -> tuple[Polynomial, ...]:
    """Scalar coefficients ``tau_0 .. tau_{n-1}`` with ``adj(Y) = sum tau_i Y^i``.

    ``tau_i = (-1)^(n-1) c_{i+1}`` where ``c_k`` are the characteristic
    polynomial coefficients; ``tau_i`` is homogeneous of degree ``n-1-i``.
    """
    c = charpoly_data(n).coefficients
    return tuple(c[i + 1] if n % 2 else -c[i + 1] for i in range(n))


def is_central(a: PolyMatrix) -> Optional[Polynomial]:
    """Return ``alpha`` if ``a == alpha * I``, else ``None``."""
    n = a.n
    alpha = a.rows[0][0]
    for i in range(n):
        for j in range(n):
            p = a.rows[i][j]
            if i == j:
                if p != alpha:
                    return None
            elif p:
                return None
    return alpha


def evaluate(a: PolyMatrix, point: Sequence[Sequence[RationalLike]]) -> list[list[Fraction]]:
    """Substitute ``x_ij -> point[i][j]`` in every entry."""
    n = a.n
    if len(point) != n or any(len(r) != n for r in point):
        raise InvalidSize(f"evaluation point must be {n}x{n}")
    values = {i * n + j: to_rational(point[i][j]) for i in range(n) for j in range(n)}
    return [[Fraction(v.numerator, v.denominator) for v in (p._eval(values) for p in r)]
            for r in a.rows]
