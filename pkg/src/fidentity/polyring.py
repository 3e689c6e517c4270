"""Sparse multivariate polynomials over Q in the generic-matrix variables.

The ring is ``Q[x11, x12, ..., xnn]`` with ``n*n`` variables, flat index
``(row - 1) * n + (col - 1)``.  A :class:`Polynomial` is immutable.

Internally a monomial is packed into a single int: the exponent of flat
variable ``k`` occupies bits ``8k .. 8k+7`` and the total degree sits above
all exponent fields.  Multiplying monomials is then integer addition, and
integer comparison is exactly the graded lexicographic order with
``x11 < x12 < ... < xnn`` (degree first, then the exponent of the largest
variable decides).  Coefficients are ``gmpy2.mpq`` (always reduced, positive
denominator); the public API hands out :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from gmpy2 import mpq

from .errors import (
    DivisionByZero,
    InputError,
    InvalidSize,
    MismatchedAmbient,
    MissingAssignment,
    NotDivisible,
)

__all__ = [
    "Polynomial",
    "VarIndex",
    "add",
    "mul",
    "pow",
    "is_homogeneous",
    "partial_derivative",
    "exact_divide",
    "substitute",
    "homogeneous_component",
    "to_rational",
]

RationalLike = Union[int, Fraction, str, "mpq"]

_BITS = 8
_FIELD = (1 << _BITS) - 1
# Exponents stay below 128 so the top bit of every field is free for the
# borrow-free divisibility test in ``_divides``.
_MAX_DEGREE = 127
_ZERO = mpq(0)
_ONE = mpq(1)


class VarIndex(NamedTuple):
    """1-based (row, col) position of a generic-matrix variable."""

    row: int
    col: int

    def flat(self, n: int) -> int:
        if not (1 <= self.row <= n and 1 <= self.col <= n):
            raise InputError(f"variable x{self.row}{self.col} out of range for n={n}")
        return (self.row - 1) * n + (self.col - 1)

    @classmethod
    def from_flat(cls, n: int, k: int) -> "VarIndex":
        return cls(k // n + 1, k % n + 1)


def to_rational(value: RationalLike) -> mpq:
    """Coerce ints, Fractions, mpq or strings like ``"-3/4"`` to mpq."""
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, bool):
        raise InputError("booleans are not rationals")
    if isinstance(value, float):
        raise InputError("floats are not exact; pass a Fraction or string")
    try:
        return mpq(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"not a rational: {value!r}") from exc


def _as_fraction(c: mpq) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class _Layout:
    """Packing parameters for one ambient size n (cached per n)."""

    _cache: dict[int, "_Layout"] = {}

    def __init__(self, n: int):
        self.n = n
        self.nvars = n * n
        self.deg_shift = _BITS * self.nvars
        self.guard = sum(1 << (_BITS * k + _BITS - 1) for k in range(self.nvars))
        self.var_units = [(1 << (_BITS * k)) + (1 << self.deg_shift) for k in range(self.nvars)]

    @classmethod
    def get(cls, n: int) -> "_Layout":
        layout = cls._cache.get(n)
        if layout is None:
            if not isinstance(n, int) or n < 1:
                raise InvalidSize(f"matrix size must be a positive integer, got {n!r}")
            layout = cls._cache.setdefault(n, cls(n))
        return layout

    def pack(self, exponents: Sequence[int]) -> int:
        if len(exponents) != self.nvars:
            raise InputError(f"exponent vector must have length {self.nvars}, got {len(exponents)}")
        key = 0
        for k, e in enumerate(exponents):
            if not isinstance(e, int) or e < 0:
                raise InputError(f"bad exponent {e!r}")
            key += e << (_BITS * k)
        deg = sum(exponents)
        if deg > _MAX_DEGREE:
            raise OverflowError(f"total degree {deg} exceeds {_MAX_DEGREE}")
        return key + (deg << self.deg_shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> (_BITS * k)) & _FIELD for k in range(self.nvars))

    def degree(self, key: int) -> int:
        return key >> self.deg_shift

    def divides(self, small: int, big: int) -> bool:
        g = self.guard
        return ((big | g) - small) & g == g


class Polynomial:
    """Immutable sparse polynomial in the ``n*n`` variables ``x_ij``.

    >>> n = 2
    >>> x11, x12 = Polynomial.var(n, 1, 1), Polynomial.var(n, 1, 2)
    >>> str((x11 - x12) * (x11 + x12))
    '-x12^2 + x11^2'
    """

    __slots__ = ("n", "_t", "_layout", "_hash")

    def __init__(self, n: int, terms: Mapping[Sequence[int], RationalLike] | None = None):
        layout = _Layout.get(n)
        t: dict[int, mpq] = {}
        for exps, c in (terms or {}).items():
            key = layout.pack(tuple(exps))
            t[key] = t.get(key, _ZERO) + to_rational(c)
        self._init(layout, {k: v for k, v in t.items() if v})

    def _init(self, layout: _Layout, t: dict[int, mpq]) -> None:
        self.n = layout.n
        self._layout = layout
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, layout: _Layout, t: dict[int, mpq]) -> "Polynomial":
        # t must already be free of zero coefficients
        obj = cls.__new__(cls)
        obj._init(layout, t)
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(_Layout.get(n), {})

    @classmethod
    def constant(cls, n: int, value: RationalLike) -> "Polynomial":
        c = to_rational(value)
        return cls._raw(_Layout.get(n), {0: c} if c else {})

    @classmethod
    def one(cls, n: int) -> "Polynomial":
        return cls.constant(n, 1)

    @classmethod
    def var(cls, n: int, row: int, col: int) -> "Polynomial":
        layout = _Layout.get(n)
        k = VarIndex(row, col).flat(n)
        return cls._raw(layout, {layout.var_units[k]: _ONE})

    @classmethod
    def monomial(cls, n: int, exponents: Sequence[int], coeff: RationalLike = 1) -> "Polynomial":
        return cls(n, {tuple(exponents): coeff})

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """(exponent vector, coefficient) pairs in ascending canonical order."""
        unpack = self._layout.unpack
        return [(unpack(k), _as_fraction(self._t[k])) for k in sorted(self._t)]

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return _as_fraction(self._t.get(self._layout.pack(tuple(exponents)), _ZERO))

    def constant_value(self) -> Fraction:
        return _as_fraction(self._t.get(0, _ZERO))

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._t:
            return -1
        return self._layout.degree(max(self._t))

    def degrees(self) -> set[int]:
        shift = self._layout.deg_shift
        return {k >> shift for k in self._t}

    def is_homogeneous(self, d: int) -> bool:
        shift = self._layout.deg_shift
        return all(k >> shift == d for k in self._t)

    def variables(self) -> set[VarIndex]:
        used = set()
        unpack = self._layout.unpack
        for k in self._t:
            used.update(i for i, e in enumerate(unpack(k)) if e)
        return {VarIndex.from_flat(self.n, i) for i in used}

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        k = max(self._t)
        return self._layout.unpack(k), _as_fraction(self._t[k])

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.n != self.n:
            raise MismatchedAmbient(f"ambient sizes differ: n={self.n} vs n={other.n}")

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) or type(other) is type(_ONE):
            return Polynomial.constant(self.n, other)
        return None

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for k, c in b.items():
            s = t.get(k, _ZERO) + c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return Polynomial._raw(self._layout, t)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self._layout, {k: -c for k, c in self._t.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: RationalLike) -> "Polynomial":
        c = to_rational(c)
        if not c:
            return Polynomial._raw(self._layout, {})
        return Polynomial._raw(self._layout, {k: v * c for k, v in self._t.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction)) or type(other) is type(_ONE):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        a, b = self._t, other._t
        if not a or not b:
            return Polynomial._raw(self._layout, {})
        if self._layout.degree(max(a)) + self._layout.degree(max(b)) > _MAX_DEGREE:
            raise OverflowError("product degree exceeds packing limit")
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, mpq] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, _ZERO) + ca * cb
        return Polynomial._raw(self._layout, {k: v for k, v in t.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise InputError(f"exponent must be a non-negative integer, got {e!r}")
        result = Polynomial.one(self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        # only division by nonzero rationals; polynomial division is exact_divide
        if isinstance(other, Polynomial):
            return NotImplemented
        c = to_rational(other)
        if not c:
            raise DivisionByZero("division by zero")
        return self.scale(1 / c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._t.items())))
        return self._hash

    # -- calculus and friends ---------------------------------------------

    def partial_derivative(self, v: VarIndex | tuple[int, int]) -> "Polynomial":
        k = VarIndex(*v).flat(self.n)
        layout = self._layout
        shift = _BITS * k
        unit = layout.var_units[k]
        t = {}
        for key, c in self._t.items():
            e = (key >> shift) & _FIELD
            if e:
                t[key - unit] = c * e
        return Polynomial._raw(layout, t)

    def homogeneous_component(self, d: int) -> "Polynomial":
        shift = self._layout.deg_shift
        return Polynomial._raw(self._layout, {k: c for k, c in self._t.items() if k >> shift == d})

    def exact_divide(self, g: "Polynomial") -> "Polynomial":
        """Return ``h`` with ``self == g * h``.

        Long division against the leading monomial of ``g``; a leading term
        of the running remainder that ``LM(g)`` does not divide proves that
        no exact quotient exists.
        """
        self._check(g)
        if not g._t:
            raise DivisionByZero("exact_divide by the zero polynomial")
        layout = self._layout
        lm = max(g._t)
        lc = g._t[lm]
        rest = [(k, c) for k, c in g._t.items() if k != lm]
        r = dict(self._t)
        q: dict[int, mpq] = {}
        while r:
            k = max(r)
            if not layout.divides(lm, k):
                raise NotDivisible("remainder is nonzero")
            qk = k - lm
            qc = r.pop(k) / lc
            q[qk] = qc
            for gk, gc in rest:
                key = gk + qk
                s = r.get(key, _ZERO) - gc * qc
                if s:
                    r[key] = s
                else:
                    r.pop(key, None)
        return Polynomial._raw(layout, q)

    def substitute(self, assignment: Mapping) -> Fraction:
        """Evaluate at a point.

        ``assignment`` maps :class:`VarIndex` (or ``(row, col)`` tuples, or
        flat indices) to rationals; it must cover every variable present.
        """
        n = self.n
        values: dict[int, mpq] = {}
        for key, val in assignment.items():
            flat = key if isinstance(key, int) else VarIndex(*key).flat(n)
            values[flat] = to_rational(val)
        return _as_fraction(self._eval(values))

    def _eval(self, values: Mapping[int, mpq]) -> mpq:
        total = _ZERO
        unpack = self._layout.unpack
        for key, c in self._t.items():
            term = c
            for i, e in enumerate(unpack(key)):
                if e:
                    try:
                        term = term * values[i] ** e
                    except KeyError:
                        raise MissingAssignment(
                            f"no value for x{VarIndex.from_flat(self.n, i).row}"
                            f"{VarIndex.from_flat(self.n, i).col}") from None
            total += term
        return total

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list:
        """Canonical term list ``[[num, den, [exponents...]], ...]``."""
        unpack = self._layout.unpack
        return [
            [str(self._t[k].numerator), str(self._t[k].denominator), list(unpack(k))]
            for k in sorted(self._t)
        ]

    @classmethod
    def from_json(cls, n: int, data: Iterable) -> "Polynomial":
        terms: dict[tuple[int, ...], mpq] = {}
        for num, den, exps in data:
            key = tuple(int(e) for e in exps)
            terms[key] = terms.get(key, _ZERO) + mpq(int(num), int(den))
        return cls(n, terms)

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        return iter(self.terms())

    def __str__(self) -> str:
        if not self._t:
            return "0"
        n = self.n
        parts = []
        for k in sorted(self._t, reverse=True):
            c = self._t[k]
            exps = self._layout.unpack(k)
            factors = []
            for i, e in enumerate(exps):
                if e:
                    name = f"x{i // n + 1}{i % n + 1}"
                    factors.append(name if e == 1 else f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, {self})"


# Functional spellings of the methods above.

def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def pow(f: Polynomial, e: int) -> Polynomial:  # noqa: A001 - mirrors the op name
    return f ** e


def is_homogeneous(f: Polynomial, d: int) -> bool:
    return f.is_homogeneous(d)


def partial_derivative(f: Polynomial, v: VarIndex | tuple[int, int]) -> Polynomial:
    return f.partial_derivative(v)


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.exact_divide(g)


def substitute(f: Polynomial, assignment: Mapping) -> Fraction:
    return f.substitute(assignment)


def homogeneous_component(f: Polynomial, d: int) -> Polynomial:
    return f.homogeneous_component(d)
