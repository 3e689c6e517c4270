"""Traces of multilinear maps on M_n(Q), held as homogeneous polynomial matrices.

A trace ``q(x) = M(x, ..., x)`` of a d-linear map is identified with the
matrix ``q_xi`` obtained by substituting the generic matrix for ``x``; every
entry is then homogeneous of degree d.  The symmetric map ``M`` is never
built.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import InputError, MismatchedAmbient, NotHomogeneous, OutOfRange
from .polymat import PolyMatrix, evaluate, generic_power
from .polyring import Polynomial, RationalLike

__all__ = [
    "TraceMap",
    "ScalarPoly",
    "make_trace_map",
    "partial",
    "iterated_partial",
    "sandwich",
    "scalar_mul_map",
    "product_rule_check",
    "diagonal_derivative",
    "constant_value",
]


@dataclass(frozen=True)
class ScalarPoly:
    """A central map ``x -> poly(x) * 1``; ``poly`` is homogeneous of degree d."""

    n: int
    d: int
    poly: Polynomial

    def __post_init__(self):
        if self.poly.n != self.n:
            raise MismatchedAmbient(f"polynomial lives over n={self.poly.n}, expected {self.n}")
        if self.d < 0 and self.poly:
            raise InputError("a nonzero scalar map needs a non-negative degree")
        if not self.poly.is_homogeneous(self.d):
            raise NotHomogeneous(f"scalar map is not homogeneous of degree {self.d}: {self.poly}")

    @classmethod
    def zero(cls, n: int, d: int = 0) -> "ScalarPoly":
        return cls(n, d, Polynomial.zero(n))

    @classmethod
    def constant(cls, n: int, value: RationalLike) -> "ScalarPoly":
        return cls(n, 0, Polynomial.constant(n, value))

    @classmethod
    def of(cls, poly: Polynomial) -> "ScalarPoly":
        """Wrap a homogeneous polynomial, inferring the degree (0 for zero)."""
        degs = poly.degrees()
        if len(degs) > 1:
            raise NotHomogeneous(f"mixed degrees {sorted(degs)} in {poly}")
        return cls(poly.n, degs.pop() if degs else 0, poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def as_map(self) -> "TraceMap":
        """The same map viewed as matrix-valued (``poly * I``)."""
        return TraceMap(self.n, self.d, PolyMatrix.scalar(self.n, self.poly))

    def __mul__(self, other: "ScalarPoly") -> "ScalarPoly":
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return ScalarPoly(self.n, self.d + other.d, self.poly * other.poly)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "poly": self.poly.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "ScalarPoly":
        n = int(data["n"])
        return cls(n, int(data["d"]), Polynomial.from_json(n, data["poly"]))

    def __str__(self) -> str:
        return str(self.poly)


@dataclass(frozen=True)
class TraceMap:
    """A matrix-valued trace map of homogeneity degree ``d``."""

    n: int
    d: int
    body: PolyMatrix

    def __post_init__(self):
        if self.body.n != self.n:
            raise MismatchedAmbient(f"body is {self.body.n}x{self.body.n}, expected n={self.n}")
        if self.d < 0:
            raise InputError(f"degree must be non-negative, got {self.d}")
        for p in self.body.entries():
            if not p.is_homogeneous(self.d):
                raise NotHomogeneous(f"entry {p} is not homogeneous of degree {self.d}")

    @classmethod
    def zero(cls, n: int, d: int = 0) -> "TraceMap":
        return cls(n, d, PolyMatrix.zero(n))

    @classmethod
    def power(cls, n: int, k: int) -> "TraceMap":
        """``x -> x**k``."""
        return cls(n, k, generic_power(n, k))

    @classmethod
    def of(cls, body: PolyMatrix) -> "TraceMap":
        """Wrap a body, inferring its degree (0 for the zero matrix)."""
        degs = set()
        for p in body.entries():
            degs |= p.degrees()
        if len(degs) > 1:
            raise NotHomogeneous(f"entries mix degrees {sorted(degs)}")
        return cls(body.n, degs.pop() if degs else 0, body)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def _same_n(self, other) -> None:
        if other.n != self.n:
            raise MismatchedAmbient(f"maps live over n={self.n} and n={other.n}")

    def __add__(self, other: "TraceMap") -> "TraceMap":
        self._same_n(other)
        if self.d != other.d and not (self.is_zero() or other.is_zero()):
            raise NotHomogeneous(f"cannot add maps of degree {self.d} and {other.d}")
        d = other.d if self.is_zero() else self.d
        return TraceMap(self.n, d, self.body + other.body)

    def __neg__(self) -> "TraceMap":
        return TraceMap(self.n, self.d, -self.body)

    def __sub__(self, other: "TraceMap") -> "TraceMap":
        return self + (-other)

    def __matmul__(self, other: "TraceMap") -> "TraceMap":
        """Pointwise product ``x -> q(x) q'(x)``."""
        self._same_n(other)
        return TraceMap(self.n, self.d + other.d, self.body @ other.body)

    def scale(self, c: RationalLike) -> "TraceMap":
        return TraceMap(self.n, self.d, self.body * c)

    def with_degree(self, d: int) -> "TraceMap":
        """Re-declare the degree; only meaningful for the zero map or a no-op."""
        return TraceMap(self.n, d, self.body)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "body": self.body.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "TraceMap":
        n = int(data["n"])
        return cls(n, int(data["d"]), PolyMatrix.from_json(n, data["body"]))

    def __str__(self) -> str:
        return str(self.body)


def make_trace_map(n: int, d: int, body: PolyMatrix) -> TraceMap:
    return TraceMap(n, d, body)


def diagonal_derivative(p: Polynomial) -> Polynomial:
    """Directional derivative along the identity: ``sum_i dp/dx_ii``."""
    acc = Polynomial.zero(p.n)
    for i in range(1, p.n + 1):
        acc = acc + p.partial_derivative((i, i))
    return acc


def partial(q: TraceMap) -> TraceMap:
    """``q -> M(x, ..., x, 1)``, computed as the derivative along 1 divided by d.

    A degree-0 (constant) map goes to the zero map of degree 0.
    """
    if q.d == 0:
        return TraceMap.zero(q.n, 0)
    scale = mpq(1, q.d)
    return TraceMap(q.n, q.d - 1, q.body.map(lambda p: diagonal_derivative(p).scale(scale)))


def iterated_partial(q: TraceMap, t: int) -> TraceMap:
    if not isinstance(t, int) or not 0 <= t <= q.d:
        raise OutOfRange(f"t must lie in 0..{q.d}, got {t!r}")
    for _ in range(t):
        q = partial(q)
    return q


def sandwich(q: TraceMap, left: int, right: int) -> TraceMap:
    """``x -> x**left q(x) x**right``."""
    if left < 0 or right < 0:
        raise OutOfRange("sandwich exponents must be non-negative")
    body = q.body
    if left:
        body = generic_power(q.n, left) @ body
    if right:
        body = body @ generic_power(q.n, right)
    return TraceMap(q.n, q.d + left + right, body)


def scalar_mul_map(mu: ScalarPoly, q: TraceMap) -> TraceMap:
    if mu.n != q.n:
        raise MismatchedAmbient(f"scalar map over n={mu.n}, trace map over n={q.n}")
    return TraceMap(q.n, mu.d + q.d, q.body * mu.poly)


def product_rule_check(q: TraceMap, q2: TraceMap) -> bool:
    """Check ``d(qq') = d/(d+d') dq q' + d'/(d+d') q dq'`` exactly."""
    d, d2 = q.d, q2.d
    if d < 1 or d2 < 1:
        raise OutOfRange("product rule needs both degrees >= 1")
    lhs = partial(q @ q2).body
    rhs = (partial(q).body @ q2.body) * mpq(d, d + d2) + (q.body @ partial(q2).body) * mpq(d2, d + d2)
    return lhs == rhs


def constant_value(q: TraceMap) -> PolyMatrix:
    """``q(1)``: the body evaluated at the identity matrix, as a constant matrix."""
    n = q.n
    return PolyMatrix.from_rationals(
        evaluate(q.body, [[1 if i == j else 0 for j in range(n)] for i in range(n)]))
