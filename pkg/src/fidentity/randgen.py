"""Seeded random sparse inputs.

A random homogeneous polynomial has ``terms`` monomials of the target degree
(default 4) with coefficients drawn from -3..3 without 0.  All draws go
through the given :class:`random.Random`, so a seed reproduces a case
exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .decompose import adjugate_power
from .polymat import PolyMatrix, generic_matrix, generic_power
from .polyring import Polynomial
from .tracemaps import ScalarPoly, TraceMap

COEFFS = (-3, -2, -1, 1, 2, 3)
DEFAULT_TERMS = 4


def random_poly(rng: random.Random, n: int, degree: int, terms: int = DEFAULT_TERMS) -> Polynomial:
    if degree < 0:
        return Polynomial.zero(n)
    nvars = n * n
    out: dict[tuple[int, ...], int] = {}
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(degree):
            exps[rng.randrange(nvars)] += 1
        key = tuple(exps)
        out[key] = out.get(key, 0) + rng.choice(COEFFS)
    return Polynomial(n, out)


def random_nonzero_poly(rng: random.Random, n: int, degree: int,
                        terms: int = DEFAULT_TERMS) -> Polynomial:
    while True:
        p = random_poly(rng, n, degree, terms)
        if p:
            return p


def random_scalar(rng: random.Random, n: int, degree: int, terms: int = DEFAULT_TERMS) -> ScalarPoly:
    return ScalarPoly(n, degree, random_poly(rng, n, degree, terms))


def random_trace_map(rng: random.Random, n: int, d: int, terms: int = DEFAULT_TERMS) -> TraceMap:
    """Every entry an independent sparse form of degree d."""
    rows = [[random_poly(rng, n, d, terms) for _ in range(n)] for _ in range(n)]
    return TraceMap(n, d, PolyMatrix(rows))


def random_sparse_trace_map(rng: random.Random, n: int, d: int,
                            terms: int = DEFAULT_TERMS) -> TraceMap:
    """``terms`` random (entry, monomial) pairs; the rest of the matrix is zero."""
    z = Polynomial.zero(n)
    rows = [[z] * n for _ in range(n)]
    for _ in range(terms):
        i, j = rng.randrange(n), rng.randrange(n)
        rows[i][j] = rows[i][j] + random_poly(rng, n, d, 1)
    return TraceMap(n, d, PolyMatrix(rows))


def random_standard_coefficients(rng: random.Random, n: int, d: int,
                                 terms: int = DEFAULT_TERMS) -> list[ScalarPoly]:
    """``mu_0 .. mu_{n-1}`` with ``deg mu_i = d - i`` (zero when negative)."""
    return [ScalarPoly(n, d - i, random_poly(rng, n, d - i, terms)) for i in range(n)]


def standard_map(coeffs: list[ScalarPoly], d: int) -> TraceMap:
    n = coeffs[0].n
    body = PolyMatrix.zero(n)
    for i, mu in enumerate(coeffs):
        if mu.poly:
            body = body + generic_power(n, i) * mu.poly
    return TraceMap(n, d, body)


def random_standard_map(rng: random.Random, n: int, d: int, terms: int = DEFAULT_TERMS) -> TraceMap:
    return standard_map(random_standard_coefficients(rng, n, d, terms), d)


def random_l2_pair(rng: random.Random, n: int, d: int) -> tuple[TraceMap, TraceMap]:
    """``q = x p + s``, ``r = p x + s'`` with ``s, s'`` commuting.

    Then ``q x - x r = s x - x s'`` commutes with x.
    """
    y = generic_matrix(n)
    p = random_trace_map(rng, n, d - 1, 2)
    s1 = random_standard_map(rng, n, d, 2)
    s2 = random_standard_map(rng, n, d, 2)
    q = TraceMap(n, d, y @ p.body + s1.body)
    r = TraceMap(n, d, p.body @ y + s2.body)
    return q, r


@dataclass(frozen=True)
class PlantedIdentity:
    """Maps ``q_0..q_m`` built from known parts via the decomposition identities."""

    q_list: tuple[TraceMap, ...]
    p: tuple[TraceMap, ...]
    mu: tuple[ScalarPoly, ...]
    lam: ScalarPoly | None


def planted_identity(rng: random.Random, n: int, m: int, d: int,
                     zero_lambda: bool = False, terms: int = 2) -> PlantedIdentity:
    y = generic_matrix(n)
    ps = [random_trace_map(rng, n, d - 1, terms) for _ in range(m)]
    mus = [random_scalar(rng, n, d, terms) for _ in range(m)]
    lam_degree = d - m * (n - 1)
    lam = None
    if not zero_lambda and lam_degree >= 0:
        lam = ScalarPoly(n, lam_degree, random_nonzero_poly(rng, n, lam_degree, terms))
    qs = [y @ ps[0].body + PolyMatrix.scalar(n, mus[0].poly)]
    for i in range(1, m):
        qs.append(y @ ps[i].body - ps[i - 1].body @ y + PolyMatrix.scalar(n, mus[i].poly))
    mu_sum = Polynomial.zero(n)
    for mu in mus:
        mu_sum = mu_sum + mu.poly
    last = -(ps[m - 1].body @ y) - PolyMatrix.scalar(n, mu_sum)
    if lam is not None:
        last = last + adjugate_power(n, m) * lam.poly
    qs.append(last)
    return PlantedIdentity(tuple(TraceMap(n, d, q) for q in qs), tuple(ps), tuple(mus), lam)


def random_rational_matrix(rng: random.Random, n: int, bound: int = 5) -> list[list]:
    return [[Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
            for _ in range(n)]
