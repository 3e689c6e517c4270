"""Commuting traces, the reduction lemma, the Engel check, the adjugate
solver and the decomposition of one-variable functional identities.

Every algorithm here certifies its own output symbolically before
returning.  A failed certificate means a proven statement was contradicted,
which can only be an implementation bug, so it raises
:class:`~fidentity.errors.TheoremViolation` with the offending state.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from math import comb
from typing import Optional, Sequence

from .errors import (
    DegreeObstruction,
    InputError,
    InternalInconsistency,
    MismatchedAmbient,
    MismatchedDegrees,
    NotAnIdentity,
    NotCommuting,
    NotDivisible,
    PreconditionFailed,
    TheoremViolation,
)
from .polymat import (
    PolyMatrix,
    adj_standard_form,
    charpoly_data,
    commutator,
    generic_matrix,
    generic_power,
    is_central,
)
from .polyring import Polynomial
from .tracemaps import ScalarPoly, TraceMap, iterated_partial, sandwich

__all__ = [
    "StandardForm",
    "FIDecomposition",
    "is_commuting",
    "standard_form",
    "engel_check",
    "l2_reduce",
    "adjugate_solve",
    "adjugate_power",
    "adjugate_power_form",
    "fi_verify",
    "fi_decompose",
    "determinant",
]


# -- small helpers ----------------------------------------------------------

def _y(n: int) -> PolyMatrix:
    return generic_matrix(n)


def _comm_y(a: PolyMatrix) -> PolyMatrix:
    return commutator(a, _y(a.n))


def _commutes_with_y(a: PolyMatrix) -> bool:
    return _comm_y(a).is_zero()


def _combine(n: int, terms: Sequence[tuple[Polynomial, int]]) -> PolyMatrix:
    """``sum coeff_i * Y**k_i`` for scalar polynomial coefficients."""
    acc = PolyMatrix.zero(n)
    for coeff, k in terms:
        if coeff:
            acc = acc + generic_power(n, k) * coeff
    return acc


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row (fine for the sizes used here)."""
    size = len(rows)
    if size == 1:
        return rows[0][0]

    @functools.lru_cache(maxsize=None)
    def minor(start: int, cols: tuple[int, ...]) -> Polynomial:
        if len(cols) == 1:
            return rows[start][cols[0]]
        acc = Polynomial.zero(rows[0][0].n)
        for pos, c in enumerate(cols):
            entry = rows[start][c]
            if entry:
                sub = minor(start + 1, cols[:pos] + cols[pos + 1:])
                acc = acc + entry * sub if pos % 2 == 0 else acc - entry * sub
        return acc

    return minor(0, tuple(range(size)))


def _cofactors(rows: Sequence[Sequence[Polynomial]]) -> list[list[Polynomial]]:
    size = len(rows)
    if size == 1:
        return [[Polynomial.one(rows[0][0].n)]]
    out = []
    for i in range(size):
        out_row = []
        for j in range(size):
            sub = [[rows[a][b] for b in range(size) if b != j] for a in range(size) if a != i]
            c = determinant(sub)
            out_row.append(c if (i + j) % 2 == 0 else -c)
        out.append(out_row)
    return out


@functools.lru_cache(maxsize=None)
def _moment_system(n: int) -> tuple[Polynomial, tuple[tuple[Polynomial, ...], ...]]:
    """Determinant and cofactors of ``H = (tr Y^(j+k))_{j,k < n}``."""
    h = [[generic_power(n, j + k).trace() for k in range(n)] for j in range(n)]
    det_h = determinant(h)
    if det_h.is_zero():
        raise TheoremViolation("moment matrix of the generic matrix is singular", n=n)
    return det_h, tuple(tuple(r) for r in _cofactors(h))


# -- result types -----------------------------------------------------------

@dataclass(frozen=True)
class StandardForm:
    """``q(x) = sum_{i<n} mu_i(x) x^i`` with ``deg mu_i = d - i``."""

    n: int
    d: int
    coefficients: tuple[ScalarPoly, ...]
    verified: bool = field(default=False, compare=False)

    def reconstruct(self) -> PolyMatrix:
        return _combine(self.n, [(mu.poly, i) for i, mu in enumerate(self.coefficients)])

    def as_map(self) -> TraceMap:
        return TraceMap(self.n, self.d, self.reconstruct())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "coefficients": [mu.to_json() for mu in self.coefficients],
            "verified": self.verified,
        }


@dataclass(frozen=True)
class FIDecomposition:
    """Output of :func:`fi_decompose`.

    ``q_0 = x p_0 + mu_0``, ``q_i = -p_{i-1} x + x p_i + mu_i`` and
    ``q_m = lam adj(x^m) - p_{m-1} x - sum mu_i``; ``lam is None`` is the
    case where the identity's value is zero.
    """

    n: int
    m: int
    d: int
    p: tuple[TraceMap, ...]
    mu: tuple[ScalarPoly, ...]
    lam: Optional[ScalarPoly]
    value: Polynomial
    verified: bool = field(default=False, compare=False)

    @property
    def case(self) -> str:
        return "a" if self.lam is None else "b"

    def reconstruct(self) -> list[PolyMatrix]:
        """Rebuild ``q_0 .. q_m`` from the parts."""
        n, m = self.n, self.m
        y = _y(n)
        out = [y @ self.p[0].body + PolyMatrix.scalar(n, self.mu[0].poly)]
        for i in range(1, m):
            out.append(y @ self.p[i].body - self.p[i - 1].body @ y
                       + PolyMatrix.scalar(n, self.mu[i].poly))
        mu_sum = Polynomial.zero(n)
        for mu in self.mu:
            mu_sum = mu_sum + mu.poly
        last = -(self.p[m - 1].body @ y) - PolyMatrix.scalar(n, mu_sum)
        if self.lam is not None:
            last = last + adjugate_power(n, m) * self.lam.poly
        out.append(last)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "d": self.d,
            "case": self.case,
            "value": self.value.to_json(),
            "p": [p.to_json() for p in self.p],
            "mu": [mu.to_json() for mu in self.mu],
            "lambda": None if self.lam is None else self.lam.to_json(),
            "verified": self.verified,
        }


@functools.lru_cache(maxsize=None)
def adjugate_power(n: int, m: int) -> PolyMatrix:
    """``adj(Y)^m``, which equals ``adj(Y^m)``."""
    return charpoly_data(n).adjugate ** m


# -- commuting maps ---------------------------------------------------------

def is_commuting(q: TraceMap) -> bool:
    return _commutes_with_y(q.body)


def standard_form(q: TraceMap) -> StandardForm:
    """Coefficients ``mu_i`` with ``q = sum mu_i x^i`` for a commuting ``q``.

    Solves ``sum_i mu_i tr(Y^(i+j)) = tr(q Y^j)`` (j < n) by Cramer's rule;
    each numerator is divided exactly by the moment determinant.
    """
    if not is_commuting(q):
        raise NotCommuting("[q(x), x] is not identically zero")
    n, d = q.n, q.d
    det_h, cof = _moment_system(n)
    rhs = [(q.body @ generic_power(n, j)).trace() for j in range(n)]
    coeffs = []
    for i in range(n):
        num = Polynomial.zero(n)
        for j in range(n):
            if rhs[j]:
                num = num + rhs[j] * cof[j][i]
        try:
            mu = num.exact_divide(det_h)
        except NotDivisible:
            raise InternalInconsistency(
                "Cramer numerator not divisible by the moment determinant",
                q=q, index=i) from None
        if not mu.is_homogeneous(d - i):
            raise InternalInconsistency("standard-form coefficient has the wrong degree",
                                        q=q, index=i, mu=mu)
        coeffs.append(ScalarPoly(n, d - i, mu))
    form = StandardForm(n, d, tuple(coeffs))
    if form.reconstruct() != q.body:
        raise InternalInconsistency("standard form does not reconstruct q", q=q, form=form)
    return StandardForm(n, d, tuple(coeffs), verified=True)


def engel_check(s: TraceMap) -> Optional[StandardForm]:
    """``None`` if ``[[s, x], x] != 0``; otherwise the standard form of ``s``."""
    inner = _comm_y(s.body)
    if not _comm_y(inner).is_zero():
        return None
    if not inner.is_zero():
        raise TheoremViolation("[[s,x],x] = 0 but [s,x] != 0", s=s, commutator=inner)
    return standard_form(s)


# -- reduction lemma --------------------------------------------------------

def _equiv(a: PolyMatrix, b: PolyMatrix) -> bool:
    """``a == b`` modulo maps commuting with x."""
    return _commutes_with_y(a - b)


def l2_reduce(q: TraceMap, r: TraceMap, *, debug: bool = False) -> TraceMap:
    """From ``[q(x)x - x r(x), x] = 0`` build ``p`` with ``[[q - xp, x], x] = 0``.

    ``p = sum_{i=1}^{d} (-1)^(i-1) C(d, i) r_i(x) x^(i-1)`` where ``r_i`` is
    the i-th iterated partial of ``r``.  With ``debug=True`` the intermediate
    congruences linking the partials of q and r are asserted too.
    """
    if q.n != r.n:
        raise MismatchedAmbient("q and r live over different n")
    if q.d != r.d:
        raise MismatchedDegrees(f"q has degree {q.d}, r has degree {r.d}")
    d, n = q.d, q.n
    if d < 1:
        raise InputError("l2_reduce needs degree >= 1")
    y = _y(n)
    if not _commutes_with_y(q.body @ y - y @ r.body):
        raise PreconditionFailed("[q(x)x - x r(x), x] is not identically zero")

    r_parts = [r]
    for _ in range(d):
        r_parts.append(iterated_partial(r_parts[-1], 1))
    body = PolyMatrix.zero(n)
    for i in range(1, d + 1):
        term = r_parts[i].body @ generic_power(n, i - 1) * comb(d, i)
        body = body + term if i % 2 else body - term
    p = TraceMap(n, d - 1, body)

    if debug:
        _check_l2_intermediates(q, r, r_parts)
    residual = q.body - y @ p.body
    if not _comm_y(_comm_y(residual)).is_zero():
        raise TheoremViolation("[[q - xp, x], x] != 0 after reduction", q=q, r=r, p=p)
    return p


def _check_l2_intermediates(q: TraceMap, r: TraceMap, r_parts: list[TraceMap]) -> None:
    d, n = q.d, q.n
    y = _y(n)
    q_parts = [q]
    for _ in range(d):
        q_parts.append(iterated_partial(q_parts[-1], 1))
    for t in range(d):
        lhs = q_parts[t + 1].body @ y * (d - t) + q_parts[t].body * (t + 1)
        rhs = y @ r_parts[t + 1].body * (d - t) + r_parts[t].body * (t + 1)
        if not _equiv(lhs, rhs):
            raise TheoremViolation("partials of q and r violate the shifted congruence",
                                   q=q, r=r, t=t)
    bracket = _comm_y(q.body)
    running = PolyMatrix.zero(n)
    for t in range(1, d + 1):
        c = comb(d, t)
        term = y @ _comm_y(r_parts[t].body) @ generic_power(n, t - 1) * c
        running = running + term if t % 2 else running - term
        head = y @ (q_parts[t].body - r_parts[t].body) @ generic_power(n, t) * c
        rhs = running + head if t % 2 else running - head
        if not _equiv(bracket, rhs):
            raise TheoremViolation("telescoped congruence for [q(x), x] fails", q=q, r=r, t=t)


# -- adjugate solver --------------------------------------------------------

def adjugate_solve(q: TraceMap, m: int) -> Optional[ScalarPoly]:
    """Solve ``q(x) x^m in k``: return ``lam`` with ``q = lam adj(x^m)``.

    ``None`` when ``q`` is the zero map.
    """
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    n, d = q.n, q.d
    alpha = is_central(q.body @ generic_power(n, m))
    if alpha is None:
        raise NotAnIdentity(f"q(x) x^{m} is not central")
    if q.is_zero():
        return None
    lam_degree = d - m * (n - 1)
    if lam_degree < 0:
        raise DegreeObstruction(f"nonzero solution with d={d} < m(n-1)={m * (n - 1)}",
                                q=q, m=m)
    det_m = charpoly_data(n).determinant ** m
    try:
        lam = alpha.exact_divide(det_m)
    except NotDivisible:
        raise TheoremViolation("det(Y)^m does not divide the central value", q=q, m=m,
                               alpha=alpha) from None
    if not lam.is_homogeneous(lam_degree) or q.body != adjugate_power(n, m) * lam:
        raise TheoremViolation("q is not lam * adj(x^m)", q=q, m=m, lam=lam)
    return ScalarPoly(n, lam_degree, lam)


@functools.lru_cache(maxsize=None)
def adjugate_power_form(n: int, m: int) -> tuple[Polynomial, ...]:
    """``nu_0 .. nu_{n-1}`` with ``adj(Y)^m = sum nu_i Y^i``.

    Powers of ``sum tau_i t^i`` are reduced modulo the characteristic
    polynomial (monic, so ``t^n = -sum_{k<n} c_k t^k``).
    """
    tau = list(adj_standard_form(n))
    c = charpoly_data(n).coefficients
    zero = Polynomial.zero(n)

    def reduce(poly: list[Polynomial]) -> list[Polynomial]:
        poly = list(poly)
        for top in range(len(poly) - 1, n - 1, -1):
            lead = poly[top]
            if lead:
                for k in range(n):
                    poly[top - n + k] = poly[top - n + k] - lead * c[k]
        return (poly + [zero] * n)[:n]

    acc = [Polynomial.one(n)] + [zero] * (n - 1)
    for _ in range(m):
        prod = [zero] * (2 * n - 1)
        for i, a in enumerate(acc):
            if a:
                for j, b in enumerate(tau):
                    if b:
                        prod[i + j] = prod[i + j] + a * b
        acc = reduce(prod)
    return tuple(acc)


# -- functional identities --------------------------------------------------

def _common_shape(q_list: Sequence[TraceMap]) -> tuple[int, int, int]:
    if len(q_list) < 2:
        raise InputError("need q_0 .. q_m with m >= 1")
    n = q_list[0].n
    d = q_list[0].d
    for q in q_list:
        if q.n != n:
            raise MismatchedAmbient("maps live over different n")
        if q.d != d:
            raise MismatchedDegrees(f"maps have degrees {[q.d for q in q_list]}")
    return n, len(q_list) - 1, d


def _identity_body(q_list: Sequence[TraceMap]) -> PolyMatrix:
    n, m, _ = _common_shape(q_list)
    acc = PolyMatrix.zero(n)
    for i, q in enumerate(q_list):
        acc = acc + sandwich(q, i, m - i).body
    return acc


def fi_verify(q_list: Sequence[TraceMap]) -> Optional[Polynomial]:
    """The central value of ``sum x^i q_i(x) x^(m-i)``, or ``None``."""
    return is_central(_identity_body(q_list))


def certify(q_list: Sequence[TraceMap], dec: FIDecomposition) -> FIDecomposition:
    """Check every identity of ``dec`` against ``q_list``; return it marked verified."""
    n, m, d = _common_shape(q_list)
    rebuilt = dec.reconstruct()
    for i, (got, want) in enumerate(zip(rebuilt, q_list)):
        if got != want.body:
            raise TheoremViolation(f"decomposition does not reproduce q_{i}",
                                   q_list=list(q_list), decomposition=dec)
    det_m = charpoly_data(n).determinant ** m
    lam_poly = Polynomial.zero(n) if dec.lam is None else dec.lam.poly
    if dec.value != lam_poly * det_m:
        raise TheoremViolation("identity value is not lam * det(x)^m", decomposition=dec)
    return FIDecomposition(dec.n, dec.m, dec.d, dec.p, dec.mu, dec.lam, dec.value, verified=True)


def fi_decompose(q_list: Sequence[TraceMap], *, debug: bool = False) -> FIDecomposition:
    """Decompose maps ``q_0..q_m`` with ``sum x^i q_i x^(m-i)`` central.

    Stage j peels ``h_j = x p_j + mu_j`` off the current head by repeatedly
    applying :func:`l2_reduce` and :func:`engel_check`; the next head is
    ``p_j x + q_{j+1}`` and ``mu_j`` is folded into the last map.  The last
    head is handed to :func:`adjugate_solve`.
    """
    n, m, d = _common_shape(q_list)
    if d < 1:
        raise InputError("fi_decompose needs maps of degree >= 1")
    value = fi_verify(q_list)
    if value is None:
        raise NotAnIdentity("sum x^i q_i(x) x^(m-i) is not central")
    y = _y(n)

    qs = [q.body for q in q_list]  # working copies; mu_j get folded into qs[m]
    head = qs[0]
    beta: list[Polynomial] = [value] + [Polynomial.zero(n)] * (n - 1)
    ps: list[TraceMap] = []
    mus: list[ScalarPoly] = []

    for j in range(m):
        e = m - j
        # head * x^e - x * tail = beta_0, with tail of degree d + e - 1
        tail = PolyMatrix.zero(n)
        for i in range(j + 1, m + 1):
            tail = tail - generic_power(n, i - j - 1) @ qs[i] @ generic_power(n, m - i)
        tail = tail + _combine(n, [(beta[i], i - 1) for i in range(1, n)])
        tail_map = TraceMap(n, d + e - 1, tail)

        const = beta[0]
        while e >= 1:
            lhs = sandwich(TraceMap(n, d, head), 0, e - 1)
            p = l2_reduce(lhs, tail_map, debug=debug)
            s = TraceMap(n, lhs.d, lhs.body - y @ p.body)
            form = engel_check(s)
            if form is None:
                raise TheoremViolation("reduced map fails the Engel condition",
                                       stage=j, head=head, s=s)
            alphas = [mu.poly for mu in form.coefficients]
            tail_map = TraceMap(n, lhs.d - 1,
                                p.body + _combine(n, [(alphas[i], i - 1) for i in range(1, n)]))
            const = alphas[0]
            e -= 1

        p_j, mu_j = tail_map, ScalarPoly(n, d, const)
        if head != y @ p_j.body + PolyMatrix.scalar(n, const):
            raise TheoremViolation("peeling did not produce head = x p + mu", stage=j, head=head,
                                   p=p_j, mu=mu_j)
        ps.append(p_j)
        mus.append(mu_j)

        qs[m] = qs[m] + PolyMatrix.scalar(n, const)
        head = p_j.body @ y + qs[j + 1]
        if j + 1 < m:
            beta = _bracket_standard_form(n, m, d, j + 1, head, qs)

    lam = adjugate_solve(TraceMap(n, d, head), m)
    dec = FIDecomposition(n, m, d, tuple(ps), tuple(mus), lam, value)
    return certify(q_list, dec)


def _bracket_standard_form(n: int, m: int, d: int, j: int, head: PolyMatrix,
                           qs: list[PolyMatrix]) -> list[Polynomial]:
    """Standard-form coefficients of ``T = head x^(m-j) + sum_{i>j} x^(i-j) q_i x^(m-i)``.

    ``x^j T`` is central, so ``T = lam adj(x)^j`` and the coefficients come
    from expanding the adjugate power.
    """
    bracket = head @ generic_power(n, m - j)
    for i in range(j + 1, m + 1):
        bracket = bracket + generic_power(n, i - j) @ qs[i] @ generic_power(n, m - i)
    t_map = TraceMap(n, d + m - j, bracket)
    lam = adjugate_solve(t_map, j)
    if lam is None:
        return [Polynomial.zero(n)] * n
    beta = [lam.poly * nu for nu in adjugate_power_form(n, j)]
    if _combine(n, [(b, i) for i, b in enumerate(beta)]) != bracket:
        raise TheoremViolation("adjugate expansion does not reproduce the bracket",
                               stage=j, bracket=t_map, lam=lam)
    return beta
