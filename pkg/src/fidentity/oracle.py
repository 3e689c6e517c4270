"""Brute-force cross-check for :func:`fidentity.decompose.fi_decompose`.

Every coefficient of every unknown map becomes a rational unknown, the
decomposition identities are expanded entry by entry and monomial by
monomial, and the resulting sparse system is solved by fraction-free integer
elimination.  None of the reduction machinery is used, and the adjugate of
``Y^m`` is computed by cofactor expansion instead of the characteristic
polynomial recursion.
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import gcd
from typing import Optional, Sequence

from gmpy2 import mpq

from .decompose import FIDecomposition, _common_shape, certify, determinant, fi_verify
from .errors import InputError, NotAnIdentity, NoSolution
from .polymat import PolyMatrix, generic_matrix
from .polyring import Polynomial
from .tracemaps import ScalarPoly, TraceMap

__all__ = ["fi_decompose_oracle", "solve_sparse_system", "cofactor_adjugate", "monomials"]


def monomials(n: int, degree: int) -> list[Polynomial]:
    """All monic monomials of the given total degree in the ``n*n`` variables."""
    if degree < 0:
        return []
    nvars = n * n
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for v in combo:
            exps[v] += 1
        out.append(Polynomial.monomial(n, exps))
    return out


def cofactor_adjugate(a: PolyMatrix) -> PolyMatrix:
    """Transpose of the cofactor matrix, by Laplace expansion."""
    n = a.n
    if n == 1:
        return PolyMatrix.scalar(1, 1)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            # adj[i][j] = (-1)^(i+j) * minor with row j and column i removed
            sub = [[a[r, c] for c in range(n) if c != i] for r in range(n) if r != j]
            c = determinant(sub)
            row.append(c if (i + j) % 2 == 0 else -c)
        rows.append(row)
    return PolyMatrix(rows)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _integer_row(row: dict[int, mpq], rhs: mpq) -> tuple[dict[int, int], int]:
    den = int(rhs.denominator)
    for c in row.values():
        den = _lcm(den, int(c.denominator))
    irow = {k: int(c * den) for k, c in row.items()}
    return irow, int(rhs * den)


def _primitive(row: dict[int, int], rhs: int) -> tuple[dict[int, int], int]:
    g = abs(rhs)
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return row, rhs
    if g > 1:
        row = {k: c // g for k, c in row.items()}
        rhs //= g
    return row, rhs


def solve_sparse_system(rows: Sequence[dict[int, mpq]], rhs: Sequence[mpq],
                        ncols: int) -> Optional[list[mpq]]:
    """Solve ``rows . x = rhs`` over Q; free unknowns are set to zero.

    Returns ``None`` when the system is inconsistent.  Rows are cleared to
    integers and eliminated by cross-multiplication, dividing out the content
    after every step so the entries stay small.
    """
    pivots: dict[int, tuple[dict[int, int], int]] = {}
    order: list[int] = []
    for row, b in zip(rows, rhs):
        irow, ib = _integer_row(row, b)
        while True:
            hit = next((c for c in irow if c in pivots), None)
            if hit is None:
                break
            prow, pb = pivots[hit]
            f, g = prow[hit], irow[hit]
            new = {k: v * f for k, v in irow.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - g * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            irow, ib = _primitive(new, ib * f - pb * g)
        if not irow:
            if ib:
                return None
            continue
        col = min(irow)
        pivots[col] = (irow, ib)
        order.append(col)

    x = [mpq(0)] * ncols
    for col in reversed(order):
        prow, pb = pivots[col]
        acc = mpq(pb)
        for k, v in prow.items():
            if k != col:
                acc -= v * x[k]
        x[col] = acc / prow[col]
    return x


class _System:
    """Accumulates linear equations keyed by (identity, row, col, monomial)."""

    def __init__(self):
        self.index: dict[tuple, int] = {}
        self.rows: list[dict[int, mpq]] = []
        self.rhs: list[mpq] = []

    def _row(self, key: tuple) -> int:
        idx = self.index.get(key)
        if idx is None:
            idx = self.index[key] = len(self.rows)
            self.rows.append({})
            self.rhs.append(mpq(0))
        return idx

    def add_matrix(self, ident: int, mat: PolyMatrix, column: Optional[int], sign: int = 1):
        for i in range(mat.n):
            for j in range(mat.n):
                for exps, c in mat[i, j].terms():
                    r = self._row((ident, i, j, exps))
                    value = mpq(c.numerator, c.denominator) * sign
                    if column is None:
                        self.rhs[r] += value
                    else:
                        new = self.rows[r].get(column, 0) + value
                        if new:
                            self.rows[r][column] = new
                        else:
                            self.rows[r].pop(column, None)


def fi_decompose_oracle(q_list: Sequence[TraceMap]) -> FIDecomposition:
    """Solve the decomposition identities directly as a linear system."""
    n, m, d = _common_shape(q_list)
    if d < 1:
        raise InputError("fi_decompose_oracle needs maps of degree >= 1")
    value = fi_verify(q_list)
    if value is None:
        raise NotAnIdentity("sum x^i q_i(x) x^(m-i) is not central")

    y = generic_matrix(n)
    adj_m = cofactor_adjugate(y ** m)
    lam_degree = d - m * (n - 1)
    p_monos = monomials(n, d - 1)
    mu_monos = monomials(n, d)
    lam_monos = monomials(n, lam_degree)

    system = _System()
    unknowns: list[tuple] = []

    def new_unknown(tag: tuple) -> int:
        unknowns.append(tag)
        return len(unknowns) - 1

    for k in range(m):
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                unit = PolyMatrix.unit(n, a, b)
                for u_idx, u in enumerate(p_monos):
                    col = new_unknown(("p", k, a - 1, b - 1, u_idx))
                    basis = unit * u
                    # x p_k appears in identity k, -p_k x in identity k+1
                    system.add_matrix(k, y @ basis, col)
                    system.add_matrix(k + 1, basis @ y, col, sign=-1)
        for u_idx, u in enumerate(mu_monos):
            col = new_unknown(("mu", k, u_idx))
            scalar = PolyMatrix.scalar(n, u)
            system.add_matrix(k, scalar, col)
            system.add_matrix(m, scalar, col, sign=-1)
    for u_idx, u in enumerate(lam_monos):
        col = new_unknown(("lam", u_idx))
        system.add_matrix(m, adj_m * u, col)
    for k, q in enumerate(q_list):
        system.add_matrix(k, q.body, None)

    sol = solve_sparse_system(system.rows, system.rhs, len(unknowns))
    if sol is None:
        raise NoSolution("decomposition identities have no rational solution",
                         q_list=list(q_list))

    zero = Polynomial.zero(n)
    p_entries = [[[zero] * n for _ in range(n)] for _ in range(m)]
    mu_polys = [zero] * m
    lam_poly = zero
    for tag, val in zip(unknowns, sol):
        if not val:
            continue
        if tag[0] == "p":
            _, k, a, b, u_idx = tag
            p_entries[k][a][b] = p_entries[k][a][b] + p_monos[u_idx].scale(val)
        elif tag[0] == "mu":
            _, k, u_idx = tag
            mu_polys[k] = mu_polys[k] + mu_monos[u_idx].scale(val)
        else:
            lam_poly = lam_poly + lam_monos[tag[1]].scale(val)

    dec = FIDecomposition(
        n, m, d,
        tuple(TraceMap(n, d - 1, PolyMatrix(rows)) for rows in p_entries),
        tuple(ScalarPoly(n, d, mu) for mu in mu_polys),
        None if lam_poly.is_zero() else ScalarPoly(n, lam_degree, lam_poly),
        value,
    )
    return certify(q_list, dec)
