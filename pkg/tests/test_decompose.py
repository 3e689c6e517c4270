import random
from fractions import Fraction

import pytest

from fidentity.decompose import (
    StandardForm,
    adjugate_power,
    adjugate_solve,
    engel_check,
    fi_decompose,
    fi_verify,
    is_commuting,
    l2_reduce,
    standard_form,
)
from fidentity.errors import (
    DegreeObstruction,
    InputError,
    MismatchedDegrees,
    NotAnIdentity,
    NotCommuting,
    PreconditionFailed,
    TheoremViolation,
)
from fidentity.oracle import cofactor_adjugate
from fidentity.polymat import (
    PolyMatrix,
    adj_standard_form,
    charpoly_data,
    commutator,
    evaluate,
    generic_matrix,
    generic_power,
)
from fidentity.polyring import Polynomial
from fidentity.randgen import (
    planted_identity,
    random_l2_pair,
    random_rational_matrix,
    random_scalar,
    random_sparse_trace_map,
    random_standard_coefficients,
    standard_map,
)
from fidentity.tracemaps import ScalarPoly, TraceMap, scalar_mul_map


def y(n=2):
    return generic_matrix(n)


def power(k, n=2):
    return TraceMap.power(n, k)


def tr_x(n=2):
    return ScalarPoly(n, 1, y(n).trace())


def det(n=2):
    return charpoly_data(n).determinant


def adj_map(n=2):
    return TraceMap(n, n - 1, charpoly_data(n).adjugate)


def zero(n=2, d=1):
    return TraceMap.zero(n, d)


def polys(form: StandardForm):
    return [mu.poly for mu in form.coefficients]


def double_commutator(q):
    return commutator(commutator(q.body, y(q.n)), y(q.n))


# -- is_commuting / standard_form -------------------------------------------

def test_is_commuting_examples():
    assert is_commuting(power(2))
    std = scalar_mul_map(tr_x(), power(1)) + TraceMap(2, 2, PolyMatrix.scalar(2, det()))
    assert is_commuting(std)
    assert not is_commuting(TraceMap(2, 1, PolyMatrix.unit(2, 1, 2) @ y()))


def test_standard_form_of_square_2x2():
    form = standard_form(power(2))
    # x^2 = tr(x) x - det(x)
    assert polys(form) == [-det(), y().trace()]
    assert form.verified


def test_standard_form_of_x():
    for n in (1, 2, 3):
        form = standard_form(power(1, n))
        expected = [Polynomial.zero(n)] * n
        expected[1 if n > 1 else 0] = Polynomial.one(n) if n > 1 else Polynomial.var(1, 1, 1)
        assert polys(form) == expected


def test_standard_form_of_adjugate_3x3():
    form = standard_form(adj_map(3))
    assert tuple(polys(form)) == adj_standard_form(3)
    tr1, tr2 = y(3).trace(), (y(3) @ y(3)).trace()
    assert polys(form) == [(tr1 * tr1 - tr2).scale(Fraction(1, 2)), -tr1, Polynomial.one(3)]


def test_standard_form_rejects_non_commuting():
    with pytest.raises(NotCommuting):
        standard_form(TraceMap(2, 1, PolyMatrix.unit(2, 1, 2) @ y()))


@pytest.mark.parametrize("n,d", [(2, 1), (2, 3), (3, 2), (3, 4)])
def test_standard_form_roundtrip(n, d):
    rng = random.Random(f"std:{n}:{d}")
    for _ in range(10):
        coeffs = random_standard_coefficients(rng, n, d)
        form = standard_form(standard_map(coeffs, d))
        assert polys(form) == [mu.poly for mu in coeffs]
        assert [mu.d for mu in form.coefficients] == [d - i for i in range(n)]


# -- engel_check --------------------------------------------------------------

def test_engel_cube_reduces_by_cayley_hamilton():
    form = engel_check(power(3))
    t, dt = y().trace(), det()
    # x^3 = (tr^2 - det) x - tr det
    assert polys(form) == [-(t * dt), t * t - dt]


def test_engel_non_commuting():
    s = TraceMap(2, 3, (PolyMatrix.unit(2, 1, 2) @ y()) * det())
    assert not double_commutator(s).is_zero()
    assert engel_check(s) is None


def test_engel_zero():
    form = engel_check(zero(2, 2))
    assert all(p.is_zero() for p in polys(form))


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_engel_equivalence(n, d):
    rng = random.Random(f"engel:{n}:{d}")
    for k in range(20):
        if k % 2:
            q = standard_map(random_standard_coefficients(rng, n, d), d)
        else:
            q = random_sparse_trace_map(rng, n, d)
        commutes = commutator(q.body, y(n)).is_zero()
        assert double_commutator(q).is_zero() == commutes
        assert (engel_check(q) is not None) == commutes


# -- l2_reduce ----------------------------------------------------------------

def test_l2_square():
    q = power(2)
    p = l2_reduce(q, q, debug=True)
    assert p == power(1)
    assert (q.body - y() @ p.body).is_zero()


def test_l2_trace_times_x():
    q = scalar_mul_map(tr_x(), power(1))
    p = l2_reduce(q, q, debug=True)
    s = q.body - y() @ p.body
    assert double_commutator(TraceMap(2, 2, s)).is_zero()


@pytest.mark.parametrize("n,d", [(2, 1), (2, 2), (2, 3), (3, 2)])
def test_l2_random_pairs(n, d):
    rng = random.Random(f"l2:{n}:{d}")
    for _ in range(5):
        q, r = random_l2_pair(rng, n, d)
        assert commutator(q.body @ y(n) - y(n) @ r.body, y(n)).is_zero()
        p = l2_reduce(q, r, debug=True)
        assert p.d == d - 1
        assert double_commutator(TraceMap(n, d, q.body - y(n) @ p.body)).is_zero()


def test_l2_rejects_bad_hypothesis():
    with pytest.raises(PreconditionFailed):
        l2_reduce(TraceMap(2, 1, PolyMatrix.unit(2, 1, 2) @ y()), power(1))


# -- adjugate_solve -----------------------------------------------------------

def test_adjugate_solve_examples():
    assert adjugate_solve(adj_map(), 1).poly == Polynomial.one(2)
    lam = adjugate_solve(scalar_mul_map(tr_x(), adj_map()), 1)
    assert lam.poly == y().trace() and lam.d == 1
    with pytest.raises(NotAnIdentity):
        adjugate_solve(power(1), 1)
    assert adjugate_solve(zero(2, 3), 2) is None


def test_adjugate_solve_degree_obstruction_is_unreachable_for_identities():
    # q x^2 central forces d >= 2(n-1); x itself fails the centrality test first
    with pytest.raises(NotAnIdentity):
        adjugate_solve(power(1, 3), 2)
    assert issubclass(DegreeObstruction, TheoremViolation)


@pytest.mark.parametrize("n,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_adjugate_solve_recovers_mu(n, m):
    rng = random.Random(f"adj:{n}:{m}")
    adj_ym = cofactor_adjugate(generic_power(n, m))
    assert adjugate_power(n, m) == adj_ym
    for _ in range(5):
        mu = random_scalar(rng, n, rng.randint(0, 2))
        q = TraceMap(n, mu.d + m * (n - 1), adj_ym * mu.poly)
        lam = adjugate_solve(q, m)
        if mu.is_zero():
            assert lam is None
        else:
            assert lam.poly == mu.poly and q.d == lam.d + m * (n - 1)


# -- fi_verify / fi_decompose -------------------------------------------------

def test_fi_verify_examples():
    assert fi_verify([power(2), -power(2)]).is_zero()
    assert fi_verify([adj_map(), zero(2, 1)]) == det()
    assert fi_verify([power(1), zero(2, 1)]) is None


def test_fi_verify_mismatched_degrees():
    with pytest.raises(MismatchedDegrees):
        fi_verify([power(1), power(2)])
    with pytest.raises(InputError):
        fi_verify([power(1)])


def test_decompose_square_minus_square():
    q_list = [power(2), -power(2)]
    dec = fi_decompose(q_list, debug=True)
    assert dec.case == "a" and dec.lam is None
    assert dec.p[0] == power(1)
    assert dec.mu[0].is_zero()
    assert q_list[1].body == -(dec.p[0].body @ y()) - PolyMatrix.scalar(2, dec.mu[0].poly)
    assert dec.verified


def test_decompose_adjugate_identity():
    dec = fi_decompose([adj_map(), zero(2, 1)], debug=True)
    assert dec.lam.poly == Polynomial.one(2)
    assert dec.p[0] == TraceMap(2, 0, PolyMatrix.scalar(2, -1))
    assert dec.mu[0].poly == y().trace()
    assert dec.value == det()
    # q_1 = adj(x) + x - tr(x) = 0
    last = charpoly_data(2).adjugate - dec.p[0].body @ y() - PolyMatrix.scalar(2, dec.mu[0].poly)
    assert last.is_zero()


def test_decompose_rejects_non_identity_and_degree_zero():
    with pytest.raises(NotAnIdentity):
        fi_decompose([power(1), zero(2, 1)])
    with pytest.raises(InputError):
        fi_decompose([TraceMap(2, 0, PolyMatrix.scalar(2, 1)), zero(2, 0)])


def _independent_instance(rng, n, m, d, zero_lambda=False):
    """Planted identity whose last map is rebuilt with a cofactor adjugate."""
    inst = planted_identity(rng, n, m, d, zero_lambda=zero_lambda)
    if inst.lam is not None:
        planted_adj = adjugate_power(n, m) * inst.lam.poly
        assert planted_adj == cofactor_adjugate(generic_power(n, m)) * inst.lam.poly
    return inst


def _check_at_points(rng, q_list, dec, points=20):
    """Evaluate both sides of every identity at random rational matrices."""
    n = dec.n
    rebuilt = dec.reconstruct()
    for _ in range(points):
        pt = random_rational_matrix(rng, n)
        for got, want in zip(rebuilt, q_list):
            assert evaluate(got, pt) == evaluate(want.body, pt)


@pytest.mark.parametrize("n,m,d", [(2, 1, 1), (2, 1, 3), (2, 2, 2), (2, 3, 3), (3, 1, 2),
                                   (3, 2, 4)])
def test_decompose_roundtrip(n, m, d):
    rng = random.Random(f"mt:{n}:{m}:{d}")
    for k in range(4):
        inst = _independent_instance(rng, n, m, d, zero_lambda=(k == 0))
        dec = fi_decompose(inst.q_list, debug=True)
        assert dec.verified
        assert dec.lam == inst.lam
        assert [q.body for q in inst.q_list] == dec.reconstruct()
        det_m = det(n) ** m
        assert dec.value == (Polynomial.zero(n) if inst.lam is None else inst.lam.poly * det_m)
        _check_at_points(rng, inst.q_list, dec)


def test_decompose_all_zero_maps():
    dec = fi_decompose([zero(2, 2), zero(2, 2), zero(2, 2)])
    assert dec.lam is None
    assert all(p.is_zero() for p in dec.p) and all(mu.is_zero() for mu in dec.mu)


def test_decomposition_json_shape():
    dec = fi_decompose([adj_map(), zero(2, 1)])
    data = dec.to_json()
    assert set(data) == {"n", "m", "d", "case", "value", "p", "mu", "lambda", "verified"}
    assert data["case"] == "b" and data["verified"] is True
