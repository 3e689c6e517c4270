from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fidentity.errors import (
    DivisionByZero,
    InputError,
    MismatchedAmbient,
    MissingAssignment,
    NotDivisible,
)
from fidentity.polyring import Polynomial, VarIndex, add, mul, pow


def x(i, j, n=2):
    return Polynomial.var(n, i, j)


ONE = Polynomial.one(2)
ZERO = Polynomial.zero(2)


# -- examples ---------------------------------------------------------------

def test_addition_examples():
    assert add(x(1, 1), -x(1, 1)) == ZERO
    s = x(1, 1) + x(1, 2)
    assert len(s.terms()) == 2
    assert (x(1, 1) + x(1, 2)) + (x(1, 1) - x(1, 2)) == 2 * x(1, 1)


def test_multiplication_examples():
    f = x(1, 1) - x(1, 2)
    assert mul(f, x(1, 1) + x(1, 2)) == x(1, 1) ** 2 - x(1, 2) ** 2
    assert f * ONE == f
    assert (f * ZERO).is_zero()


def test_power_examples():
    assert pow(x(1, 1), 3) == Polynomial.monomial(2, (3, 0, 0, 0))
    assert pow(x(1, 1) - x(2, 1), 0) == ONE
    assert pow(x(1, 1) + x(2, 2), 2) == x(1, 1) ** 2 + 2 * x(1, 1) * x(2, 2) + x(2, 2) ** 2


def test_homogeneity_examples():
    det = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)
    assert det.is_homogeneous(2)
    assert not (x(1, 1) + x(1, 1) ** 2).is_homogeneous(1)
    for d in range(5):
        assert ZERO.is_homogeneous(d)


def test_partial_derivative_examples():
    v11, v22 = VarIndex(1, 1), VarIndex(2, 2)
    assert (x(1, 1) ** 2).partial_derivative(v11) == 2 * x(1, 1)
    assert (x(1, 2) * x(2, 1)).partial_derivative(v11).is_zero()
    assert (x(1, 1) * x(2, 2)).partial_derivative(v22) == x(1, 1)


def test_exact_divide_examples():
    a, b = x(1, 1), x(1, 2)
    assert (a ** 2 - b ** 2).exact_divide(a - b) == a + b
    f = a * b - 3 * x(2, 2) ** 2
    assert f.exact_divide(ONE) == f
    with pytest.raises(NotDivisible):
        a.exact_divide(b)
    with pytest.raises(DivisionByZero):
        a.exact_divide(ZERO)


def test_substitute_examples():
    det = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)
    identity = {(1, 1): 1, (1, 2): 0, (2, 1): 0, (2, 2): 1}
    assert det.substitute(identity) == 1
    assert ZERO.substitute({}) == 0
    f = x(1, 1) + x(2, 2)
    assert f.substitute({(1, 1): Fraction(1, 2), (2, 2): Fraction(1, 3)}) == Fraction(5, 6)


def test_substitute_accepts_flat_keys_and_reports_missing():
    f = x(1, 2) * x(2, 1)
    assert f.substitute({1: 2, 2: 3}) == 6
    with pytest.raises(MissingAssignment):
        f.substitute({VarIndex(1, 2): 2})


def test_homogeneous_component_examples():
    f = x(1, 1) + x(1, 1) ** 2
    assert f.homogeneous_component(1) == x(1, 1)
    g = x(1, 1) * x(2, 2) - x(1, 2) * x(2, 1)
    assert g.homogeneous_component(2) == g
    assert g.homogeneous_component(3).is_zero()


def test_terms_order_and_str():
    f = x(1, 2) ** 2 - x(1, 1) ** 2 + 3
    # ascending graded order, x11 < x12
    assert [e for e, _ in f.terms()] == [(0, 0, 0, 0), (2, 0, 0, 0), (0, 2, 0, 0)]
    assert str(x(1, 1) ** 2 - x(1, 2) ** 2) == "-x12^2 + x11^2"
    assert str(ZERO) == "0"


def test_rejects_floats_and_mixed_n():
    with pytest.raises(InputError):
        Polynomial.constant(2, 0.5)
    with pytest.raises(MismatchedAmbient):
        x(1, 1, 2) + x(1, 1, 3)
    with pytest.raises(InputError):
        Polynomial.var(2, 3, 1)


def test_degree_conventions():
    assert ZERO.degree == -1
    assert ONE.degree == 0
    assert (x(1, 1) * x(2, 2) + x(1, 2)).degree == 2


# -- properties -------------------------------------------------------------

N = 2
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.tuples(*[st.integers(0, 3)] * (N * N))
polys = st.dictionaries(exponents, coeffs, max_size=5).map(lambda t: Polynomial(N, t))
points = st.tuples(*[st.fractions(min_value=-3, max_value=3, max_denominator=3)] * (N * N))


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + ZERO == f and f * ONE == f
    assert (f - f).is_zero()


@given(polys, polys)
def test_exact_division_roundtrip(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_divide(g) == f


@given(polys, polys, st.sampled_from([VarIndex(i, j) for i in (1, 2) for j in (1, 2)]))
def test_leibniz_rule(f, g, v):
    lhs = (f * g).partial_derivative(v)
    assert lhs == f.partial_derivative(v) * g + f * g.partial_derivative(v)


@given(polys, polys, points)
def test_substitute_is_a_ring_homomorphism(f, g, pt):
    a = dict(enumerate(pt))
    assert (f * g).substitute(a) == f.substitute(a) * g.substitute(a)
    assert (f + g).substitute(a) == f.substitute(a) + g.substitute(a)


@given(polys)
def test_homogeneous_components_sum_to_f(f):
    parts = [f.homogeneous_component(d) for d in range(f.degree + 1)]
    total = ZERO
    for p, d in zip(parts, range(len(parts))):
        assert p.is_homogeneous(d)
        total = total + p
    assert total == f


@settings(max_examples=50)
@given(polys)
def test_json_roundtrip(f):
    assert Polynomial.from_json(N, f.to_json()) == f
    assert hash(Polynomial.from_json(N, f.to_json())) == hash(f)
