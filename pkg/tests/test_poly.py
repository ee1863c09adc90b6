import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sucalc.chi import AlgebraicChi
from sucalc.poly import (
    GaussianRational,
    NEG_INF_DEGREE,
    Polynomial,
    PolyParseError,
    UnknownVariableError,
    degree_info,
    evaluate,
    parse_poly,
    poly_arith,
    render_poly,
)

T = ["t1", "t2"]
UVW = ["u", "v", "w"]
MOTZKIN = "t1^4*t2^2 + t1^2*t2^4 - 3*t1^2*t2^2 + 1"

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)
gaussian = st.builds(GaussianRational, fractions, fractions)


@st.composite
def polys(draw, num_vars=2, max_deg=3):
    exps = st.tuples(*[st.integers(0, max_deg)] * num_vars)
    terms = draw(st.dictionaries(exps, gaussian, max_size=5))
    return Polynomial(num_vars, terms)


points = st.lists(gaussian, min_size=2, max_size=2)


def test_parse_motzkin():
    p = parse_poly(MOTZKIN, T)
    assert len(p) == 4
    assert p.coefficient((2, 2)) == GaussianRational(-3)
    assert p.coefficient((0, 0)) == GaussianRational(1)


@pytest.mark.parametrize("text", ["0", "2*s - 2*s"])
def test_parse_zero(text):
    assert parse_poly(text, ["s"]).terms == {}


def test_parse_rational_and_complex_coefficients():
    p = parse_poly("(1/2+3/4 i)*t1^2 - 5/3*t2 + (0-1 i)", T)
    assert p.coefficient((2, 0)) == GaussianRational(Fraction(1, 2), Fraction(3, 4))
    assert p.coefficient((0, 1)) == GaussianRational(Fraction(-5, 3))
    assert p.coefficient((0, 0)) == GaussianRational(0, -1)


def test_parse_repeated_factors_merge():
    assert parse_poly("t1*t2*t1^2 + t2*t1^3", T) == parse_poly("2*t1^3*t2", T)


def test_parenthesized_subexpressions_are_not_polynomials():
    with pytest.raises(PolyParseError):
        parse_poly("(t1 + t2)^2", T)


@pytest.mark.parametrize("text", ["t1 +", "t1 ** 2", "3 t1", "t1^-1", "(t1"])
def test_parse_errors_carry_position(text):
    with pytest.raises(PolyParseError) as info:
        parse_poly(text, T)
    assert info.value.position >= 0


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_poly("t3 + 1", T)


def test_arith_examples():
    t1, t2 = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    assert poly_arith("add", t1, poly_arith("neg", t1)).is_zero()
    assert poly_arith("mul", t1 + t2, t1 - t2) == parse_poly("t1^2 - t2^2", T)
    s = sum((Polynomial.variable(3, i) for i in range(3)), Polynomial(3))
    assert poly_arith("pow", s, 2) == parse_poly("u^2+v^2+w^2+2*u*v+2*u*w+2*v*w", UVW)


def test_arith_rejects_mismatched_vars():
    with pytest.raises(ValueError):
        Polynomial.variable(2, 0) + Polynomial.variable(3, 0)
    with pytest.raises(ValueError):
        Polynomial.variable(2, 0) ** -1


def test_evaluate_examples():
    m = parse_poly(MOTZKIN, T)
    assert evaluate(m, [1, 1]) == 0
    assert evaluate(m, [0, 0]) == 1
    assert evaluate(parse_poly("t1^2", ["t1"]), [Fraction(3, 2)]) == Fraction(9, 4)


def test_degree_info_examples():
    assert degree_info(parse_poly("u^2 + u*v", UVW)) == (2, True)
    assert degree_info(parse_poly("u^2 + u", UVW)) == (2, False)
    deg, hom = degree_info(Polynomial(3))
    assert deg == NEG_INF_DEGREE and math.isinf(deg) and hom


@given(polys(), polys(), polys())
def test_distributive(p, q, r):
    assert (p + q) * r == p * r + q * r


@given(polys(), polys())
def test_conj_of_product(p, q):
    assert (p * q).conj() == q.conj() * p.conj() == p.conj() * q.conj()


@given(polys(), polys(), points)
def test_evaluate_is_multiplicative(p, q, x):
    assert evaluate(p * q, x) == evaluate(p, x) * evaluate(q, x)


@given(polys())
def test_render_round_trip(p):
    assert parse_poly(render_poly(p, T), T) == p


@given(polys(), st.integers(0, 3))
def test_power_matches_repeated_product(p, k):
    expected = Polynomial.constant(2, 1)
    for _ in range(k):
        expected = expected * p
    assert p**k == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_chi_relation(n):
    z = AlgebraicChi.z(n)
    assert n * z * z + 2 * z - 1 == 0
    assert z * AlgebraicChi.z_inverse(n) == 1
    assert AlgebraicChi.z_inverse(n) == n * z + 2
    # float check against the positive root of n z^2 + 2 z - 1
    root = (-2 + math.sqrt(4 + 4 * n)) / (2 * n)
    assert float(z) == pytest.approx(root)


@given(fractions, fractions, st.integers(1, 6))
def test_chi_inverse(a, b, n):
    x = AlgebraicChi(n, a, b)
    if float(x) == 0 or x.is_zero():
        return
    try:
        inv = x.inverse()
    except ZeroDivisionError:
        # zero divisor in the split cases n + 1 = square
        return
    assert x * inv == 1
