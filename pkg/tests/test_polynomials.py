"""Tests for the exact sparse polynomial layer."""

import random
from fractions import Fraction

import pytest

from eigenschemes.polynomials import (
    Poly,
    format_poly,
    grevlex_key,
    monomial_basis,
    monomial_degree,
    parse_poly,
    poly_sum,
)


def random_poly(nvars, degree, rng, terms=6):
    p = Poly.zero(nvars)
    basis = monomial_basis(nvars, degree)
    for _ in range(terms):
        expo = basis[rng.randrange(len(basis))]
        p = p + Poly.monomial(expo, Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
    return p


def test_monomial_basis_size():
    # dim of degree-e forms in k variables is C(e + k - 1, k - 1)
    assert len(monomial_basis(2, 3)) == 4
    assert len(monomial_basis(3, 2)) == 6
    assert len(monomial_basis(4, 3)) == 20
    assert monomial_basis(3, 0) == [(0, 0, 0)]


def test_monomial_basis_is_grevlex_sorted():
    # largest monomial first, matching the term order used everywhere else
    basis = monomial_basis(3, 4)
    keys = [grevlex_key(e) for e in basis]
    assert keys == sorted(keys, reverse=True)
    assert all(monomial_degree(e) == 4 for e in basis)


def test_grevlex_order_on_classic_example():
    # In three variables: x^2 > xy > y^2 > xz > yz > z^2 (descending grevlex).
    degree_two = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    ranked = sorted(degree_two, key=grevlex_key, reverse=True)
    assert ranked == degree_two


def test_constructors_and_predicates():
    x0 = Poly.variable(3, 0)
    x1 = Poly.variable(3, 1)
    p = x0 * x0 + x1.scale(2)
    assert not p.is_homogeneous()
    assert p.degree() == 2
    assert p.homogeneous_degree() is None
    assert Poly.zero(3).is_zero()
    assert Poly.constant(3, 5).degree() == 0
    q = x0**3 - x1**3
    assert q.is_homogeneous() and q.homogeneous_degree() == 3


def test_zero_terms_are_dropped():
    x0 = Poly.variable(2, 0)
    p = x0 - x0
    assert p.is_zero()
    assert p.terms == {}
    assert not p


def test_arithmetic_identities_randomized():
    rng = random.Random(0)
    for _ in range(25):
        nvars = rng.randint(1, 4)
        a = random_poly(nvars, rng.randint(0, 3), rng)
        b = random_poly(nvars, rng.randint(0, 3), rng)
        c = random_poly(nvars, rng.randint(0, 3), rng)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly.zero(nvars)
        assert a * Poly.constant(nvars, 1) == a
        assert (-a) + a == Poly.zero(nvars)


def test_pow_matches_repeated_product():
    rng = random.Random(1)
    p = random_poly(3, 2, rng)
    assert p**0 == Poly.constant(3, 1)
    assert p**1 == p
    assert p**3 == p * p * p


def test_mixed_arity_raises():
    with pytest.raises(ValueError):
        Poly.variable(2, 0) + Poly.variable(3, 0)


def test_partial_derivative_values():
    x0 = Poly.variable(2, 0)
    x1 = Poly.variable(2, 1)
    f = x0**3 + (x0 * x1).scale(5) + x1**2
    assert f.partial(0) == (x0**2).scale(3) + x1.scale(5)
    assert f.partial(1) == x0.scale(5) + x1.scale(2)
    assert Poly.constant(2, 7).partial(0).is_zero()


def test_partial_product_rule_randomized():
    rng = random.Random(2)
    for _ in range(15):
        a = random_poly(3, 2, rng)
        b = random_poly(3, 2, rng)
        for i in range(3):
            assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)


def test_euler_identity_on_homogeneous_forms():
    # sum_i x_i d_i f = deg(f) * f for homogeneous f
    rng = random.Random(3)
    basis = monomial_basis(3, 4)
    f = poly_sum(
        Poly.monomial(e, rng.randint(-5, 5)) for e in basis
    )
    lhs = poly_sum(Poly.variable(3, i) * f.partial(i) for i in range(3))
    assert lhs == f.scale(4)


def test_evaluate_exact_and_complex():
    x0 = Poly.variable(2, 0)
    x1 = Poly.variable(2, 1)
    f = x0**2 - x1**2
    assert f.evaluate([Fraction(3), Fraction(1)]) == Fraction(8)
    assert isinstance(f.evaluate([Fraction(1, 2), Fraction(1, 3)]), Fraction)
    val = f.evaluate([1j, 1.0])
    assert isinstance(val, complex)
    assert abs(val - (-2)) < 1e-12


def test_substitute():
    x0 = Poly.variable(3, 0)
    x1 = Poly.variable(3, 1)
    x2 = Poly.variable(3, 2)
    f = x0 * x1 + x2**2 - x0**2
    g = f.substitute(0, Fraction(1))
    assert g == x1 + x2**2 - Poly.constant(3, 1)
    # substitution merges colliding monomials
    h = (x0 * x1 + x1).substitute(0, 1)
    assert h == x1.scale(2)


def test_coefficient_and_coefficients_on():
    x0 = Poly.variable(2, 0)
    x1 = Poly.variable(2, 1)
    f = (x0**2).scale(3) - x0 * x1
    assert f.coefficient((2, 0)) == 3
    assert f.coefficient((1, 1)) == -1
    assert f.coefficient((0, 2)) == 0
    basis = monomial_basis(2, 2)
    coeffs = f.coefficients_on(basis)
    assert poly_sum(
        Poly.monomial(e, c) for e, c in zip(basis, coeffs)
    ) == f
    with pytest.raises(ValueError):
        (x0 + x1).coefficients_on(basis)  # degree-1 term not in the basis


def test_sorted_terms_descending():
    p = parse_poly("x0*x1 + x2^2 + x0^2", 3)
    exps = [e for e, _ in p.sorted_terms()]
    keys = [grevlex_key(e) for e in exps]
    assert keys == sorted(keys, reverse=True)
    assert exps[0] == (2, 0, 0)


@pytest.mark.parametrize(
    "text,nvars",
    [
        ("x0^3 - x1^3", 2),
        ("-3*x0^2*x1 + 3*x0*x1^2", 3),
        ("1/2*x0*x1 - 7", 2),
        ("x0^2 + 2*x0*x1 + x1^2", 2),
        ("0", 4),
    ],
)
def test_parse_format_round_trip(text, nvars):
    p = parse_poly(text, nvars)
    assert parse_poly(format_poly(p), nvars) == p


def test_format_of_simple_polys():
    assert format_poly(Poly.zero(2)) == "0"
    assert format_poly(Poly.variable(3, 1)) == "x1"
    p = parse_poly("x0^3+x1^3+x2^3", 3)
    assert format_poly(p) == "x0^3 + x1^3 + x2^3"


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_poly("x5", 2)
    with pytest.raises(ValueError):
        parse_poly("x0 +* x1", 2)


def test_round_trip_random():
    rng = random.Random(4)
    for _ in range(20):
        nvars = rng.randint(1, 4)
        p = random_poly(nvars, rng.randint(0, 4), rng)
        assert parse_poly(format_poly(p), nvars) == p
