"""Tests for the identity checks, tensor recovery and fitting searches."""

import random
from fractions import Fraction

import pytest

from eigenschemes.characterize import (
    alpha_kernel,
    basis_change_search,
    check_equations,
    derham_check,
    eigenvariety_dimension_bound,
    fit_tensor_to_points,
    koszul_check,
    poly_sum_of_squares,
    recover_partially_symmetric,
    recover_symmetric,
)
from eigenschemes.linalg import RatMatrix, determinant
from eigenschemes.polynomials import Poly, monomial_basis, parse_poly
from eigenschemes.tensors import (
    DetTuple,
    ProjPoint,
    PSTensor,
    SymTensor,
    determinantal_generators,
    gradient_tensor,
    pair_index,
    random_ps_tensor,
    random_sym_tensor,
)


# ---------------------------------------------------------------------
# Identity checks.


def test_koszul_holds_on_determinantal_tuples():
    for seed in range(10):
        t = random_ps_tensor(2, 3, seed=seed)
        assert koszul_check(determinantal_generators(t))
    for seed in range(5):
        t = random_ps_tensor(3, 4, seed=seed)
        assert koszul_check(determinantal_generators(t))


def test_both_hold_on_symmetric_tuples():
    for seed in range(10):
        s = random_sym_tensor(2, 4, seed=seed)
        ft = determinantal_generators(s)
        assert koszul_check(ft)
        assert derham_check(ft)


def test_derham_fails_on_generic_ps_tuples():
    # partial symmetry alone does not force the derivative identities
    failures = 0
    for seed in range(10):
        ft = determinantal_generators(random_ps_tensor(2, 3, seed=seed))
        if not derham_check(ft):
            failures += 1
    assert failures == 10


def test_identities_fail_on_random_forms():
    rng = random.Random(3)
    basis = monomial_basis(3, 3)
    for _ in range(5):
        forms = []
        for _ in range(3):
            terms = {m: Fraction(rng.randint(-5, 5)) for m in basis}
            forms.append(Poly(3, terms))
        ft = DetTuple(2, 3, tuple(forms))
        assert not koszul_check(ft)


def test_single_coefficient_perturbation_breaks_koszul():
    # an elementary bump of one generator never cancels inside the identity
    rng = random.Random(4)
    for seed in range(10):
        t = random_ps_tensor(2, 3, seed=100 + seed)
        ft = determinantal_generators(t)
        pos = rng.randrange(3)
        mono = monomial_basis(3, 3)[rng.randrange(len(monomial_basis(3, 3)))]
        bumped = list(ft.entries)
        bumped[pos] = bumped[pos] + Poly.monomial(mono, 1)
        assert not koszul_check(DetTuple(2, 3, tuple(bumped)))


def test_koszul_vacuous_for_binary_forms():
    # with two variables there are no index triples, so nothing to check
    assert koszul_check(DetTuple(1, 3, (parse_poly("x0^3 + 5*x1^3", 2),)))
    assert derham_check(DetTuple(1, 3, (parse_poly("x0^2*x1", 2),)))


# ---------------------------------------------------------------------
# Recovery.


def test_recover_partially_symmetric_round_trip():
    for n, d, seeds in [(1, 3, range(5)), (2, 3, range(5)), (2, 4, range(3)), (3, 3, range(2))]:
        for seed in seeds:
            t = random_ps_tensor(n, d, seed=seed)
            ft = determinantal_generators(t)
            rec = recover_partially_symmetric(ft)
            assert rec is not None
            # recovery certifies by reproducing the generators exactly
            assert determinantal_generators(rec) == ft


def test_recover_symmetric_round_trip():
    for n, d, seeds in [(1, 4, range(3)), (2, 3, range(5)), (2, 4, range(3)), (3, 3, range(2))]:
        for seed in seeds:
            s = random_sym_tensor(n, d, seed=seed)
            ft = determinantal_generators(s)
            rec = recover_symmetric(ft)
            assert rec is not None
            assert determinantal_generators(gradient_tensor(rec)) == ft


def test_recover_fermat_exactly():
    f = parse_poly("x0^3 + x1^3 + x2^3", 3)
    ft = determinantal_generators(gradient_tensor(SymTensor(2, 3, f)))
    rec = recover_symmetric(ft)
    assert rec is not None
    assert rec.f == f


def test_recover_rejects_non_determinantal():
    bad = DetTuple(
        2, 2, (parse_poly("x0^2", 3), parse_poly("x1^2", 3), parse_poly("x2^2", 3))
    )
    assert recover_partially_symmetric(bad) is None
    assert recover_symmetric(bad) is None


def test_recover_zero_tuple_gives_trivial_member():
    zero3 = DetTuple(2, 3, (Poly.zero(3),) * 3)
    rec = recover_partially_symmetric(zero3)
    assert rec is not None
    assert determinantal_generators(rec) == zero3
    assert not all(g.is_zero() for g in rec.forms)
    # symmetric, even degree: a multiple of the quadric power
    zero4 = DetTuple(2, 4, (Poly.zero(3),) * 3)
    rec4 = recover_symmetric(zero4)
    assert rec4 is not None
    assert determinantal_generators(gradient_tensor(rec4)) == zero4
    assert not rec4.f.is_zero()


def test_check_equations_verdict():
    s = random_sym_tensor(2, 3, seed=6)
    verdict = check_equations(determinantal_generators(s))
    assert verdict.koszul_ok and verdict.derham_ok
    assert isinstance(verdict.recovered, SymTensor)

    t = random_ps_tensor(2, 3, seed=6)
    verdict2 = check_equations(determinantal_generators(t))
    assert verdict2.koszul_ok and not verdict2.derham_ok
    assert isinstance(verdict2.recovered, PSTensor)

    bad = DetTuple(
        2, 2, (parse_poly("x0^2", 3), parse_poly("x1^2", 3), parse_poly("x2^2", 3))
    )
    verdict3 = check_equations(bad)
    assert not verdict3.koszul_ok
    assert verdict3.recovered is None


# ---------------------------------------------------------------------
# Basis-change search.


def scramble(ft, matrix):
    """Mix a tuple of forms by an invertible constant matrix."""
    mixed = []
    for row in matrix:
        acc = Poly.zero(ft.entries[0].nvars)
        for c, f in zip(row, ft.entries):
            if c:
                acc = acc + f.scale(c)
        mixed.append(acc)
    return mixed


def random_invertible(size, rng):
    while True:
        rows = [
            [Fraction(rng.randint(-3, 3)) for _ in range(size)] for _ in range(size)
        ]
        if determinant(RatMatrix.from_rows(rows)) != 0:
            return rows


def test_basis_change_finds_hidden_determinantal_structure():
    rng = random.Random(7)
    t = random_ps_tensor(2, 3, seed=17)
    ft = determinantal_generators(t)
    hidden = scramble(ft, random_invertible(3, rng))
    found = basis_change_search(hidden, symmetric=False)
    assert found is not None
    matrix, mixed = found
    assert koszul_check(mixed)
    # the mixed tuple is an exact matrix image of the input forms
    for r in range(3):
        acc = Poly.zero(3)
        for c in range(3):
            coeff = matrix.entries[r][c]
            if coeff:
                acc = acc + hidden[c].scale(coeff)
        assert acc == mixed.entries[r]
    assert recover_partially_symmetric(mixed) is not None


def test_basis_change_symmetric_variant():
    rng = random.Random(8)
    s = random_sym_tensor(2, 3, seed=18)
    ft = determinantal_generators(s)
    hidden = scramble(ft, random_invertible(3, rng))
    found = basis_change_search(hidden, symmetric=True)
    assert found is not None
    _, mixed = found
    assert koszul_check(mixed) and derham_check(mixed)
    assert recover_symmetric(mixed) is not None


def test_basis_change_fails_on_generic_forms():
    rng = random.Random(9)
    basis = monomial_basis(3, 3)
    forms = []
    for _ in range(3):
        terms = {m: Fraction(rng.randint(-4, 4)) for m in basis}
        forms.append(Poly(3, terms))
    assert basis_change_search(forms, symmetric=False) is None


def test_basis_change_validates_input():
    with pytest.raises(ValueError):
        basis_change_search([], symmetric=False)
    with pytest.raises(ValueError):
        basis_change_search([parse_poly("x0^2", 3)] * 2, symmetric=False)
    with pytest.raises(ValueError):
        basis_change_search(
            [parse_poly("x0^2", 3), parse_poly("x0^3", 3), parse_poly("x1^2", 3)],
            symmetric=False,
        )


# ---------------------------------------------------------------------
# Fitting tensors through points.


def corner_points():
    return [
        ProjPoint([Fraction(1), Fraction(0), Fraction(0)]),
        ProjPoint([Fraction(0), Fraction(1), Fraction(0)]),
        ProjPoint([Fraction(0), Fraction(0), Fraction(1)]),
        ProjPoint([Fraction(1), Fraction(1), Fraction(1)]),
    ]


def test_fit_points_finds_witness():
    res = fit_tensor_to_points(corner_points(), 3, symmetric=False)
    assert res.found
    assert res.kernel_dim > res.trivial_dim
    witness = res.witness
    assert witness is not None
    for p in corner_points():
        for f in determinantal_generators(witness).entries:
            assert f.evaluate(p.coords) == 0


def test_fit_points_symmetric():
    res = fit_tensor_to_points(corner_points(), 4, symmetric=True)
    assert res.found
    witness = res.witness
    assert isinstance(witness, SymTensor)
    grads = gradient_tensor(witness)
    for p in corner_points():
        for f in determinantal_generators(grads).entries:
            assert f.evaluate(p.coords) == 0


def test_fit_points_counts_conditions():
    # each point kills at most 2 of the 3 generator values independently,
    # so 4 points leave at least 18 - 8 dimensions of tensors
    res = fit_tensor_to_points(corner_points(), 3, symmetric=False)
    assert res.kernel_dim == 10
    assert res.trivial_dim == 3


def test_fit_points_validation():
    with pytest.raises(ValueError):
        fit_tensor_to_points([], 3, symmetric=False)
    with pytest.raises(ValueError):
        fit_tensor_to_points([ProjPoint([1.5, 2.0])], 3, symmetric=False)  # inexact
    with pytest.raises(ValueError):
        fit_tensor_to_points(
            [ProjPoint([Fraction(1), Fraction(1)]), ProjPoint([Fraction(2), Fraction(2)])],
            3,
            symmetric=False,
        )  # projectively equal points
    with pytest.raises(ValueError):
        fit_tensor_to_points(
            [ProjPoint([Fraction(1), Fraction(0)]), ProjPoint([Fraction(1), Fraction(0), Fraction(0)])],
            3,
            symmetric=False,
        )  # mixed ambient spaces


# ---------------------------------------------------------------------
# Kernel parity and the dimension bound.


def test_alpha_kernel_parity_small():
    for n in (1, 2, 3):
        for d in (2, 3, 4, 5):
            dim, gen = alpha_kernel(n, d)
            if d % 2 == 0:
                assert dim == 1
                expected = poly_sum_of_squares(n + 1) ** (d // 2)
                lead = expected.sorted_terms()[0][1]
                assert gen == expected.scale(Fraction(1, 1) / lead)
            else:
                assert dim == 0
                assert gen is None


def test_alpha_kernel_values_are_annihilated():
    # the generator really does satisfy x_i d_j f = x_j d_i f
    _, gen = alpha_kernel(2, 4)
    xs = [Poly.variable(3, i) for i in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            assert (xs[i] * gen.partial(j) - xs[j] * gen.partial(i)).is_zero()


def test_dimension_bound_closed_form_at_n2():
    for d in range(3, 9):
        assert eigenvariety_dimension_bound(2, d) == d * d + 2 * d - 1


def test_dimension_bound_general_formula():
    from math import comb

    for n in (1, 2, 3, 4):
        for d in (3, 4, 5):
            expected = (n + 1) * comb(n + d - 1, n) - comb(n + d - 2, n) - 1
            assert eigenvariety_dimension_bound(n, d) == expected


def test_dimension_bound_validation():
    with pytest.raises(ValueError):
        eigenvariety_dimension_bound(2, 2)
    with pytest.raises(ValueError):
        eigenvariety_dimension_bound(0, 3)
