"""Tests for graded free resolutions, Hilbert functions and degree probes."""

from math import comb

import pytest

from eigenschemes.hilbert import (
    BettiSummand,
    actual_hilbert,
    dimension_probe,
    hilbert_table,
    predicted_betti,
    predicted_hilbert,
    stabilization_degree,
)
from eigenschemes.polynomials import Poly, parse_poly
from eigenschemes.tensors import (
    DetTuple,
    PSTensor,
    determinantal_generators,
    random_ps_tensor,
    random_sym_tensor,
    w_count,
)


def test_predicted_betti_2_3():
    table = predicted_betti(2, 3)
    assert len(table.modules) == 2
    # twists are stored as the positive shift a of R(-a)
    assert table.modules[0] == (BettiSummand(twist=3, multiplicity=3),)
    assert table.modules[1] == (
        BettiSummand(twist=4, multiplicity=1),
        BettiSummand(twist=5, multiplicity=1),
    )
    assert table.render() == ["F_1 = R(-3)^3", "F_2 = R(-4) + R(-5)"]
    assert table.first_betti_total() == 3


def test_predicted_betti_shape_general():
    # F_i carries C(n+1, i+1) copies at each of i twists
    for n, d in [(2, 4), (3, 3), (3, 5)]:
        table = predicted_betti(n, d)
        assert len(table.modules) == n
        for i, summands in enumerate(table.modules, start=1):
            assert len(summands) == i
            for j, s in enumerate(summands, start=1):
                assert s.twist == j * (d - 2) + i + 1
                assert s.multiplicity == comb(n + 1, i + 1)
    assert predicted_betti(2, 4).render()[0] == "F_1 = R(-4)^3"


def test_predicted_hilbert_low_degrees_match_ring():
    # below degree d the ideal contributes nothing
    for n, d in [(1, 3), (2, 3), (2, 4), (3, 3)]:
        for e in range(d):
            assert predicted_hilbert(n, d, e) == comb(n + e, n)


def test_predicted_hilbert_stabilizes_to_w():
    for n, d in [(1, 3), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)]:
        e_star = stabilization_degree(n, d)
        for e in range(e_star, e_star + 3):
            assert predicted_hilbert(n, d, e) == w_count(n, d)
        # one step below stabilization the value still differs from w
        assert predicted_hilbert(n, d, e_star - 1) != w_count(n, d)


def test_stabilization_degree():
    assert stabilization_degree(2, 3) == 3
    assert stabilization_degree(2, 4) == 5
    assert stabilization_degree(3, 3) == 4
    assert stabilization_degree(1, 3) == 2


def test_actual_matches_predicted_random():
    for n, d, seed in [(1, 3, 0), (2, 3, 1), (2, 4, 2)]:
        t = random_ps_tensor(n, d, seed=seed)
        ft = determinantal_generators(t)
        for e in range(stabilization_degree(n, d) + 2):
            assert actual_hilbert(ft, e) == predicted_hilbert(n, d, e)


def test_actual_hilbert_zero_tuple_is_full_ring():
    zero = DetTuple(2, 3, (Poly.zero(3),) * 3)
    for e in range(6):
        assert actual_hilbert(zero, e) == comb(2 + e, 2)


def test_hilbert_table_default_window():
    t = random_ps_tensor(2, 3, seed=5)
    rows = hilbert_table(determinantal_generators(t))
    # covers 0 .. stabilization degree + 1 inclusive
    assert [r.e for r in rows] == list(range(stabilization_degree(2, 3) + 2))
    assert all(r.agree for r in rows)
    assert rows[-1].actual == w_count(2, 3)
    assert rows[0].predicted == 1


def test_hilbert_table_explicit_window():
    t = random_ps_tensor(1, 3, seed=2)
    # the window argument is the inclusive top degree
    rows = hilbert_table(determinantal_generators(t), window=3)
    assert [r.e for r in rows] == [0, 1, 2, 3]


def test_dimension_probe_finite_case():
    t = random_ps_tensor(2, 3, seed=9)
    finite, degree = dimension_probe(determinantal_generators(t))
    assert finite
    assert degree == 7


def test_dimension_probe_infinite_case():
    # multiplier tuples have identically zero generators: nothing is finite
    h = parse_poly("x0 + x1", 3)
    t = PSTensor(2, 3, tuple(Poly.variable(3, k) * h for k in range(3)))
    finite, degree = dimension_probe(determinantal_generators(t))
    assert not finite
    assert degree is None


def test_symmetric_tensors_agree_too():
    s = random_sym_tensor(2, 4, seed=11)
    from eigenschemes.tensors import gradient_tensor

    ft = determinantal_generators(gradient_tensor(s))
    rows = hilbert_table(ft)
    assert all(r.agree for r in rows)
    assert rows[-1].actual == 13
