import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfhardcore.graph_core import (
    complete_graph,
    cycle_graph,
    delete_closed_neighborhood,
    delete_vertex,
    disjoint_union,
    empty_graph,
    enumerate_labeled_graphs,
    from_edge_list,
)
from tfhardcore.ipoly_exact import (
    IndependencePolynomial,
    add,
    brute_force_polynomial,
    independence_number,
    independence_polynomial,
    log_z,
    multiply,
    occupancy_fraction,
    occupancy_fraction_exact,
    shift,
)

from conftest import seeded_random_graphs
from test_graph_core import graphs


def test_polynomial_examples(c5, petersen):
    assert independence_polynomial(empty_graph(0)).coeffs == (1,)
    assert independence_polynomial(c5).coeffs == brute_force_polynomial(c5).coeffs == (1, 5, 5)
    p = independence_polynomial(petersen)
    assert p.coeffs == brute_force_polynomial(petersen).coeffs == (1, 10, 30, 30, 5)
    assert p.total() == 76


def test_brute_force_examples():
    assert brute_force_polynomial(empty_graph(1)).coeffs == (1, 1)
    assert brute_force_polynomial(complete_graph(2)).coeffs == (1, 2)
    assert brute_force_polynomial(cycle_graph(4)).coeffs == (1, 4, 2)
    with pytest.raises(ValueError):
        brute_force_polynomial(empty_graph(25))


def test_size_cap():
    with pytest.raises(ValueError):
        independence_polynomial(empty_graph(65))


def test_big_coefficients_stay_exact():
    # 64 isolated vertices: Z = (1 + lam)^64, i(G) = 2^64 exceeds a machine word
    p = independence_polynomial(empty_graph(64))
    assert p.coeffs == tuple(math.comb(64, k) for k in range(65))
    assert p.total() == 2**64


@pytest.mark.parametrize("cache", [0, 1 << 20])
def test_cache_does_not_change_result(cache):
    for g in seeded_random_graphs(20, 20, 30, seed=11):
        assert independence_polynomial(g, cache_entries=cache) == independence_polynomial(g, cache_entries=0)


def test_log_z_examples():
    assert log_z(IndependencePolynomial((1,)), Fraction(7, 3)) == 0.0
    assert log_z(IndependencePolynomial((1, 1)), 1) == pytest.approx(math.log(2), rel=1e-15)
    assert log_z(IndependencePolynomial((1, 5, 5)), 1) == pytest.approx(math.log(11), rel=1e-15)
    assert log_z(IndependencePolynomial((1, 5, 5)), 0) == 0.0


def test_log_z_small_lambda_keeps_relative_precision():
    # log(1 + 5 lam + 5 lam^2) ~ 5 lam for tiny lam; naive log(Z) would lose all digits
    lam = Fraction(1, 10**12)
    exact = 5e-12 + 5e-24 - 12.5e-24  # series to second order
    assert log_z(IndependencePolynomial((1, 5, 5)), lam) == pytest.approx(exact, rel=1e-14)


def test_occupancy_examples():
    k1 = IndependencePolynomial((1, 1))
    assert occupancy_fraction_exact(k1, 1) == Fraction(1, 2)
    assert occupancy_fraction_exact(k1, Fraction(3)) == Fraction(3, 4)
    assert occupancy_fraction(IndependencePolynomial((1,)), 2) == 0.0
    assert occupancy_fraction_exact(IndependencePolynomial((1, 5, 5)), 1) == Fraction(15, 11)
    with pytest.raises(ValueError):
        occupancy_fraction(k1, 0)


def test_independence_number_examples(c5, petersen):
    assert independence_number(IndependencePolynomial((1,))) == 0
    assert independence_number(independence_polynomial(c5)) == 2
    assert independence_number(independence_polynomial(petersen)) == 4


def test_text_roundtrip(petersen):
    p = independence_polynomial(petersen)
    assert p.to_text() == "1 10 30 30 5"
    assert IndependencePolynomial.from_text(p.to_text()) == p


@pytest.mark.parametrize("n", range(0, 6))
def test_oracle_equivalence_exhaustive(n):
    for g in enumerate_labeled_graphs(n):
        assert independence_polynomial(g) == brute_force_polynomial(g)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=12))
def test_recursion_identity(g):
    p = independence_polynomial(g)
    for v in range(g.n):
        out = independence_polynomial(delete_vertex(g, v))
        inn = independence_polynomial(delete_closed_neighborhood(g, v))
        assert list(p.coeffs) == add(out.coeffs, shift(inn))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_multiplicative_over_disjoint_union(a, b):
    assert independence_polynomial(disjoint_union(a, b)) == multiply(independence_polynomial(a),
                                                                     independence_polynomial(b))


@given(graphs(max_n=10))
def test_polynomial_invariants(g):
    p = independence_polynomial(g)
    assert p.coeffs[0] == 1
    if g.n:
        assert p.coeffs[1] == g.n
    assert all(c > 0 for c in p.coeffs)
    assert p.total() == p(1)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10).filter(lambda g: g.n > 0))
def test_occupancy_strictly_increasing_and_bounded(g):
    p = independence_polynomial(g)
    grid = [Fraction(k, 8) for k in range(1, 41)]
    values = [occupancy_fraction_exact(p, lam) for lam in grid]
    assert all(0 <= v <= p.degree for v in values)
    assert all(b > a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("g", [cycle_graph(5), complete_graph(4), from_edge_list(6, [(0, 1), (2, 3)])])
def test_large_lambda_limit(g):
    p = independence_polynomial(g)
    target = p.degree / g.n
    errors = [log_z(p, 10**e) / (g.n * math.log(10**e)) - target for e in (3, 6, 9)]
    assert all(err > 0 for err in errors)
    assert errors[0] > errors[1] > errors[2]
