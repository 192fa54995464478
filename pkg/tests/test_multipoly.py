"""Sparse multivariate polynomials.

Ring structure is property-checked; shift, difference, restriction,
and evaluation are validated against each other through the evaluation
homomorphism, which pins all of them to integer arithmetic.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistzeta._rational import rat
from twistzeta.errors import DimensionMismatch, RestrictionRange
from twistzeta.multipoly import NEG_INF, SparsePolynomial


def poly_strategy(nvars, maxdeg=3, maxterms=5):
    exps = st.tuples(*[st.integers(0, maxdeg) for _ in range(nvars)])
    coef = st.integers(-6, 6).map(lambda n: rat(n, 1))
    return st.dictionaries(exps, coef, max_size=maxterms).map(
        lambda terms: SparsePolynomial(nvars, terms)
    )


points = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@settings(max_examples=80, deadline=None)
@given(poly_strategy(2), poly_strategy(2), poly_strategy(2))
def test_ring_axioms(A, B, C):
    assert (A + B) + C == A + (B + C)
    assert A + B == B + A
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert A - A == SparsePolynomial.zero(2)
    assert A * SparsePolynomial.one(2) == A


@settings(max_examples=80, deadline=None)
@given(poly_strategy(2), poly_strategy(2), points)
def test_eval_is_a_homomorphism(A, B, x):
    assert (A + B).eval(x) == A.eval(x) + B.eval(x)
    assert (A * B).eval(x) == A.eval(x) * B.eval(x)


@settings(max_examples=80, deadline=None)
@given(poly_strategy(2), st.tuples(st.integers(0, 3), st.integers(0, 3)),
       points)
def test_shift_matches_translated_evaluation(A, a, x):
    shifted = A.shift(a)
    moved = tuple(xi + ai for xi, ai in zip(x, a))
    assert shifted.eval(x) == A.eval(moved)


@settings(max_examples=50, deadline=None)
@given(poly_strategy(2), st.tuples(st.integers(0, 2), st.integers(0, 2)),
       st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_shift_composes_additively(A, a, b):
    ab = tuple(x + y for x, y in zip(a, b))
    assert A.shift(a).shift(b) == A.shift(ab)


@settings(max_examples=50, deadline=None)
@given(poly_strategy(2), st.tuples(st.integers(0, 3), st.integers(0, 3)))
def test_delta_is_shift_minus_identity(A, a):
    assert A.delta(a) == A.shift(a) - A


def test_zero_shift_is_identity_object():
    A = SparsePolynomial.variable(2, 1) + 3
    assert A.shift((0, 0)) is A


@settings(max_examples=60, deadline=None)
@given(poly_strategy(2))
def test_powers_match_repeated_products(A):
    assert A ** 0 == SparsePolynomial.one(2)
    assert A ** 1 == A
    assert A ** 3 == A * A * A


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        SparsePolynomial.one(1) ** -1


def test_restriction_substitutes_boundary_values():
    # P(X1, X2, X3) restricted to the stratum where X2 runs above a,
    # X1 and X3 frozen at b: every lattice point must agree
    X1 = SparsePolynomial.variable(3, 1)
    X2 = SparsePolynomial.variable(3, 2)
    X3 = SparsePolynomial.variable(3, 3)
    P = X1 * X2 + X3 ** 2 + 2 * X2 + 1
    a = (2, 1, 3)
    kept = (2,)
    fixed = {1: 2, 3: 1}
    R = P.restrict(a, kept, fixed)
    assert R.nvars == 1
    for d in range(1, 6):
        # kept coordinate becomes a_2 + d, frozen ones are b_j
        assert R.eval((d,)) == P.eval((2, 1 + d, 1))


def test_restriction_renumbers_multiple_kept_variables():
    X1 = SparsePolynomial.variable(3, 1)
    X3 = SparsePolynomial.variable(3, 3)
    P = X1 * X3 + X1
    a = (1, 2, 1)
    R = P.restrict(a, (1, 3), {2: 2})
    assert R.nvars == 2
    for d1 in range(1, 4):
        for d3 in range(1, 4):
            assert R.eval((d1, d3)) == P.eval((1 + d1, 2, 1 + d3))


def test_restriction_range_is_enforced():
    P = SparsePolynomial.variable(2, 1)
    with pytest.raises(RestrictionRange):
        P.restrict((1, 1), (1,), {2: 2})
    with pytest.raises(RestrictionRange):
        P.restrict((1, 2), (1,), {2: 0})


def test_restriction_fixed_must_cover_complement():
    P = SparsePolynomial.variable(3, 1)
    with pytest.raises(DimensionMismatch):
        P.restrict((1, 1, 1), (1,), {2: 1})


def test_total_degree():
    assert SparsePolynomial.zero(2).total_degree() == NEG_INF
    assert SparsePolynomial.one(2).total_degree() == 0
    X1 = SparsePolynomial.variable(2, 1)
    X2 = SparsePolynomial.variable(2, 2)
    assert (X1 * X2 ** 2 + X1).total_degree() == 3


@settings(max_examples=50, deadline=None)
@given(poly_strategy(2), poly_strategy(2))
def test_degree_of_products_adds(A, B):
    if A.is_zero or B.is_zero:
        assert (A * B).total_degree() == NEG_INF
    else:
        assert (A * B).total_degree() == A.total_degree() + B.total_degree()


def test_depends_on():
    X1 = SparsePolynomial.variable(2, 1)
    P = X1 ** 2 + 1
    assert P.depends_on(1)
    assert not P.depends_on(2)


def test_constant_helpers():
    c = SparsePolynomial.constant(2, rat(3, 2))
    assert c.is_constant and c.constant_value() == rat(3, 2)
    assert SparsePolynomial.zero(2).constant_value() == 0
    X1 = SparsePolynomial.variable(2, 1)
    assert not X1.is_constant
    # constant_value is the X^0 coefficient, on any polynomial
    assert X1.constant_value() == 0
    assert (X1 + rat(5, 3)).constant_value() == rat(5, 3)


def test_canonical_text_is_stable_and_total():
    X1 = SparsePolynomial.variable(2, 1)
    X2 = SparsePolynomial.variable(2, 2)
    P = X2 + X1 * X1 + rat(1, 3)
    Q = rat(1, 3) + X1 ** 2 + X2
    assert P.canonical_text() == Q.canonical_text()
    assert SparsePolynomial.zero(2).canonical_text() == "0"
    assert "X1" in P.canonical_text() and "X2" in P.canonical_text()


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        SparsePolynomial(1, {(1,): 0.5})
    with pytest.raises(TypeError):
        SparsePolynomial.one(1) * 0.5


def test_module_level_wrappers():
    from twistzeta.multipoly import (
        poly_add,
        poly_delta,
        poly_eval,
        poly_mul,
        poly_pow,
        poly_restrict,
        poly_shift,
    )

    X = SparsePolynomial.variable(1, 1)
    assert poly_add(X, X) == 2 * X
    assert poly_mul(X, X) == X ** 2
    assert poly_pow(X, 3) == X ** 3
    assert poly_shift(X, (2,)) == X + 2
    assert poly_delta(X, (2,)) == SparsePolynomial.constant(1, 2)
    assert poly_eval(X ** 2, (3,)) == 9
    Y = SparsePolynomial.variable(2, 2) * SparsePolynomial.variable(2, 1)
    assert poly_restrict(Y, (1, 1), (1,), {2: 1}) == SparsePolynomial(
        1, {(1,): rat(1, 1)}
    ).shift((1,))
