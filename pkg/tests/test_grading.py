from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from structures.errors import DimensionError
from structures.grading import (
    CharClass,
    HomogeneityKind,
    bounded_exponents,
    char_to_mvec,
    generator_degree,
    homogeneous_components,
    is_homogeneous,
    mdeg_monomial,
    monomial_basis,
    mvec_to_char,
    normalize_char,
    vec_add,
)
from structures.poly import Poly
from tests.strategies import dimensions, exponents, nonzero_rationals, polys

PROPERTY = settings(max_examples=1000, deadline=None)


def test_mdeg_monomial_examples():
    assert mdeg_monomial((1, 0, 0)) == (1, 0)
    assert mdeg_monomial((0, 0, 1)) == (-1, -1)
    assert mdeg_monomial((1, 1, 1)) == (0, 0)


def test_generator_degrees():
    assert generator_degree(3, 1) == (1, 0)
    assert generator_degree(3, 2) == (0, 1)
    assert generator_degree(3, 3) == (-1, -1)


def test_homogeneous_components_examples():
    x1, x2 = Poly.variable(2, 1), Poly.variable(2, 2)
    f = x1 ** 2 + x1 ** 3 * x2
    assert homogeneous_components(f) == {(2,): f}
    assert homogeneous_components(x1 + x2) == {(-1,): x2, (1,): x1}
    assert homogeneous_components(Poly.zero(2)) == {}


def test_is_homogeneous_examples():
    x1, x2, x3 = (Poly.variable(3, i) for i in (1, 2, 3))
    verdict = is_homogeneous(x1 ** 2 * x2)
    assert verdict.is_homogeneous and verdict.degree == (2, 1)

    mixed = is_homogeneous(x1 + x2)
    assert mixed.kind is HomogeneityKind.MIXED
    assert mixed.degrees == ((0, 1), (1, 0))
    assert "not homogeneous" in mixed.describe()

    assert is_homogeneous(x1 * x2 * x3 + 1).degree == (0, 0)


def test_zero_polynomial_has_distinguished_verdict():
    verdict = is_homogeneous(Poly.zero(3))
    assert verdict.is_zero
    assert not verdict.is_homogeneous
    assert verdict.degree is None


def test_character_conversions():
    assert normalize_char((1, 1, -1)) == CharClass((2, 2, 0))
    assert char_to_mvec(normalize_char((0, 0, -1))) == (1, 1)
    assert mvec_to_char((1, 0)) == CharClass((1, 0, 0))
    assert str(CharClass((2, 2, 0))) == "(2,2,0)"


def test_character_validation():
    with pytest.raises(DimensionError):
        CharClass((1, 1))
    with pytest.raises(DimensionError):
        normalize_char((1,))
    with pytest.raises(DimensionError):
        mvec_to_char(())


def test_monomial_basis_examples():
    assert monomial_basis((1,), 3) == [(1, 0), (2, 1)]
    assert monomial_basis((-2,), 4) == [(0, 2), (1, 3)]
    assert monomial_basis((0,), 1) == [(0, 0)]
    assert monomial_basis((0,), -1) == []


@pytest.mark.parametrize("n", [2, 3])
def test_monomial_basis_is_complete(n):
    dmax = 5
    every = bounded_exponents(n, dmax)
    for m in product(range(-3, 4), repeat=n - 1):
        expected = sorted(a for a in every if mdeg_monomial(a) == m)
        basis = monomial_basis(m, dmax)
        assert sorted(basis) == expected
        assert all(mdeg_monomial(a) == m for a in basis)


def test_bounded_exponents_order_and_count():
    found = bounded_exponents(2, 2)
    assert found == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]
    assert len(bounded_exponents(3, 4)) == 35


@PROPERTY
@given(st.data())
def test_grading_is_multiplicative(data):
    n = data.draw(dimensions)
    a, b = data.draw(exponents(n, 3)), data.draw(exponents(n, 3))
    m, m2 = mdeg_monomial(a), mdeg_monomial(b)
    f = Poly.monomial(a, data.draw(nonzero_rationals))
    g = Poly.monomial(b, data.draw(nonzero_rationals))
    # Widen each factor inside its own graded piece.
    f = f + f * Poly.monomial((1,) * n)
    g = g - g * Poly.monomial((1,) * n)
    assert is_homogeneous(f).degree == m
    assert is_homogeneous(f * g).degree == vec_add(m, m2)


@PROPERTY
@given(st.data())
def test_components_sum_back(data):
    n = data.draw(dimensions)
    f = data.draw(polys(n, max_exponent=3))
    components = homogeneous_components(f)
    assert sum(components.values(), Poly.zero(n)) == f
    assert all(not c.is_zero() and is_homogeneous(c).degree == m for m, c in components.items())


@PROPERTY
@given(
    st.lists(st.integers(min_value=-10, max_value=10), min_size=2, max_size=4),
    st.integers(min_value=-5, max_value=5),
)
def test_normalize_char_shift_invariance(beta, c):
    shifted = [b + c for b in beta]
    assert normalize_char(beta) == normalize_char(shifted)
    assert normalize_char(beta).beta[-1] == 0
    assert char_to_mvec(mvec_to_char(char_to_mvec(normalize_char(beta)))) == char_to_mvec(normalize_char(beta))
