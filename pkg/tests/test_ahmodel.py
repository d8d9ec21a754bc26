from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings

from structures.ahmodel import (
    ADDerivationSpec,
    ADMonomial,
    SimplexModel,
    ad_apply,
    ad_image_of_generator,
    admissible,
    admissible_degrees,
    closure_check,
    count_admissible_degrees,
    dd_eval,
    from_ad,
    membership,
    spec_for_root_vector,
    to_ad,
    translate_spec,
)
from structures.derivation import Derivation
from structures.errors import DimensionError, InadmissibleSpecError
from structures.grading import bounded_exponents, mdeg_monomial, vec_add
from structures.poly import Poly
from tests.strategies import root_vectors

ONE = Fraction(1)


def test_simplex_vertices():
    model = SimplexModel(3)
    assert model.vertices == ((1, 0), (0, 1), (0, 0))
    assert model.pair(1, (4, -2)) == 4
    assert model.pair(2, (4, -2)) == -2
    assert model.pair(3, (4, -2)) == 0


def test_simplex_vertices_are_built_once():
    assert SimplexModel(4).vertices is SimplexModel(4).vertices


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pairing_matches_vertex_coordinates(n):
    model = SimplexModel(n)
    for m in product(range(-2, 3), repeat=n - 1):
        for i, v in enumerate(model.vertices, start=1):
            assert model.pair(i, m) == sum(a * b for a, b in zip(v, m))


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("ebox", range(0, 4))
def test_admissible_degrees_match_box_filter(n, ebox):
    box = list(product(range(-ebox, ebox + 1), repeat=n - 1))
    total = 0
    for i in range(1, n + 1):
        listed = list(admissible_degrees(n, i, ebox))
        assert len(listed) == len(set(listed))
        assert set(listed) == {e for e in box if admissible(i, e)}
        total += len(listed)
    assert count_admissible_degrees(n, ebox) == total


def test_count_admissible_degrees_examples():
    assert count_admissible_degrees(2, 5) == 10
    assert count_admissible_degrees(4, 5) == 125 + 3 * (36 + 49 + 64 + 81 + 100)


def test_dd_eval_examples():
    assert dd_eval((0, 0)) == 0
    assert dd_eval((3, 1)) == 0
    assert dd_eval((-2, 5)) == -2


def test_membership_examples():
    assert membership(0, (1,))
    assert membership(1, (-1,))
    assert not membership(0, (-1,))
    assert not membership(-1, (0,))


def test_dictionary_examples():
    assert to_ad((1, 0, 2)) == (2, (-1, -2))
    assert from_ad(0, (0, 0)) == (0, 0, 0)
    with pytest.raises(DimensionError):
        from_ad(0, (-1, 0))


@pytest.mark.parametrize("n", [2, 3])
def test_dictionary_round_trip(n):
    for alpha in bounded_exponents(n, 8):
        r, m = to_ad(alpha)
        assert membership(r, m)
        assert from_ad(r, m) == alpha


def test_admissible_examples():
    assert admissible(1, (-2,))
    assert admissible(3, (1, 1))
    assert not admissible(1, (0, 0))
    with pytest.raises(DimensionError):
        admissible(4, (1, 1))


def test_spec_validation_and_printing():
    spec = ADDerivationSpec(Fraction(1, 2), 1, (-2,))
    assert str(spec) == "lambda=1/2, i=1, e=(-2)"
    assert spec.n == 2
    with pytest.raises(InadmissibleSpecError):
        ADDerivationSpec(0, 1, (-2,))
    with pytest.raises(DimensionError):
        ADDerivationSpec(1, 3, (-2,))


def test_ad_apply_examples():
    spec = ADDerivationSpec(1, 1, (-2,))
    result = ad_apply(spec, ADMonomial(ONE, 0, (1,)))
    assert result.member
    assert result.term == ADMonomial(ONE, 1, (-1,))
    assert str(result.term) == "1 * t^1 * chi^(-1)"

    last = ADDerivationSpec(1, 3, (1, 1))
    image = ad_apply(last, ADMonomial(ONE, 1, (-1, -1)))
    assert image.term == ADMonomial(ONE, 0, (0, 0))

    other = ADDerivationSpec(1, 1, (-2, 0))
    assert ad_apply(other, ADMonomial(ONE, 0, (0, 1))).is_zero


def test_ad_apply_flags_leakage():
    spec = ADDerivationSpec(1, 1, (1,))
    result = ad_apply(spec, ADMonomial(ONE, 0, (1,)))
    assert not result.is_zero
    assert not result.member


def test_ad_image_of_generator():
    spec = ADDerivationSpec(1, 3, (1, 1))
    assert ad_image_of_generator(spec, 3).term == ADMonomial(ONE, 0, (0, 0))
    assert ad_image_of_generator(spec, 1).is_zero


def test_translate_spec_examples():
    assert translate_spec(ADDerivationSpec(1, 1, (-2,))) == Derivation.monomial((0, 1), 1)
    assert translate_spec(ADDerivationSpec(1, 3, (1, 1))) == Derivation.monomial((0, 0, 0), 3)
    assert translate_spec(ADDerivationSpec(2, 1, (-3, 0))) == Derivation.monomial((0, 2, 2), 1, 2)
    with pytest.raises(InadmissibleSpecError):
        translate_spec(ADDerivationSpec(1, 1, (0, 0)))


def test_closure_check_examples():
    assert closure_check(ADDerivationSpec(1, 1, (-2,)), 6)
    assert not closure_check(ADDerivationSpec(1, 1, (1,)), 6)
    assert closure_check(ADDerivationSpec(1, 3, (1, 1)), 6)
    with pytest.raises(DimensionError):
        closure_check(ADDerivationSpec(1, 1, (-2,)), 0)


@pytest.mark.parametrize("n", [2, 3])
def test_closure_matches_admissibility(n):
    for i in range(1, n + 1):
        for e in product(range(-3, 4), repeat=n - 1):
            assert closure_check(ADDerivationSpec(1, i, e), 6) == admissible(i, e), (i, e)


@pytest.mark.parametrize("n", [2, 3])
def test_dictionary_intertwines_derivations(n):
    monomials = bounded_exponents(n, 8)
    for i in range(1, n + 1):
        for e in product(range(-5, 6), repeat=n - 1):
            if not admissible(i, e):
                continue
            spec = ADDerivationSpec(1, i, e)
            d = translate_spec(spec)
            for alpha in monomials:
                r, m = to_ad(alpha)
                expected = d.apply(Poly.monomial(alpha))
                result = ad_apply(spec, ADMonomial(ONE, r, m))
                if result.is_zero:
                    assert expected.is_zero()
                    continue
                assert result.member
                term = result.term
                assert expected == Poly.monomial(from_ad(term.r, term.m), term.coefficient)


@pytest.mark.parametrize("n", [2, 3])
def test_evaluation_is_superadditive_and_membership_multiplicative(n):
    box = list(product(range(-6, 7), repeat=n - 1))
    for m in box:
        for m2 in box:
            total = vec_add(m, m2)
            assert dd_eval(total) >= dd_eval(m) + dd_eval(m2)
            r, r2 = -dd_eval(m), -dd_eval(m2)
            assert membership(r + r2, total)


@pytest.mark.parametrize("n", [2, 3])
def test_dictionary_preserves_degree(n):
    for m in product(range(-6, 7), repeat=n - 1):
        for r in range(0, 7):
            if membership(r, m):
                assert mdeg_monomial(from_ad(r, m)) == m


@settings(max_examples=1000, deadline=None)
@given(root_vectors(max_exponent=3))
def test_spec_for_root_vector_inverts_translation(vector):
    lam, i, alpha = vector
    spec = spec_for_root_vector(lam, i, alpha)
    assert admissible(spec.i, spec.e)
    assert translate_spec(spec) == Derivation.monomial(alpha, i, lam)
