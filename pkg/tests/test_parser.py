from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from structures.derivation import Derivation
from structures.errors import ParseError
from structures.grading import normalize_char
from structures.poly import Poly
from tests.strategies import derivations, dimensions
from utils.parser import parse_derivation, parse_int_vector, parse_poly, parse_poly_list, parse_rational

PROPERTY = settings(max_examples=1000, deadline=None)


def x(n, i):
    return Poly.variable(n, i)


def test_parse_poly_examples():
    assert parse_poly("3*x1^2*x3 - 1/2*x2", 3) == Poly(3, {(2, 0, 1): 3, (0, 1, 0): Fraction(-1, 2)})
    assert parse_poly("x1*x1", 2) == x(2, 1) ** 2
    with pytest.raises(ParseError, match="out of range"):
        parse_poly("x4", 3)


def test_parse_poly_whitespace_and_parentheses():
    assert parse_poly(" 3 * x1 ^ 2 ", 2) == parse_poly("3*x1^2", 2)
    assert parse_poly("2*(x1 + x2)", 2) == 2 * x(2, 1) + 2 * x(2, 2)
    assert parse_poly("-x1 + 0", 2) == -x(2, 1)
    assert parse_poly("0", 2).is_zero()


def test_parse_poly_errors_carry_position():
    with pytest.raises(ParseError) as excinfo:
        parse_poly("x1 + * x2", 2)
    assert excinfo.value.position is not None
    with pytest.raises(ParseError):
        parse_poly("", 2)
    with pytest.raises(ParseError):
        parse_poly("x1 / 0", 2)
    with pytest.raises(ParseError, match="zero denominator"):
        parse_poly("1/0*x1", 2)


def test_parse_poly_list():
    assert parse_poly_list("x1 + x2^2, x2", 2) == [x(2, 1) + x(2, 2) ** 2, x(2, 2)]
    with pytest.raises(ParseError, match="expected 2"):
        parse_poly_list("x1", 2, count=2)


def test_parse_derivation_examples():
    assert parse_derivation("x2^3 d/dx1", 2) == Derivation([x(2, 2) ** 3, Poly.zero(2)])
    assert parse_derivation("0, x1*x3, 0", 3) == Derivation([Poly.zero(3), x(3, 1) * x(3, 3), Poly.zero(3)])
    assert parse_derivation("x1 d/dx1 - x2 d/dx2", 2) == Derivation([x(2, 1), -x(2, 2)])


def test_parse_derivation_term_forms():
    assert parse_derivation("d/dx2", 2) == Derivation.monomial((0, 0), 2)
    assert parse_derivation("5*x2^3*d/dx1", 2) == Derivation.monomial((0, 3), 1, 5)
    assert parse_derivation("(x1 + x2^2) d/dx2", 2) == Derivation([Poly.zero(2), x(2, 1) + x(2, 2) ** 2])
    assert parse_derivation("x1 d/dx1 + x2 d/dx1", 2) == Derivation([x(2, 1) + x(2, 2), Poly.zero(2)])
    assert parse_derivation("-1/2*x3 d / dx 1", 3) == Derivation.monomial((0, 0, 1), 1, Fraction(-1, 2))


def test_parse_derivation_errors():
    with pytest.raises(ParseError, match="expected 3"):
        parse_derivation("x1, x2", 3)
    with pytest.raises(ParseError, match="out of range"):
        parse_derivation("x1 d/dx3", 2)
    with pytest.raises(ParseError):
        parse_derivation("x1 d/dx1 +", 2)


def test_parse_int_vector():
    assert parse_int_vector("(1,0,-2)") == (1, 0, -2)
    assert parse_int_vector(" 1, 2 ", length=2) == (1, 2)
    with pytest.raises(ParseError, match="needs 3"):
        parse_int_vector("1,2", length=3)
    with pytest.raises(ParseError, match="not an integer"):
        parse_int_vector("1,a")


def test_parse_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("0.5")


@PROPERTY
@given(st.data())
def test_derivation_round_trip(data):
    n = data.draw(dimensions)
    d = data.draw(derivations(n))
    assert parse_derivation(str(d), n) == d
    if not d.is_zero():
        assert parse_derivation(d.to_terms(), n) == d


@PROPERTY
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=6))
def test_character_round_trip(beta):
    c = normalize_char(beta)
    assert normalize_char(parse_int_vector(str(c), length=len(beta))) == c
