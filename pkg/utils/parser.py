"""
Expression Parser
Reads polynomials, derivations and integer vectors from text.

Polynomial grammar (whitespace insignificant):

    poly   := [sign] term (sign term)*
    term   := atom ("*" atom)*
    atom   := "x" nat ["^" nat] | nat ["/" nat] | "(" poly ")"

Derivations are either n comma-separated polynomials (the images of
x1..xn) or a signed sum of `[term ["*"]] d/dx<i>` pieces, e.g.
"x1 d/dx1 - x2 d/dx2" or "(x1 + x2^2) d/dx3".
"""

import re
from fractions import Fraction
from functools import lru_cache

from pyparsing import (
    Forward,
    Optional,
    ParseBaseException,
    ParseFatalException,
    Regex,
    Suppress,
    ZeroOrMore,
    one_of,
)

from structures.derivation import Derivation
from structures.errors import ParseError
from structures.poly import Poly, check_dimension

_DERIVATION_MARK = re.compile(r"d\s*/\s*dx")
_VARIABLE = re.compile(r"x\s*(\d+)(?:\s*\^\s*(\d+))?")
_OPERATOR = re.compile(r"d\s*/\s*dx\s*(\d+)")


def _signed_sum(tokens):
    items = list(tokens)
    if isinstance(items[0], str):
        sign = items.pop(0)
        if sign == "-":
            items[0] = -items[0]
    total = items[0]
    for sign, value in zip(items[1::2], items[2::2]):
        total = total - value if sign == "-" else total + value
    return total


def _product(tokens):
    result = tokens[0]
    for value in tokens[1:]:
        result = result * value
    return result


@lru_cache(maxsize=None)
def _grammar(n):
    """Build the polynomial, derivation and image-list grammars for K[x1..xn]."""

    def variable(source, loc, toks):
        match = _VARIABLE.fullmatch(toks[0])
        index = int(match.group(1))
        exponent = int(match.group(2)) if match.group(2) else 1
        if not 1 <= index <= n:
            raise ParseFatalException(source, loc, f"variable index x{index} out of range 1..{n}")
        return Poly.variable(n, index) ** exponent

    def coefficient(source, loc, toks):
        try:
            return Poly.constant(n, Fraction(re.sub(r"\s+", "", toks[0])))
        except ZeroDivisionError:
            raise ParseFatalException(source, loc, "zero denominator") from None

    def operator(source, loc, toks):
        index = int(_OPERATOR.fullmatch(toks[0]).group(1))
        if not 1 <= index <= n:
            raise ParseFatalException(source, loc, f"d/dx{index} out of range 1..{n}")
        return index

    def derivation_term(toks):
        coeff = toks[0] if len(toks) == 2 else Poly.one(n)
        images = [Poly.zero(n)] * n
        images[toks[-1] - 1] = coeff
        return Derivation(images)

    sign = one_of("+ -")
    poly = Forward()
    var = Regex(r"x\s*\d+(?:\s*\^\s*\d+)?").set_parse_action(variable)
    coeff = Regex(r"\d+(?:\s*/\s*\d+)?").set_parse_action(coefficient)
    atom = var | coeff | (Suppress("(") + poly + Suppress(")"))
    term = (atom + ZeroOrMore(Suppress("*") + atom)).set_parse_action(_product)
    poly <<= (Optional(sign) + term + ZeroOrMore(sign + term)).set_parse_action(_signed_sum)

    op = Regex(r"d\s*/\s*dx\s*\d+").set_parse_action(operator)
    dterm = (Optional(term + Optional(Suppress("*"))) + op).set_parse_action(derivation_term)
    dsum = (Optional(sign) + dterm + ZeroOrMore(sign + dterm)).set_parse_action(_signed_sum)

    images = poly + ZeroOrMore(Suppress(",") + poly)
    return poly, dsum, images


def _raise_parse_error(src, exc):
    raise ParseError(f"cannot parse {src!r}: {exc.msg}", exc.loc) from None


def parse_poly(src, n):
    """
    Parse a polynomial in x1..xn.

    Args:
        src (str): Text such as "3*x1^2*x3 - 1/2*x2".
        n (int): Number of variables.

    Returns:
        Poly: The canonical polynomial.
    """
    check_dimension(n)
    if not src or not src.strip():
        raise ParseError("empty polynomial", 0)
    poly, _, _ = _grammar(n)
    try:
        return poly.parse_string(src, parse_all=True)[0]
    except ParseBaseException as exc:
        _raise_parse_error(src, exc)


def parse_poly_list(src, n, count=None):
    """
    Parse comma-separated polynomials.

    Args:
        src (str): Text such as "x1 + x2^2, x2".
        n (int): Number of variables.
        count (int): Required number of entries, or None.

    Returns:
        list: The parsed polynomials.
    """
    check_dimension(n)
    if not src or not src.strip():
        raise ParseError("empty polynomial list", 0)
    _, _, images = _grammar(n)
    try:
        polys = list(images.parse_string(src, parse_all=True))
    except ParseBaseException as exc:
        _raise_parse_error(src, exc)
    if count is not None and len(polys) != count:
        raise ParseError(f"expected {count} comma-separated polynomials, got {len(polys)}")
    return polys


def parse_derivation(src, n):
    """
    Parse a derivation of K[x1..xn].

    Args:
        src (str): n comma-separated images, or a sum of `<poly> d/dx<i>` terms.
        n (int): Number of variables.

    Returns:
        Derivation: The derivation.
    """
    check_dimension(n)
    if not src or not src.strip():
        raise ParseError("empty derivation", 0)
    if not _DERIVATION_MARK.search(src):
        return Derivation(parse_poly_list(src, n, count=n))
    _, dsum, _ = _grammar(n)
    try:
        return dsum.parse_string(src, parse_all=True)[0]
    except ParseBaseException as exc:
        _raise_parse_error(src, exc)


def parse_int_vector(src, length=None, name="vector"):
    """
    Parse integers separated by commas, optionally wrapped in parentheses.

    Args:
        src (str): Text such as "1,0,-2" or "(1,0,-2)".
        length (int): Required length, or None.
        name (str): Label used in error messages.

    Returns:
        tuple: The integers.
    """
    text = (src or "").strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    if not text:
        raise ParseError(f"empty {name}", 0)
    values = []
    offset = 0
    for piece in text.split(","):
        stripped = piece.strip()
        if not re.fullmatch(r"[+-]?\d+", stripped):
            raise ParseError(f"{name} entry {stripped!r} is not an integer", offset)
        values.append(int(stripped))
        offset += len(piece) + 1
    if length is not None and len(values) != length:
        raise ParseError(f"{name} needs {length} entries, got {len(values)}")
    return tuple(values)


def parse_rational(src):
    """Parse an integer or p/q fraction, optionally signed."""
    text = (src or "").strip()
    if not re.fullmatch(r"[+-]?\d+(?:/\d+)?", text):
        raise ParseError(f"{src!r} is not a rational number", 0)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"{src!r} has a zero denominator", 0) from None
