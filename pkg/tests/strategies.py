"""
Hypothesis strategies shared by the property suites.
"""

from hypothesis import strategies as st

from structures.derivation import Derivation
from structures.poly import Poly

dimensions = st.integers(min_value=2, max_value=3)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero_rationals = rationals.filter(lambda c: c != 0)


def exponents(n, max_exponent=2):
    return st.tuples(*[st.integers(min_value=0, max_value=max_exponent)] * n)


def polys(n, max_exponent=2, max_terms=4):
    """Polynomials with at most max_terms terms and degree at most n * max_exponent."""
    return st.dictionaries(exponents(n, max_exponent), rationals, max_size=max_terms).map(lambda terms: Poly(n, terms))


def derivations(n, max_exponent=2, max_terms=3):
    return st.lists(polys(n, max_exponent, max_terms), min_size=n, max_size=n).map(Derivation)


@st.composite
def root_vectors(draw, n=None, max_exponent=2):
    """lam * x^alpha * d/dx_i with alpha_i = 0, returned as (lam, i, alpha)."""
    n = draw(dimensions) if n is None else n
    i = draw(st.integers(min_value=1, max_value=n))
    alpha = list(draw(exponents(n, max_exponent)))
    alpha[i - 1] = 0
    return draw(nonzero_rationals), i, tuple(alpha)
