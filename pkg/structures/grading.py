"""
Character Lattice and M-Grading
The diagonal torus T of volume-preserving automorphisms has character lattice
M = Z^(n-1) with basis mu_1..mu_(n-1). The isomorphism is pinned by
chi^(mu_i)(gamma) = gamma_i, so the last coordinate character gamma -> gamma_n
is chi^(-1,...,-1). The polynomial ring is M-graded by deg x_i = mu_i (i < n)
and deg x_n = -(1,...,1).

MVec and NVec values are plain integer tuples of length n - 1.
"""

from dataclasses import dataclass
from enum import Enum

from structures.errors import DimensionError
from structures.poly import Poly, check_dimension, check_exponent, check_index, grlex_key


def format_vec(vec):
    """Print an integer vector as (v1,...,vk)."""
    return "(" + ",".join(str(v) for v in vec) + ")"


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def check_mvec(m, n=None):
    """
    Validate a character-lattice vector.

    Args:
        m (Sequence[int]): The vector.
        n (int): Ambient dimension; when None it is taken as len(m) + 1.

    Returns:
        tuple: m as a tuple of ints.
    """
    m = tuple(m)
    if any(not isinstance(v, int) for v in m):
        raise DimensionError(f"lattice vector {m} must contain integers")
    if n is None:
        check_dimension(len(m) + 1)
    elif len(m) != n - 1:
        raise DimensionError(f"lattice vector {m} must have length {n - 1}")
    return m


def generator_degree(n, j):
    """
    Degree of the generator x_j in M.

    Args:
        n (int): Number of variables.
        j (int): One-based generator index.

    Returns:
        tuple: mu_j for j < n, and -(1,...,1) for j = n.
    """
    check_index(j, n)
    if j == n:
        return (-1,) * (n - 1)
    return tuple(1 if k == j else 0 for k in range(1, n))


def mdeg_monomial(alpha):
    """M-degree of x^alpha: (alpha_1 - alpha_n, ..., alpha_(n-1) - alpha_n)."""
    alpha = tuple(alpha)
    check_exponent(alpha, len(alpha))
    check_dimension(len(alpha))
    last = alpha[-1]
    return tuple(a - last for a in alpha[:-1])


def homogeneous_components(f):
    """
    Split a polynomial into its M-homogeneous components.

    Args:
        f (Poly): The polynomial.

    Returns:
        dict: MVec -> nonzero Poly, keys in ascending order. Empty for 0.
    """
    buckets = {}
    for alpha, coeff in f.terms():
        buckets.setdefault(mdeg_monomial(alpha), {})[alpha] = coeff
    return {m: Poly(f.n, buckets[m]) for m in sorted(buckets)}


class HomogeneityKind(Enum):
    HOMOGENEOUS = "homogeneous"
    ZERO = "zero"
    MIXED = "mixed"


@dataclass(frozen=True)
class Homogeneity:
    """
    Homogeneity verdict for a polynomial.

    kind is ZERO for the zero polynomial (homogeneous of every degree),
    HOMOGENEOUS with `degree` set, or MIXED with the distinct `degrees` found.
    """

    kind: HomogeneityKind
    degree: tuple = None
    degrees: tuple = ()

    @property
    def is_zero(self):
        return self.kind is HomogeneityKind.ZERO

    @property
    def is_homogeneous(self):
        return self.kind is HomogeneityKind.HOMOGENEOUS

    def describe(self):
        if self.kind is HomogeneityKind.ZERO:
            return "zero (homogeneous of every degree)"
        if self.kind is HomogeneityKind.HOMOGENEOUS:
            return f"homogeneous of degree {format_vec(self.degree)}"
        return "not homogeneous: degrees " + ", ".join(format_vec(m) for m in self.degrees)


def is_homogeneous(f):
    """
    Decide whether f lies in a single graded piece B_m.

    Args:
        f (Poly): The polynomial.

    Returns:
        Homogeneity: The verdict.
    """
    degrees = sorted({mdeg_monomial(alpha) for alpha in f.monomials()})
    if not degrees:
        return Homogeneity(HomogeneityKind.ZERO)
    if len(degrees) == 1:
        return Homogeneity(HomogeneityKind.HOMOGENEOUS, degree=degrees[0], degrees=tuple(degrees))
    return Homogeneity(HomogeneityKind.MIXED, degrees=tuple(degrees))


@dataclass(frozen=True, order=True)
class CharClass:
    """
    Character gamma -> prod gamma_j^beta_j of T, stored with beta_n = 0.

    Use normalize_char to build one from an arbitrary representative.
    """

    beta: tuple

    def __post_init__(self):
        beta = tuple(self.beta)
        if not beta or beta[-1] != 0:
            raise DimensionError(f"stored character {beta} must end in 0; use normalize_char")
        check_dimension(len(beta))
        object.__setattr__(self, "beta", beta)

    @property
    def n(self):
        return len(self.beta)

    def __str__(self):
        return format_vec(self.beta)


def normalize_char(beta):
    """
    Canonical representative of beta modulo (1,...,1).

    Args:
        beta (Sequence[int]): n integer exponents.

    Returns:
        CharClass: beta - beta_n * (1,...,1).
    """
    beta = tuple(beta)
    if any(not isinstance(b, int) for b in beta):
        raise DimensionError(f"character exponents {beta} must be integers")
    check_dimension(len(beta))
    last = beta[-1]
    return CharClass(tuple(b - last for b in beta))


def char_to_mvec(c):
    """
    Coordinates in M of a character class.

    Args:
        c (CharClass): Canonical representative with beta_n = 0.

    Returns:
        tuple: (beta_1 - beta_n, ..., beta_(n-1) - beta_n).
    """
    return tuple(b - c.beta[-1] for b in c.beta[:-1])


def mvec_to_char(m):
    """
    Character class of a degree in M; inverse of char_to_mvec.

    Args:
        m (Sequence[int]): n - 1 integers.

    Returns:
        CharClass: The class of (m_1, ..., m_(n-1), 0).
    """
    m = check_mvec(m)
    return CharClass(m + (0,))


def bounded_exponents(n, dmax):
    """
    All exponent vectors of length n with total degree at most dmax.

    Args:
        n (int): Length.
        dmax (int): Degree bound.

    Returns:
        list: Exponent tuples in ascending graded lexicographic order.
    """
    found = []

    def extend(prefix, remaining, slots):
        if slots == 0:
            found.append(prefix)
            return
        for e in range(remaining + 1):
            extend(prefix + (e,), remaining - e, slots - 1)

    if dmax >= 0:
        extend((), dmax, n)
    return sorted(found, key=grlex_key)


def monomial_basis(m, dmax):
    """
    Monomials of B_m with total degree at most dmax.

    B_m is spanned by x^alpha with alpha = (m_1+s, ..., m_(n-1)+s, s) for
    s >= max(0, -min m_k).

    Args:
        m (Sequence[int]): Degree in M.
        dmax (int): Total-degree bound.

    Returns:
        list: Exponent tuples in ascending graded lexicographic order.
    """
    m = check_mvec(m)
    if dmax < 0:
        return []
    s = max(0, -min(m))
    basis = []
    while True:
        alpha = tuple(mk + s for mk in m) + (s,)
        if sum(alpha) > dmax:
            break
        basis.append(alpha)
        s += 1
    return sorted(basis, key=grlex_key)
