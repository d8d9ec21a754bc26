"""
Polyhedral Divisor Model
The M-graded polynomial ring K[x1..xn] as the algebra A[D] of the polyhedral
divisor D = Delta * [0] on the affine line Spec K[t], where Delta is the
standard (n-1)-simplex with vertices v_i = nu_i (i < n) and v_n = 0.

Dictionary: x_i = chi^(mu_i) for i < n and x_n = t * chi^(-1,...,-1), so
t^r * chi^m corresponds to x^alpha with alpha_n = r and alpha_k = m_k + r.

Homogeneous LNDs of A[D] are restrictions of
    d_(lam,i,e)(t^r chi^m) = lam * (r + v_i(m)) * t^(r - v_i(e) - 1) * chi^(m + e)
with v_j(e) >= v_i(e) + 1 for all j != i.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from structures.derivation import Derivation
from structures.errors import DimensionError, InadmissibleSpecError
from structures.grading import check_mvec, format_vec, generator_degree, mdeg_monomial, vec_add, vec_sub
from structures.poly import check_dimension, check_exponent, check_index, to_rat


@dataclass(frozen=True)
class SimplexModel:
    """
    Vertex data of D = Delta * [0] for a given n.

    The tail cone is {0}; the weight cone is all of M_Q.
    """

    n: int

    def __post_init__(self):
        check_dimension(self.n)

    @property
    def vertices(self):
        """v_1..v_(n-1) are the dual basis vectors, v_n is the origin."""
        return _simplex_vertices(self.n)

    def pair(self, i, m):
        """The pairing v_i(m): m_i for i < n, 0 for the origin v_n."""
        check_index(i, self.n)
        return m[i - 1] if i < self.n else 0


@lru_cache(maxsize=None)
def _simplex_vertices(n):
    k = n - 1
    unit = tuple(tuple(1 if c == j else 0 for c in range(k)) for j in range(k))
    return unit + ((0,) * k,)


def _model_for(m):
    return SimplexModel(len(m) + 1)


def dd_eval(m):
    """
    Evaluation D(m): the minimum of v(m) over the vertices of Delta.

    Args:
        m (Sequence[int]): Degree in M.

    Returns:
        int: min(0, m_1, ..., m_(n-1)).
    """
    m = check_mvec(m)
    model = _model_for(m)
    value = min(model.pair(i, m) for i in range(1, model.n + 1))
    assert isinstance(value, int) and value == min((0,) + m), "vertex set of Delta is not the standard simplex"
    return value


def membership(r, m):
    """
    Whether t^r chi^m lies in A[D], i.e. r >= max(0, -D(m)).

    Args:
        r (int): Power of t.
        m (Sequence[int]): Degree in M.

    Returns:
        bool: True for members.
    """
    return r >= max(0, -dd_eval(m))


def to_ad(alpha):
    """
    Translate x^alpha into the lattice point (r, m) of A[D].

    Args:
        alpha (Sequence[int]): Exponent vector.

    Returns:
        tuple: (r, m) with r = alpha_n and m = mdeg(alpha).
    """
    alpha = tuple(alpha)
    check_exponent(alpha, len(alpha))
    return alpha[-1], mdeg_monomial(alpha)


def from_ad(r, m):
    """Inverse of to_ad; (r, m) must be a member of A[D]."""
    m = check_mvec(m)
    if not membership(r, m):
        raise DimensionError(f"t^{r} chi^{format_vec(m)} is not in A[D]")
    return tuple(mk + r for mk in m) + (r,)


@dataclass(frozen=True)
class ADMonomial:
    """A term coefficient * t^r * chi^m; may lie outside A[D] when produced by ad_apply."""

    coefficient: object
    r: int
    m: tuple

    @property
    def is_member(self):
        return membership(self.r, self.m)

    def __str__(self):
        return f"{self.coefficient} * t^{self.r} * chi^{format_vec(self.m)}"


@dataclass(frozen=True)
class ADDerivationSpec:
    """
    Parameters (lambda, i, e) of the derivation d_(lambda,i,e).

    Args:
        lam: Nonzero rational scalar.
        i (int): Vertex index 1..n.
        e (tuple): Degree in M.
    """

    lam: object
    i: int
    e: tuple

    def __post_init__(self):
        e = check_mvec(self.e)
        lam = to_rat(self.lam)
        if lam == 0:
            raise InadmissibleSpecError("lambda must be non-zero")
        check_index(self.i, len(e) + 1)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self):
        return len(self.e) + 1

    @property
    def model(self):
        return SimplexModel(self.n)

    def __str__(self):
        return f"lambda={self.lam}, i={self.i}, e={format_vec(self.e)}"


def admissible(i, e):
    """
    The condition v_j(e) >= v_i(e) + 1 for all j != i.

    Args:
        i (int): Vertex index 1..n.
        e (Sequence[int]): Degree in M.

    Returns:
        bool: True when d_(lam,i,e) restricts to an LND of A[D].
    """
    e = check_mvec(e)
    model = _model_for(e)
    check_index(i, model.n)
    base = model.pair(i, e)
    return all(model.pair(j, e) >= base + 1 for j in range(1, model.n + 1) if j != i)


def admissible_degrees(n, i, ebox):
    """
    Every e with |e_k| <= ebox for which (i, e) is admissible.

    For i < n that means e_i <= -1 and e_j >= e_i + 1; for i = n every
    e_j >= 1. Only admissible points are visited, not the whole box.

    Args:
        n (int): Number of variables.
        i (int): Vertex index 1..n.
        ebox (int): Box radius, at least 0.

    Yields:
        tuple: Degrees e in M.
    """
    check_dimension(n)
    check_index(i, n)
    if i == n:
        yield from product(range(1, ebox + 1), repeat=n - 1)
        return
    for low in range(-ebox, 0):
        for rest in product(range(low + 1, ebox + 1), repeat=n - 2):
            yield rest[: i - 1] + (low,) + rest[i - 1:]


def count_admissible_degrees(n, ebox):
    """Number of admissible (i, e) pairs with |e_k| <= ebox, summed over i."""
    check_dimension(n)
    return ebox ** (n - 1) + (n - 1) * sum((ebox + a) ** (n - 2) for a in range(1, ebox + 1))


@dataclass(frozen=True)
class ADApplication:
    """Result of ad_apply: `term` is None for zero, `member` flags membership in A[D]."""

    term: ADMonomial = None
    member: bool = True

    @property
    def is_zero(self):
        return self.term is None


def ad_apply(spec, term):
    """
    Apply d_(lam,i,e) to a term t^r chi^m.

    Args:
        spec (ADDerivationSpec): The derivation parameters.
        term (ADMonomial): The input term.

    Returns:
        ADApplication: The image, flagged when it leaves A[D].
    """
    model = spec.model
    factor = term.r + model.pair(spec.i, term.m)
    coefficient = spec.lam * to_rat(term.coefficient) * factor
    if coefficient == 0:
        return ADApplication()
    image = ADMonomial(coefficient, term.r - model.pair(spec.i, spec.e) - 1, vec_add(term.m, spec.e))
    return ADApplication(image, image.is_member)


def ad_image_of_generator(spec, j):
    """Image of x_j under d_(lam,i,e), computed on the A[D] side."""
    n = spec.n
    check_index(j, n)
    r = 1 if j == n else 0
    return ad_apply(spec, ADMonomial(to_rat(1), r, generator_degree(n, j)))


def translate_spec(spec):
    """
    The monomial derivation lam * x^alpha * d/dx_i equal to d_(lam,i,e) on K[x1..xn].

    For i < n: alpha_i = 0, alpha_n = -e_i - 1, alpha_k = e_k - e_i - 1.
    For i = n: alpha_n = 0, alpha_k = e_k - 1.

    Args:
        spec (ADDerivationSpec): An admissible spec.

    Returns:
        Derivation: The translated derivation.
    """
    if not admissible(spec.i, spec.e):
        raise InadmissibleSpecError(f"spec {spec} violates v_j(e) >= v_i(e) + 1")
    n, i, e = spec.n, spec.i, spec.e
    if i < n:
        ei = e[i - 1]
        alpha = tuple(0 if k == i else e[k - 1] - ei - 1 for k in range(1, n)) + (-ei - 1,)
    else:
        alpha = tuple(ek - 1 for ek in e) + (0,)
    return Derivation.monomial(alpha, i, spec.lam)


def spec_for_root_vector(lam, i, alpha):
    """
    Inverse of translate_spec: the (lam, i, e) triple whose translation is lam * x^alpha * d/dx_i.

    Args:
        lam: Nonzero scalar.
        i (int): Differentiated variable.
        alpha (Sequence[int]): Exponents with alpha_i = 0.

    Returns:
        ADDerivationSpec: (lam, i, e) with e = mdeg(alpha) - deg x_i.
    """
    alpha = tuple(alpha)
    n = check_dimension(len(alpha))
    check_index(i, n)
    if alpha[i - 1] != 0:
        raise InadmissibleSpecError(f"alpha_{i} must be 0 for a root vector, got {alpha}")
    return ADDerivationSpec(lam, i, vec_sub(mdeg_monomial(alpha), generator_degree(n, i)))


def box_members(n, bound):
    """
    Members (r, m) of A[D] with r + sum |m_k| <= bound.

    Args:
        n (int): Number of variables.
        bound (int): Size bound.

    Returns:
        list: (r, m) pairs.
    """
    members = []
    for m in product(range(-bound, bound + 1), repeat=n - 1):
        size = sum(abs(v) for v in m)
        for r in range(0, bound - size + 1):
            if membership(r, m):
                members.append((r, m))
    return members


def closure_check(spec, bound):
    """
    Brute-force check that d_(lam,i,e) maps A[D] into itself on a finite box.

    Args:
        spec (ADDerivationSpec): Derivation data, admissible or not.
        bound (int): Size bound, at least 1.

    Returns:
        bool: False as soon as a member is sent outside A[D].
    """
    if bound < 1:
        raise DimensionError(f"bound must be >= 1, got {bound}")
    one = to_rat(1)
    for r, m in box_members(spec.n, bound):
        if not ad_apply(spec, ADMonomial(one, r, m)).member:
            return False
    return True
