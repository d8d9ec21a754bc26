"""
Sparse Polynomial Implementation
Exact multivariate polynomials over the rationals in n variables x1..xn,
Laurent scalars in the torus parameters s1..s(n-1), and polynomials with
Laurent-scalar coefficients used for formal torus conjugation.

All values are immutable. Terms are stored in descending graded
lexicographic order, so equal polynomials print and hash identically.
"""

from fractions import Fraction
from numbers import Rational

from structures.errors import DimensionError
from utils.config import MAX_DIMENSION, MIN_DIMENSION

Rat = Fraction


def to_rat(value):
    """
    Coerce an exact scalar to a Fraction.

    Args:
        value (int, Fraction or str): The scalar. Floats are rejected.

    Returns:
        Fraction: The value in lowest terms.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(value, (Rational, str)):
        return Fraction(value)
    raise TypeError(f"exact rational expected, got {type(value).__name__}")


def grlex_key(alpha):
    """Sort key for graded lexicographic order on exponent vectors."""
    return (sum(alpha), tuple(alpha))


def check_dimension(n):
    if not isinstance(n, int) or not MIN_DIMENSION <= n <= MAX_DIMENSION:
        raise DimensionError(f"dimension must be in {MIN_DIMENSION}..{MAX_DIMENSION}, got {n}")
    return n


def check_exponent(alpha, n):
    """
    Validate an exponent vector.

    Args:
        alpha (Sequence[int]): Candidate exponents.
        n (int): Expected length.

    Returns:
        tuple: alpha as a tuple of ints.
    """
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise DimensionError(f"exponent vector {alpha} does not have length {n}")
    if any(not isinstance(a, int) or a < 0 for a in alpha):
        raise DimensionError(f"exponent vector {alpha} must be non-negative integers")
    return alpha


def check_index(i, n):
    if not isinstance(i, int) or not 1 <= i <= n:
        raise DimensionError(f"variable index must be in 1..{n}, got {i}")
    return i


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _canonical(acc, key=grlex_key):
    """Drop zero coefficients and order the remaining terms descending."""
    return dict(sorted(((k, c) for k, c in acc.items() if c), key=lambda kv: key(kv[0]), reverse=True))


def _format_monomial(alpha, symbol):
    factors = []
    for idx, power in enumerate(alpha, start=1):
        if power == 1:
            factors.append(f"{symbol}{idx}")
        elif power != 0:
            factors.append(f"{symbol}{idx}^{power}")
    return factors


def format_signed_sum(pieces):
    """Join (negative, body) pairs into a signed sum."""
    if not pieces:
        return "0"
    out = []
    for pos, (negative, body) in enumerate(pieces):
        if pos == 0:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


class Poly:
    """
    Polynomial in K[x1..xn] with exact rational coefficients.

    Args:
        n (int): Number of variables, 2..8.
        terms (Mapping or Iterable): exponent tuple -> coefficient, or pairs.
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, n, terms=None):
        check_dimension(n)
        acc = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for alpha, coeff in items:
            alpha = check_exponent(alpha, n)
            acc[alpha] = acc.get(alpha, Fraction(0)) + to_rat(coeff)
        self._n = n
        self._terms = _canonical(acc)
        self._hash = None

    @classmethod
    def _make(cls, n, acc):
        # Trusted constructor for arithmetic results.
        poly = object.__new__(cls)
        poly._n = n
        poly._terms = _canonical(acc)
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def one(cls, n):
        return cls.constant(n, 1)

    @classmethod
    def constant(cls, n, value):
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n, i):
        """
        The generator x_i.

        Args:
            n (int): Number of variables.
            i (int): One-based variable index.

        Returns:
            Poly: x_i.
        """
        check_index(i, n)
        return cls(n, {tuple(1 if k == i else 0 for k in range(1, n + 1)): 1})

    @classmethod
    def monomial(cls, alpha, coeff=1):
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: coeff})

    @property
    def n(self):
        return self._n

    def terms(self):
        """Return the (exponent, coefficient) pairs in canonical order."""
        return tuple(self._terms.items())

    def monomials(self):
        return tuple(self._terms)

    def num_terms(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self):
        """Largest total degree of a term (-1 for the zero polynomial)."""
        return max((sum(alpha) for alpha in self._terms), default=-1)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other._n != self._n:
                raise DimensionError(f"dimension mismatch: {self._n} vs {other._n}")
            return other
        if isinstance(other, (Rational, str)) and not isinstance(other, bool):
            return Poly.constant(self._n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for alpha, coeff in other._terms.items():
            acc[alpha] = acc.get(alpha, Fraction(0)) + coeff
        return Poly._make(self._n, acc)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self._n, {alpha: -c for alpha, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = _vec_add(a, b)
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return Poly._make(self._n, acc)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {k}")
        result = Poly.one(self._n)
        base = self
        # Square and multiply
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        c = to_rat(c)
        return Poly._make(self._n, {alpha: c * v for alpha, v in self._terms.items()})

    def partial(self, i):
        """
        Formal partial derivative with respect to x_i.

        Args:
            i (int): One-based variable index.

        Returns:
            Poly: d/dx_i of this polynomial.
        """
        check_index(i, self._n)
        k = i - 1
        acc = {}
        for alpha, coeff in self._terms.items():
            if alpha[k]:
                lowered = alpha[:k] + (alpha[k] - 1,) + alpha[k + 1:]
                acc[lowered] = coeff * alpha[k]
        return Poly._make(self._n, acc)

    def substitute(self, images):
        """
        Evaluate with x_i replaced by images[i-1].

        Args:
            images (Sequence[Poly]): n polynomials of a common dimension.

        Returns:
            Poly: The substituted polynomial.
        """
        images = list(images)
        if len(images) != self._n:
            raise DimensionError(f"substitution needs {self._n} images, got {len(images)}")
        target = images[0].n if isinstance(images[0], Poly) else None
        if target is None or any(not isinstance(g, Poly) or g.n != target for g in images):
            raise DimensionError("substitution images must be polynomials of one dimension")
        powers = [[Poly.one(target)] for _ in images]
        result = Poly.zero(target)
        for alpha, coeff in self._terms.items():
            term = Poly.constant(target, coeff)
            for k, e in enumerate(alpha):
                if e:
                    cache = powers[k]
                    while len(cache) <= e:
                        cache.append(cache[-1] * images[k])
                    term = term * cache[e]
            result = result + term
        return result

    def __eq__(self, other):
        if isinstance(other, TorusPoly):
            return other == self
        if not isinstance(other, Poly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self._n}, {str(self)!r})"

    def __str__(self):
        pieces = []
        for alpha, coeff in self._terms.items():
            factors = _format_monomial(alpha, "x")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            pieces.append((coeff < 0, body))
        return format_signed_sum(pieces)


def add(f, g):
    """
    Sum of two polynomials of the same dimension.

    Args:
        f (Poly): First summand.
        g (Poly): Second summand.

    Returns:
        Poly: f + g.
    """
    return f + g


def mul(f, g):
    """
    Product of two polynomials of the same dimension.

    Args:
        f (Poly): First factor.
        g (Poly): Second factor.

    Returns:
        Poly: f * g.
    """
    return f * g


def power(f, k):
    """
    Non-negative integer power by repeated squaring.

    Args:
        f (Poly): Base.
        k (int): Exponent, at least 0.

    Returns:
        Poly: f ** k (the constant 1 for k = 0).
    """
    return f ** k


def partial(f, i):
    """
    Partial derivative with respect to x_i.

    Args:
        f (Poly): Polynomial.
        i (int): Variable index, 1..n.

    Returns:
        Poly: df/dx_i.
    """
    return f.partial(i)


def substitute(f, images):
    """
    Ring homomorphism x_k -> images[k-1] applied to f.

    Args:
        f (Poly): Polynomial in n variables.
        images (Sequence[Poly]): n polynomials sharing one dimension.

    Returns:
        Poly: f(images[0], ..., images[n-1]).
    """
    return f.substitute(images)


def det(matrix):
    """
    Exact determinant by cofactor expansion along the first remaining row,
    memoized on the set of remaining columns.

    Args:
        matrix (Sequence[Sequence[Poly]]): Square matrix, at most 8x8. Scalar
            entries are allowed when at least one entry is a Poly.

    Returns:
        Poly: The determinant.
    """
    rows = [list(row) for row in matrix]
    size = len(rows)
    if size == 0 or any(len(row) != size for row in rows):
        raise DimensionError("determinant needs a non-empty square matrix")
    if size > MAX_DIMENSION:
        raise DimensionError(f"determinant limited to {MAX_DIMENSION}x{MAX_DIMENSION}")
    dims = {entry.n for row in rows for entry in row if isinstance(entry, Poly)}
    if len(dims) != 1:
        raise DimensionError("matrix entries must be polynomials of one dimension")
    n = dims.pop()
    rows = [[entry if isinstance(entry, Poly) else Poly.constant(n, entry) for entry in row] for row in rows]

    memo = {(): Poly.one(n)}

    def minor(cols):
        if cols in memo:
            return memo[cols]
        row = rows[size - len(cols)]
        total = Poly.zero(n)
        for pos, col in enumerate(cols):
            entry = row[col]
            if entry.is_zero():
                continue
            term = entry * minor(cols[:pos] + cols[pos + 1:])
            total = total + term if pos % 2 == 0 else total - term
        memo[cols] = total
        return total

    return minor(tuple(range(size)))


class LaurentScalar:
    """
    Laurent polynomial in the torus parameters s1..sk with rational coefficients.

    Args:
        k (int): Number of parameters (n - 1).
        terms (Mapping or Iterable): integer exponent tuple -> coefficient.
    """

    __slots__ = ("_k", "_terms")

    def __init__(self, k, terms=None):
        if not isinstance(k, int) or k < 1:
            raise DimensionError(f"number of torus parameters must be >= 1, got {k}")
        acc = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != k or any(not isinstance(e, int) for e in exps):
                raise DimensionError(f"Laurent exponent {exps} must be {k} integers")
            acc[exps] = acc.get(exps, Fraction(0)) + to_rat(coeff)
        self._k = k
        self._terms = _canonical(acc)

    @classmethod
    def _make(cls, k, acc):
        scalar = object.__new__(cls)
        scalar._k = k
        scalar._terms = _canonical(acc)
        return scalar

    @classmethod
    def monomial(cls, exponents, coeff=1):
        exponents = tuple(exponents)
        return cls(len(exponents), {exponents: coeff})

    @classmethod
    def constant(cls, k, value):
        return cls(k, {(0,) * k: value})

    @property
    def k(self):
        return self._k

    def terms(self):
        return tuple(self._terms.items())

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        """True when no term involves a torus parameter."""
        return all(not any(exps) for exps in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self._k, Fraction(0))

    def _coerce(self, other):
        if isinstance(other, LaurentScalar):
            if other._k != self._k:
                raise DimensionError(f"parameter count mismatch: {self._k} vs {other._k}")
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return LaurentScalar.constant(self._k, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for exps, c in other._terms.items():
            acc[exps] = acc.get(exps, Fraction(0)) + c
        return LaurentScalar._make(self._k, acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentScalar._make(self._k, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                key = _vec_add(a, b)
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return LaurentScalar._make(self._k, acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._k == other._k and self._terms == other._terms

    def __hash__(self):
        return hash((self._k, tuple(self._terms.items())))

    def __repr__(self):
        return f"LaurentScalar({self._k}, {str(self)!r})"

    def __str__(self):
        pieces = []
        for exps, coeff in self._terms.items():
            factors = _format_monomial(exps, "s")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            pieces.append((coeff < 0, body))
        return format_signed_sum(pieces)


class TorusPoly:
    """
    Polynomial in x1..xn whose coefficients are LaurentScalar values in s1..s(n-1).

    Args:
        n (int): Number of variables.
        terms (Mapping or Iterable): exponent tuple -> LaurentScalar.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n, terms=None):
        check_dimension(n)
        acc = {}
        items = terms.items() if hasattr(terms, "items") else (terms or ())
        for alpha, scalar in items:
            alpha = check_exponent(alpha, n)
            if not isinstance(scalar, LaurentScalar):
                scalar = LaurentScalar.constant(n - 1, to_rat(scalar))
            elif scalar.k != n - 1:
                raise DimensionError(f"coefficients need {n - 1} torus parameters, got {scalar.k}")
            acc[alpha] = acc[alpha] + scalar if alpha in acc else scalar
        self._n = n
        self._terms = dict(
            sorted(((a, s) for a, s in acc.items() if not s.is_zero()), key=lambda kv: grlex_key(kv[0]), reverse=True)
        )

    @classmethod
    def from_poly(cls, poly):
        k = poly.n - 1
        return cls(poly.n, {alpha: LaurentScalar.constant(k, c) for alpha, c in poly.terms()})

    @property
    def n(self):
        return self._n

    def terms(self):
        return tuple(self._terms.items())

    def is_zero(self):
        return not self._terms

    def collapse(self):
        """
        Return the equivalent Poly when every coefficient is parameter-free,
        otherwise this TorusPoly unchanged.
        """
        if all(s.is_constant() for s in self._terms.values()):
            return Poly(self._n, {a: s.constant_value() for a, s in self._terms.items()})
        return self

    def scale(self, scalar):
        """Multiply every coefficient by a LaurentScalar (or a rational)."""
        if not isinstance(scalar, LaurentScalar):
            scalar = LaurentScalar.constant(self._n - 1, to_rat(scalar))
        return TorusPoly(self._n, {a: s * scalar for a, s in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, Poly):
            other = TorusPoly.from_poly(other)
        if not isinstance(other, TorusPoly):
            return NotImplemented
        if other._n != self._n:
            raise DimensionError(f"dimension mismatch: {self._n} vs {other._n}")
        return TorusPoly(self._n, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return TorusPoly(self._n, {a: -s for a, s in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, Poly):
            other = TorusPoly.from_poly(other)
        if not isinstance(other, TorusPoly):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, Poly):
            other = TorusPoly.from_poly(other)
        if not isinstance(other, TorusPoly):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        collapsed = self.collapse()
        if collapsed is not self:
            # must agree with the Poly it equals
            return hash(collapsed)
        return hash((self._n, tuple(self._terms.items())))

    def __repr__(self):
        return f"TorusPoly({self._n}, {str(self)!r})"

    def __str__(self):
        pieces = []
        for alpha, scalar in self._terms.items():
            factors = _format_monomial(alpha, "x")
            single = len(scalar.terms()) == 1
            if single:
                (exps, coeff), = scalar.terms()
                negative = coeff < 0
                head = str(-scalar if negative else scalar)
            else:
                negative = False
                head = f"({scalar})"
            if not factors:
                body = head
            elif head == "1":
                body = "*".join(factors)
            else:
                body = f"{head}*" + "*".join(factors)
            pieces.append((negative, body))
        return format_signed_sum(pieces)
