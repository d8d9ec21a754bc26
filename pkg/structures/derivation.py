"""
Derivation Implementation
K-derivations of the polynomial ring K[x1..xn], given by the images of the
generators. Provides application, a cap-bounded local-nilpotency certificate,
M-homogeneity and degree, exponentiation to automorphisms, formal conjugation
by the diagonal torus and the root-vector decision.

Nilpotency certificate: if d^(k_j)(x_j) = 0 for every generator x_j, the
Leibniz rule gives d^k(f) = 0 for every polynomial f and k large enough, so
vanishing on generators proves local nilpotency. The converse direction is
never claimed; a chain that is still nonzero at the cap is inconclusive.

Torus action: gamma = diag(gamma_1..gamma_n) sends x_k to gamma_k * x_k. The
generic element uses parameters s1..s(n-1) with the n-th entry
(s1...s(n-1))^-1, so the k-th entry is the Laurent monomial s^(deg x_k).
"""

import logging
from dataclasses import dataclass
from enum import Enum

from structures.errors import DimensionError, InternalInconsistencyError, NotProvenError, ZeroDerivationError
from structures.grading import (
    format_vec,
    generator_degree,
    is_homogeneous,
    mdeg_monomial,
    mvec_to_char,
    vec_sub,
)
from structures.poly import (
    LaurentScalar,
    Poly,
    TorusPoly,
    check_dimension,
    check_exponent,
    check_index,
    det,
    format_signed_sum,
    to_rat,
)
from utils.config import resolve_cap

logger = logging.getLogger(__name__)


class Derivation:
    """
    Derivation d of K[x1..xn] determined by d(x_1), ..., d(x_n).

    Args:
        images (Sequence[Poly]): The n generator images, all of dimension n.
    """

    __slots__ = ("_n", "_images")

    def __init__(self, images):
        images = tuple(images)
        if not images or not all(isinstance(g, Poly) for g in images):
            raise DimensionError("a derivation needs a non-empty sequence of polynomials")
        n = images[0].n
        if len(images) != n or any(g.n != n for g in images):
            raise DimensionError(f"a derivation of K[x1..x{n}] needs {n} images of dimension {n}")
        self._n = n
        self._images = images

    @classmethod
    def zero(cls, n):
        check_dimension(n)
        return cls([Poly.zero(n)] * n)

    @classmethod
    def monomial(cls, alpha, i, lam=1):
        """
        The derivation lam * x^alpha * d/dx_i.

        Args:
            alpha (Sequence[int]): Exponent vector of length n.
            i (int): One-based index of the differentiated variable.
            lam (int, Fraction or str): Scalar factor.

        Returns:
            Derivation: The monomial derivation.
        """
        alpha = tuple(alpha)
        n = check_dimension(len(alpha))
        check_exponent(alpha, n)
        check_index(i, n)
        images = [Poly.zero(n)] * n
        images[i - 1] = Poly(n, {alpha: to_rat(lam)})
        return cls(images)

    @property
    def n(self):
        return self._n

    @property
    def images(self):
        return self._images

    def image(self, j):
        check_index(j, self._n)
        return self._images[j - 1]

    def is_zero(self):
        return all(g.is_zero() for g in self._images)

    def nonzero_indices(self):
        return [j for j, g in enumerate(self._images, start=1) if not g.is_zero()]

    def image_degree(self):
        return max(g.total_degree() for g in self._images)

    def apply(self, f):
        """
        Apply the derivation: sum over i of d(x_i) * df/dx_i.

        Args:
            f (Poly): A polynomial of the same dimension.

        Returns:
            Poly: d(f).
        """
        if not isinstance(f, Poly) or f.n != self._n:
            raise DimensionError(f"derivation of dimension {self._n} applied to a different ring")
        result = Poly.zero(self._n)
        for i, g in enumerate(self._images, start=1):
            if not g.is_zero():
                result = result + g * f.partial(i)
        return result

    def __call__(self, f):
        return self.apply(f)

    def __add__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return Derivation(a + b for a, b in zip(self._images, other._images))

    def __neg__(self):
        return Derivation(-g for g in self._images)

    def __sub__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        return Derivation(g.scale(c) for g in self._images)

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        return hash(self._images)

    def __repr__(self):
        return f"Derivation({self.to_terms()!r})"

    def __str__(self):
        return ", ".join(str(g) for g in self._images)

    def to_terms(self):
        """Render as a sum of `<poly> d/dx<i>` terms (the other accepted input form)."""
        pieces = []
        for j, g in enumerate(self._images, start=1):
            if g.is_zero():
                continue
            if g.num_terms() == 1:
                (alpha, coeff), = g.terms()
                magnitude = str(Poly(self._n, {alpha: abs(coeff)}))
                body = f"d/dx{j}" if magnitude == "1" else f"{magnitude} d/dx{j}"
                pieces.append((coeff < 0, body))
            else:
                pieces.append((False, f"({g}) d/dx{j}"))
        return format_signed_sum(pieces)


@dataclass(frozen=True)
class LndProven:
    """Every generator chain vanished; orders[j-1] is the minimal k with d^k(x_j) = 0."""

    orders: tuple

    proven = True


@dataclass(frozen=True)
class LndExhausted:
    """
    Some generator chain was still nonzero after `cap` applications.

    status[j-1] is the order reached for x_j, or None if its chain never vanished.
    """

    cap: int
    status: tuple

    proven = False


def lnd_check(d, cap=None):
    """
    Cap-bounded local nilpotency certificate.

    Args:
        d (Derivation): The derivation.
        cap (int): Applications tried per generator; None picks the configured default.

    Returns:
        LndProven or LndExhausted: The verdict. Never claims "not locally nilpotent".
    """
    cap = resolve_cap(cap, d.n, d.image_degree())
    status = []
    for j in range(1, d.n + 1):
        current = Poly.variable(d.n, j)
        order = None
        for k in range(1, cap + 1):
            current = d.apply(current)
            if current.is_zero():
                order = k
                break
        status.append(order)
    if all(order is not None for order in status):
        return LndProven(tuple(status))
    logger.debug("Nilpotency cap %d exhausted for %s", cap, d.to_terms())
    return LndExhausted(cap, tuple(status))


def image_homogeneity(d):
    """Homogeneity verdicts of the generator images, in generator order."""
    return [is_homogeneous(g) for g in d.images]


def derivation_homogeneity(d):
    """
    Degree of a homogeneous derivation.

    d is homogeneous of degree e when every nonzero image d(x_j) lies in
    B_(deg x_j + e).

    Args:
        d (Derivation): A nonzero derivation.

    Returns:
        tuple or None: e as an MVec, or None if d is not homogeneous.
    """
    if d.is_zero():
        raise ZeroDerivationError("the zero derivation has no degree")
    degree = None
    for j, verdict in enumerate(image_homogeneity(d), start=1):
        if verdict.is_zero:
            continue
        if not verdict.is_homogeneous:
            return None
        e = vec_sub(verdict.degree, generator_degree(d.n, j))
        if degree is None:
            degree = e
        elif degree != e:
            return None
    return degree


class Automorphism:
    """
    Endomorphism of K[x1..xn] sending x_j to images[j-1].

    Args:
        images (Sequence[Poly]): The n generator images.
    """

    __slots__ = ("_n", "_images")

    def __init__(self, images):
        images = tuple(images)
        if not images or not all(isinstance(g, Poly) for g in images):
            raise DimensionError("an automorphism needs a non-empty sequence of polynomials")
        n = images[0].n
        if len(images) != n or any(g.n != n for g in images):
            raise DimensionError(f"an automorphism of K[x1..x{n}] needs {n} images of dimension {n}")
        self._n = n
        self._images = images

    @classmethod
    def identity(cls, n):
        return cls(Poly.variable(n, j) for j in range(1, n + 1))

    @property
    def n(self):
        return self._n

    @property
    def images(self):
        return self._images

    def apply(self, f):
        return f.substitute(self._images)

    def compose(self, other):
        """Return self o other, i.e. x_j -> self(other(x_j))."""
        return Automorphism(self.apply(g) for g in other.images)

    def jacobian(self):
        """Matrix (d/dx_i images[j])_(i,j)."""
        return [[g.partial(i) for g in self._images] for i in range(1, self._n + 1)]

    def jacobian_determinant(self):
        return det(self.jacobian())

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self._images == other._images

    def __hash__(self):
        return hash(self._images)

    def __repr__(self):
        return f"Automorphism({str(self)!r})"

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self._images) + ")"


def exp(d, t, verdict=None):
    """
    The automorphism exp(t*d) for a proven locally nilpotent derivation.

    Args:
        d (Derivation): The derivation.
        t (int, Fraction or str): Time parameter.
        verdict (LndProven): Certificate for d; computed with the default cap when None.

    Returns:
        Automorphism: x_j -> sum_k t^k d^k(x_j) / k!, a finite sum.
    """
    if verdict is None:
        verdict = lnd_check(d)
    if not verdict.proven:
        raise NotProvenError(f"exp needs a proven LND; nilpotency cap {verdict.cap} was exhausted")
    t = to_rat(t)
    images = []
    for j, order in enumerate(verdict.orders, start=1):
        current = Poly.variable(d.n, j)
        total = current
        coeff = to_rat(1)
        for k in range(1, order):
            current = d.apply(current)
            coeff = coeff * t / k
            total = total + current.scale(coeff)
        images.append(total)
    return Automorphism(images)


def is_volume_preserving(a):
    """True when the Jacobian determinant of a is the constant 1."""
    return a.jacobian_determinant() == Poly.one(a.n)


def character_scalar(e):
    """The Laurent monomial chi^e(s) = s1^e1 ... s(n-1)^e(n-1)."""
    return LaurentScalar.monomial(e)


def conjugate_formal(d):
    """
    Generator images of gamma o d o gamma^-1 for the generic torus element.

    gamma^-1 sends x_j to s^(-deg x_j) x_j and gamma sends x^alpha to
    s^(mdeg alpha) x^alpha, so the image of x_j is
    s^(-deg x_j) * d(x_j)(s^(deg x_1) x_1, ..., s^(deg x_n) x_n).

    Args:
        d (Derivation): The derivation.

    Returns:
        list: n images; a TorusPoly where torus parameters remain, a Poly
        where they cancel.
    """
    conjugated = []
    for j, g in enumerate(d.images, start=1):
        shift = generator_degree(d.n, j)
        image = TorusPoly(
            d.n, {alpha: LaurentScalar.monomial(vec_sub(mdeg_monomial(alpha), shift), c) for alpha, c in g.terms()}
        )
        conjugated.append(image.collapse())
    return conjugated


class NotRootReason(Enum):
    NOT_HOMOGENEOUS = "not-homogeneous"
    NOT_LND_WITHIN_CAP = "not-LND-within-cap"
    ZERO_DERIVATION = "zero-derivation"


@dataclass(frozen=True)
class IsRoot:
    """d = lam * x^alpha * d/dx_i with alpha_i = 0, a root vector with root chi^root."""

    root: tuple
    lam: object
    i: int
    alpha: tuple
    verdict: LndProven

    is_root = True

    @property
    def character(self):
        return mvec_to_char(self.root)

    def normal_form(self):
        return Derivation.monomial(self.alpha, self.i, self.lam)

    def describe(self):
        return (
            f"root vector: {self.normal_form().to_terms()}; root {format_vec(self.root)}, "
            f"character {self.character}"
        )


@dataclass(frozen=True)
class NotRoot:
    reason: NotRootReason
    verdict: object = None
    detail: str = ""

    is_root = False

    def describe(self):
        text = f"not a root vector ({self.reason.value})"
        return f"{text}: {self.detail}" if self.detail else text


def root_check(d, cap=None):
    """
    Decide whether d is a root vector of the volume-preserving automorphism
    group with respect to the diagonal torus.

    A nonzero LND is a root vector exactly when it is M-homogeneous, and its
    root is chi^(deg d). The conjugation identity is verified as well.

    Args:
        d (Derivation): The candidate.
        cap (int): Nilpotency cap; None picks the configured default.

    Returns:
        IsRoot or NotRoot: The verdict.
    """
    if d.is_zero():
        return NotRoot(NotRootReason.ZERO_DERIVATION, detail="root vectors are non-zero")
    e = derivation_homogeneity(d)
    if e is None:
        detail = "; ".join(f"d(x{j}) {v.describe()}" for j, v in enumerate(image_homogeneity(d), start=1))
        return NotRoot(NotRootReason.NOT_HOMOGENEOUS, detail=detail)
    verdict = lnd_check(d, cap)
    if not verdict.proven:
        return NotRoot(NotRootReason.NOT_LND_WITHIN_CAP, verdict, f"cap {verdict.cap} exhausted")

    chi = character_scalar(e)
    if conjugate_formal(d) != [TorusPoly.from_poly(g).scale(chi) for g in d.images]:
        raise InternalInconsistencyError(f"conjugation identity fails for {d.to_terms()} of degree {format_vec(e)}")
    nonzero = d.nonzero_indices()
    if len(nonzero) != 1 or d.image(nonzero[0]).num_terms() != 1:
        raise InternalInconsistencyError(f"homogeneous LND {d.to_terms()} is not a monomial derivation")
    i = nonzero[0]
    (alpha, lam), = d.image(i).terms()
    if alpha[i - 1] != 0:
        raise InternalInconsistencyError(f"homogeneous LND {d.to_terms()} has alpha_{i} != 0")
    return IsRoot(root=e, lam=lam, i=i, alpha=alpha, verdict=verdict)
