"""
Root Vector Classification
Enumerates the root vectors x^alpha d/dx_i (alpha_i = 0) of the
volume-preserving automorphism group with respect to the diagonal torus,
computes their roots, decides which characters are roots, cross-validates the
enumeration against the polyhedral-divisor parameterization and runs a seeded
oracle search for homogeneous LNDs outside the monomial form.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from structures.ahmodel import (
    ADDerivationSpec,
    admissible,
    admissible_degrees,
    count_admissible_degrees,
    spec_for_root_vector,
    translate_spec,
)
from structures.derivation import Derivation, derivation_homogeneity, lnd_check, root_check
from structures.errors import DimensionError, InternalInconsistencyError
from structures.grading import (
    CharClass,
    bounded_exponents,
    char_to_mvec,
    format_vec,
    generator_degree,
    monomial_basis,
    normalize_char,
    vec_add,
)
from structures.poly import Poly, check_dimension, check_exponent, check_index
from utils.config import (
    DEFAULT_BUDGET,
    DEFAULT_EBOX,
    DEFAULT_SEED,
    MAX_CROSS_SPECS,
    MAX_DIMENSION,
    MAX_EBOX,
    MAX_ENUM_DEGREE,
    MIN_DIMENSION,
    ORACLE_CAP,
    ORACLE_COEFFICIENTS,
    ORACLE_MAX_DEGREE,
    ORACLE_MAX_DIMENSION,
    ORACLE_RANDOM_DENOMINATOR,
    ORACLE_RANDOM_NUMERATOR,
    ORACLE_STALE_DRAWS,
)
from utils.sorter import entry_sort_key, merge_sorted_runs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootVectorEntry:
    """
    One root vector x^alpha d/dx_i together with its root.

    root is the canonical character class of alpha - unit_i and mvec its
    coordinates in M.
    """

    i: int
    alpha: tuple
    root: CharClass
    mvec: tuple

    def derivation(self, lam=1):
        return Derivation.monomial(self.alpha, self.i, lam)

    def to_dict(self):
        return {
            "i": self.i,
            "alpha": list(self.alpha),
            "character": list(self.root.beta),
            "mvec": list(self.mvec),
        }


def _check_enumeration(n, dmax):
    if not isinstance(n, int) or not MIN_DIMENSION <= n <= MAX_DIMENSION:
        raise DimensionError(f"n must be in {MIN_DIMENSION}..{MAX_DIMENSION}, got {n}")
    if not isinstance(dmax, int) or not 0 <= dmax <= MAX_ENUM_DEGREE:
        raise DimensionError(f"max degree must be in 0..{MAX_ENUM_DEGREE}, got {dmax}")


def expected_count(n, dmax):
    """Closed form n * C(dmax + n - 1, n - 1) for the number of root vectors."""
    return n * comb(dmax + n - 1, n - 1)


def root_character(i, alpha):
    """
    The root gamma -> gamma_i^-1 * prod gamma_j^alpha_j of x^alpha d/dx_i.

    Args:
        i (int): Differentiated variable.
        alpha (Sequence[int]): Exponents with alpha_i = 0.

    Returns:
        CharClass: normalize_char(alpha - unit_i).
    """
    alpha = tuple(alpha)
    n = check_dimension(len(alpha))
    check_exponent(alpha, n)
    check_index(i, n)
    if alpha[i - 1] != 0:
        raise DimensionError(f"alpha_{i} must be 0, got {alpha}")
    return normalize_char(tuple(a - (1 if k == i else 0) for k, a in enumerate(alpha, start=1)))


def _entries_for_index(n, dmax, i):
    entries = []
    for rest in bounded_exponents(n - 1, dmax):
        alpha = rest[: i - 1] + (0,) + rest[i - 1:]
        root = root_character(i, alpha)
        entries.append(RootVectorEntry(i, alpha, root, char_to_mvec(root)))
    return entries


def enumerate_root_vectors(n, dmax, jobs=1):
    """
    All root vectors x^alpha d/dx_i with total degree of alpha at most dmax.

    Args:
        n (int): Number of variables, 2..8.
        dmax (int): Degree bound, 0..12.
        jobs (int): Worker threads; the result does not depend on it.

    Returns:
        list: RootVectorEntry values sorted by i, then graded lex on alpha.
    """
    _check_enumeration(n, dmax)
    logger.info("Enumerating root vectors for n=%d up to degree %d...", n, dmax)
    indices = range(1, n + 1)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(lambda i: _entries_for_index(n, dmax, i), indices))
    else:
        runs = [_entries_for_index(n, dmax, i) for i in indices]
    entries = merge_sorted_runs(runs, entry_sort_key)
    logger.info("Found %d root vectors.", len(entries))
    return entries


def is_root_character(beta):
    """
    Whether gamma -> prod gamma_j^beta_j is a root: the minimum of beta is
    attained exactly once.

    Args:
        beta (Sequence[int]): n integers.

    Returns:
        bool: True for roots.
    """
    beta = tuple(beta)
    check_dimension(len(beta))
    if any(not isinstance(b, int) for b in beta):
        raise DimensionError(f"character exponents {beta} must be integers")
    return beta.count(min(beta)) == 1


def root_vector_for_character(beta):
    """
    The root vector x^alpha d/dx_i whose root is the given character.

    Args:
        beta (Sequence[int]): n integers.

    Returns:
        tuple or None: (i, alpha), or None when beta is not a root.
    """
    if not is_root_character(beta):
        return None
    beta = tuple(beta)
    low = min(beta)
    i = beta.index(low) + 1
    alpha = tuple(b - low - 1 + (1 if k == i else 0) for k, b in enumerate(beta, start=1))
    return i, alpha


@dataclass
class CrossValidationReport:
    n: int
    dmax: int
    ebox: int
    entries: int = 0
    specs: int = 0
    specs_in_range: int = 0
    matched: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "n": self.n,
            "max_deg": self.dmax,
            "ebox": self.ebox,
            "entries": self.entries,
            "admissible_specs": self.specs,
            "specs_in_range": self.specs_in_range,
            "matched": self.matched,
            "violations": list(self.violations),
            "pass": self.passed,
        }


def _entry_problems(entry):
    """Invariant violations of a single enumerated entry."""
    n = len(entry.alpha)
    if entry.alpha[entry.i - 1] != 0:
        return [f"entry i={entry.i}, alpha={format_vec(entry.alpha)}: alpha_{entry.i} != 0"]
    problems = []
    label = f"entry i={entry.i}, alpha={format_vec(entry.alpha)}"
    beta = tuple(a - (1 if k == entry.i else 0) for k, a in enumerate(entry.alpha, start=1))
    if entry.root != normalize_char(beta):
        problems.append(f"{label}: character {entry.root} != class of {format_vec(beta)}")
    if entry.mvec != char_to_mvec(entry.root):
        problems.append(f"{label}: mvec {format_vec(entry.mvec)} does not match its character")
    d = entry.derivation()
    if derivation_homogeneity(d) != entry.mvec:
        problems.append(f"{label}: degree of the derivation differs from mvec")
    verdict = root_check(d, cap=2 * n + 4)
    if not verdict.is_root:
        problems.append(f"{label}: root_check says {verdict.describe()}")
    elif verdict.root != entry.mvec or verdict.alpha != entry.alpha or verdict.i != entry.i:
        problems.append(f"{label}: root_check normal form {verdict.describe()} disagrees")
    return problems


def cross_validate(n, dmax, ebox=DEFAULT_EBOX, entries=None):
    """
    Compare the enumeration with the translated admissible specs (lambda=1, i, e).

    Checks (a) every admissible spec with |e_k| <= ebox whose translation fits
    in degree dmax is enumerated with root e; (b) every entry is consistent and,
    when its degree lies in the box, has exactly one admissible preimage;
    (c) no two entries share a character.

    Args:
        n (int): Number of variables.
        dmax (int): Degree bound.
        ebox (int): Box radius for e, at most 6.
        entries (list): Entries to validate; enumerated when None.

    Returns:
        CrossValidationReport: Violations are data, an empty list means pass.
    """
    _check_enumeration(n, dmax)
    if not isinstance(ebox, int) or not 0 <= ebox <= MAX_EBOX:
        raise DimensionError(f"ebox must be in 0..{MAX_EBOX}, got {ebox}")
    workload = count_admissible_degrees(n, ebox)
    if workload > MAX_CROSS_SPECS:
        raise DimensionError(
            f"ebox={ebox} gives {workload} admissible specs for n={n}, more than {MAX_CROSS_SPECS}; use a smaller ebox"
        )
    if entries is None:
        entries = enumerate_root_vectors(n, dmax)
    logger.info("Cross-validating %d entries against admissible specs (ebox=%d)...", len(entries), ebox)
    report = CrossValidationReport(n, dmax, ebox, entries=len(entries))

    by_key = {}
    for entry in entries:
        key = (entry.i, tuple(entry.alpha))
        if key in by_key:
            report.violations.append(f"(b) duplicate entry i={entry.i}, alpha={format_vec(entry.alpha)}")
        by_key.setdefault(key, entry)

    preimages = {}
    for i in range(1, n + 1):
        for e in admissible_degrees(n, i, ebox):
            if not admissible(i, e):
                report.violations.append(f"(a) i={i}, e={format_vec(e)} listed as admissible but fails the vertex test")
                continue
            report.specs += 1
            spec = ADDerivationSpec(1, i, e)
            (alpha, _), = translate_spec(spec).image(i).terms()
            preimages.setdefault((i, alpha), []).append(e)
            if sum(alpha) > dmax:
                continue
            report.specs_in_range += 1
            entry = by_key.get((i, alpha))
            if entry is None:
                report.violations.append(f"(a) spec {spec} translates to an unlisted root vector alpha={format_vec(alpha)}")
            elif entry.mvec != e:
                report.violations.append(f"(a) spec {spec}: enumerated root {format_vec(entry.mvec)} != e")

    for entry in entries:
        problems = _entry_problems(entry)
        if not problems:
            e = spec_for_root_vector(1, entry.i, entry.alpha).e
            if all(abs(v) <= ebox for v in e):
                count = len(preimages.get((entry.i, tuple(entry.alpha)), []))
                if count != 1:
                    problems.append(
                        f"(b) entry i={entry.i}, alpha={format_vec(entry.alpha)} has {count} admissible preimages"
                    )
        else:
            problems = [f"(b) {p}" for p in problems]
        report.violations.extend(problems)
        if not problems:
            report.matched += 1

    owners = {}
    for entry in entries:
        other = owners.setdefault(entry.root, entry)
        if other is not entry:
            report.violations.append(
                f"(c) character {entry.root} shared by alpha={format_vec(other.alpha)} (i={other.i}) "
                f"and alpha={format_vec(entry.alpha)} (i={entry.i})"
            )

    logger.info("Cross-validation finished: %d matched, %d violations.", report.matched, len(report.violations))
    return report


@dataclass
class OracleReport:
    """
    Coverage and outcome of one oracle search.

    tested and distinct both count pairwise distinct candidates; draws also
    counts repeats that were discarded. exhausted means the generator ran
    out of new candidates before reaching the budget.
    """

    n: int
    dmax: int
    budget: int
    seed: int
    tested: int = 0
    distinct: int = 0
    draws: int = 0
    exhausted: bool = False
    skipped_inhomogeneous: int = 0
    inconclusive: int = 0
    proven_monomial: int = 0
    counterexamples: list = field(default_factory=list)
    theorem_checked: int = 0
    theorem_failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.counterexamples and not self.theorem_failures

    def to_dict(self):
        return {
            "n": self.n,
            "max_deg": self.dmax,
            "budget": self.budget,
            "seed": self.seed,
            "tested": self.tested,
            "distinct": self.distinct,
            "draws": self.draws,
            "exhausted": self.exhausted,
            "skipped_inhomogeneous": self.skipped_inhomogeneous,
            "inconclusive": self.inconclusive,
            "proven_monomial": self.proven_monomial,
            "counterexamples": list(self.counterexamples),
            "theorem_checked": self.theorem_checked,
            "theorem_failures": list(self.theorem_failures),
            "pass": self.passed,
        }


def is_monomial_form(d):
    """True when d = lam * x^alpha * d/dx_i with alpha_i = 0."""
    nonzero = d.nonzero_indices()
    if len(nonzero) != 1:
        return False
    image = d.image(nonzero[0])
    if image.num_terms() != 1:
        return False
    (alpha, _), = image.terms()
    return alpha[nonzero[0] - 1] == 0


class _CandidateSource:
    """
    Seeded generator of distinct derivation candidates: a fixed grid of
    monomial derivations, then random draws with repeats discarded.

    draws counts every generated candidate, repeats included. exhausted is set
    when ORACLE_STALE_DRAWS consecutive draws produced nothing new.
    """

    def __init__(self, n, dmax, seed):
        self.n = n
        self.dmax = dmax
        self.rng = random.Random(seed)
        self.coefficients = [Fraction(c) for c in ORACLE_COEFFICIENTS]
        self.random_coefficients = sorted(
            {
                sign * Fraction(p, q)
                for sign in (1, -1)
                for p in range(1, ORACLE_RANDOM_NUMERATOR + 1)
                for q in range(1, ORACLE_RANDOM_DENOMINATOR + 1)
            }
        )
        self.draws = 0
        self.exhausted = False
        radius = dmax + 1
        box = list(product(range(-radius, radius + 1), repeat=n - 1))
        self._basis = {}
        # degrees e for which B_(deg x_j + e) has a monomial of degree <= dmax
        self.degrees_for = {j: [e for e in box if self.basis(j, e)] for j in range(1, n + 1)}
        self.degrees = sorted({e for js in self.degrees_for.values() for e in js})

    def basis(self, j, e):
        key = (j, e)
        if key not in self._basis:
            self._basis[key] = monomial_basis(vec_add(generator_degree(self.n, j), e), self.dmax)
        return self._basis[key]

    def grid(self):
        for j in range(1, self.n + 1):
            for alpha in bounded_exponents(self.n, self.dmax):
                yield Derivation.monomial(alpha, j)

    def draw(self):
        rng, n = self.rng, self.n
        while True:
            e = rng.choice(self.degrees)
            mixed = rng.random() < 0.2
            supported = [j for j in range(1, n + 1) if mixed or e in self.degrees_for[j]]
            chosen = rng.sample(supported, min(len(supported), rng.choice((1, 2))))
            images = [Poly.zero(n)] * n
            for j in chosen:
                degree = rng.choice(self.degrees_for[j]) if mixed else e
                monomials = self.basis(j, degree)
                picked = rng.sample(monomials, min(len(monomials), rng.choice((1, 2))))
                images[j - 1] = Poly(n, {alpha: rng.choice(self.random_coefficients) for alpha in picked})
            d = Derivation(images)
            if not d.is_zero():
                return d

    def candidates(self, budget):
        """Yield up to budget pairwise distinct candidates."""
        seen = set()
        for d in self.grid():
            if len(seen) >= budget:
                return
            self.draws += 1
            if d not in seen:
                seen.add(d)
                yield d
        stale = 0
        while len(seen) < budget:
            d = self.draw()
            self.draws += 1
            if d in seen:
                stale += 1
                if stale >= ORACLE_STALE_DRAWS:
                    self.exhausted = True
                    return
                continue
            stale = 0
            seen.add(d)
            yield d


def _classify_candidate(d, cap):
    """Outcome label and message for one oracle candidate."""
    e = derivation_homogeneity(d)
    if e is None:
        return "skipped", None
    verdict = lnd_check(d, cap)
    if not verdict.proven:
        return "inconclusive", None
    if not is_monomial_form(d):
        return "counterexample", f"{d.to_terms()} is a homogeneous LND of degree {format_vec(e)} outside the monomial form"
    result = root_check(d, cap)
    if not result.is_root or result.root != e:
        return "counterexample", f"{d.to_terms()}: root_check disagrees ({result.describe()})"
    return "monomial", None


def oracle_search(n, dmax, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED, cap=ORACLE_CAP, jobs=1):
    """
    Seeded search for homogeneous proven LNDs that are not monomial derivations.

    Args:
        n (int): Number of variables, 2 or 3.
        dmax (int): Degree bound for candidate images, at most 4.
        budget (int): Number of distinct candidates to test; fewer when the
            candidate space runs out first (report.exhausted).
        seed (int): Random seed; equal seeds give equal reports.
        cap (int): Nilpotency cap per generator.
        jobs (int): Worker threads; the report does not depend on it.

    Returns:
        OracleReport: Counts and any counterexample.
    """
    if n not in range(MIN_DIMENSION, ORACLE_MAX_DIMENSION + 1):
        raise DimensionError(f"oracle search supports n in {MIN_DIMENSION}..{ORACLE_MAX_DIMENSION}, got {n}")
    if not isinstance(dmax, int) or not 0 <= dmax <= ORACLE_MAX_DEGREE:
        raise DimensionError(f"oracle search supports max degree 0..{ORACLE_MAX_DEGREE}, got {dmax}")
    if budget < 0:
        raise DimensionError(f"budget must be >= 0, got {budget}")
    logger.info("Running oracle search: n=%d, max degree %d, budget %d, seed %d...", n, dmax, budget, seed)
    report = OracleReport(n, dmax, budget, seed)
    source = _CandidateSource(n, dmax, seed)
    candidates = list(source.candidates(budget))
    report.distinct = len(candidates)
    report.draws = source.draws
    report.exhausted = source.exhausted
    if source.exhausted:
        logger.warning(
            "Candidate space exhausted after %d distinct candidates (budget %d).", len(candidates), budget
        )

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda d: _classify_candidate(d, cap), candidates))
    else:
        outcomes = [_classify_candidate(d, cap) for d in candidates]

    for label, message in outcomes:
        report.tested += 1
        if label == "skipped":
            report.skipped_inhomogeneous += 1
        elif label == "inconclusive":
            report.inconclusive += 1
        elif label == "monomial":
            report.proven_monomial += 1
        else:
            report.counterexamples.append(message)

    for index, entry in enumerate(enumerate_root_vectors(n, dmax)):
        lam = source.coefficients[index % len(source.coefficients)]
        report.theorem_checked += 1
        try:
            result = root_check(entry.derivation(lam), cap)
        except InternalInconsistencyError as exc:
            report.theorem_failures.append(str(exc))
            continue
        if not result.is_root or (result.i, result.alpha, result.root, result.lam) != (
            entry.i,
            entry.alpha,
            entry.mvec,
            lam,
        ):
            report.theorem_failures.append(f"{entry.derivation(lam).to_terms()}: {result.describe()}")

    logger.info(
        "Oracle search finished: %d tested, %d counterexamples, %d theorem failures.",
        report.tested,
        len(report.counterexamples),
        len(report.theorem_failures),
    )
    return report


@dataclass
class VerificationReport:
    cross: CrossValidationReport
    oracle: OracleReport = None

    @property
    def tested(self):
        total = self.cross.entries + self.cross.specs
        if self.oracle is not None:
            total += self.oracle.tested + self.oracle.theorem_checked
        return total

    @property
    def violations(self):
        found = list(self.cross.violations)
        if self.oracle is not None:
            found += [f"oracle: {c}" for c in self.oracle.counterexamples]
            found += [f"oracle theorem check: {f}" for f in self.oracle.theorem_failures]
        return found

    @property
    def passed(self):
        return not self.violations

    def to_dict(self):
        return {
            "tested": self.tested,
            "violations": self.violations,
            "pass": self.passed,
            "cross_validation": self.cross.to_dict(),
            "oracle": self.oracle.to_dict() if self.oracle is not None else None,
        }


class RootClassifier:
    """
    Facade shared by the command line and the web API.
    Caches enumerations per (n, max degree).
    """

    def __init__(self, cap=None, jobs=1):
        """
        Initialize the classifier.

        Args:
            cap (int): Nilpotency cap for user derivations; None uses the configured default.
            jobs (int): Worker threads for enumeration and oracle search.
        """
        self.cap = cap
        self.jobs = max(1, jobs)
        self._enumerations = {}

    def roots(self, n, dmax):
        key = (n, dmax)
        if key not in self._enumerations:
            self._enumerations[key] = enumerate_root_vectors(n, dmax, jobs=self.jobs)
        return self._enumerations[key]

    def roots_document(self, n, dmax):
        """JSON document {"n", "max_deg", "roots": [...]} in the deterministic order."""
        return {"n": n, "max_deg": dmax, "roots": [entry.to_dict() for entry in self.roots(n, dmax)]}

    def root_check(self, d):
        return root_check(d, self.cap)

    def lnd_check(self, d):
        return lnd_check(d, self.cap)

    def character(self, beta):
        """
        Classify a character given by exponents beta.

        Returns:
            dict: is_root, canonical class, and the witnessing root vector if any.
        """
        witness = root_vector_for_character(beta)
        document = {
            "beta": list(beta),
            "character": list(normalize_char(beta).beta),
            "is_root": witness is not None,
            "root_vector": None,
        }
        if witness is not None:
            i, alpha = witness
            document["root_vector"] = {"i": i, "alpha": list(alpha), "derivation": Derivation.monomial(alpha, i).to_terms()}
        return document

    def verify(self, n, dmax, ebox=DEFAULT_EBOX, budget=DEFAULT_BUDGET, seed=DEFAULT_SEED):
        """
        Run cross_validate and, where supported (n <= 3, max degree <= 4), oracle_search.

        Returns:
            VerificationReport: Combined report.
        """
        cross = cross_validate(n, dmax, ebox, entries=self.roots(n, dmax))
        oracle = None
        if n <= ORACLE_MAX_DIMENSION and dmax <= ORACLE_MAX_DEGREE:
            oracle = oracle_search(n, dmax, budget, seed, jobs=self.jobs)
        else:
            logger.info("Oracle search skipped for n=%d, max degree %d.", n, dmax)
        return VerificationReport(cross, oracle)
