"""
Configuration
Shared limits and the nilpotency-cap policy. The only environment setting is
CREMONA_CAP, which replaces the computed default cap.
"""

import os

from structures.errors import ConfigError

CAP_ENV_VAR = "CREMONA_CAP"

MIN_DIMENSION = 2
MAX_DIMENSION = 8
MAX_ENUM_DEGREE = 12
MAX_EBOX = 6
# admissible (i, e) pairs cross_validate may translate in one run
MAX_CROSS_SPECS = 500_000

# Oracle search parameters
ORACLE_CAP = 16
ORACLE_MAX_DIMENSION = 3
ORACLE_MAX_DEGREE = 4
ORACLE_COEFFICIENTS = ("1", "-1", "2", "-2", "1/2", "-1/2")
# random draws use +-p/q with 1 <= p <= NUMERATOR, 1 <= q <= DENOMINATOR
ORACLE_RANDOM_NUMERATOR = 4
ORACLE_RANDOM_DENOMINATOR = 3
# consecutive repeated draws after which the candidate space counts as exhausted
ORACLE_STALE_DRAWS = 2000

# Limits for requests to the web API
API_MAX_DIMENSION = 4
API_MAX_DEGREE = 6
API_MAX_EBOX = 5
API_MAX_BUDGET = 10000
API_MAX_CAP = 256

DEFAULT_EBOX = 5
DEFAULT_BUDGET = 10000
DEFAULT_SEED = 0


def default_cap(n, image_degree):
    """
    Default number of derivation applications tried per generator.

    Args:
        n (int): Number of variables.
        image_degree (int): Largest total degree among the generator images.

    Returns:
        int: 2*n + image_degree + 4.
    """
    return 2 * n + max(image_degree, 0) + 4


def cap_from_env(environ=None):
    """
    Read CREMONA_CAP.

    Args:
        environ (Mapping): Environment to read, os.environ by default.

    Returns:
        int or None: The configured cap, or None when the variable is unset.
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(CAP_ENV_VAR, "").strip()
    if not raw:
        return None
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise ConfigError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}")
    return cap


def resolve_cap(explicit, n, image_degree, environ=None):
    """
    Pick the nilpotency cap: explicit value, then CREMONA_CAP, then the default.

    Args:
        explicit (int or None): Cap requested by the caller.
        n (int): Number of variables.
        image_degree (int): Largest total degree among the generator images.
        environ (Mapping): Environment override for tests.

    Returns:
        int: A positive cap.
    """
    if explicit is not None:
        if explicit < 1:
            raise ConfigError(f"cap must be >= 1, got {explicit}")
        return explicit
    from_env = cap_from_env(environ)
    if from_env is not None:
        return from_env
    return default_cap(n, image_degree)
