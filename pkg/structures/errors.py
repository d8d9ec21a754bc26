"""
Exception Hierarchy
Errors raised by the algebra modules, the parser and the configuration layer.
Negative verdicts (not a root, cap exhausted, validation violations) are
returned as data and never raised.
"""


class CremonaError(Exception):
    """Base class for every error raised by this project."""


class DimensionError(CremonaError, ValueError):
    """Mismatched dimensions, out-of-range indices or wrong vector lengths."""


class ParseError(CremonaError, ValueError):
    """
    Syntax error in a textual polynomial, derivation or vector.

    Args:
        message (str): Human readable description.
        position (int): Zero-based offset into the source text, or None.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ZeroDerivationError(CremonaError, ValueError):
    """The operation is undefined for the zero derivation."""


class NotProvenError(CremonaError):
    """exp was requested for a derivation without a Proven nilpotency verdict."""


class InadmissibleSpecError(CremonaError, ValueError):
    """A (lambda, i, e) triple violates v_j(e) >= v_i(e) + 1."""


class ConfigError(CremonaError, ValueError):
    """Invalid configuration value (for example a malformed CREMONA_CAP)."""


class InternalInconsistencyError(CremonaError, AssertionError):
    """A homogeneous LND that is not a monomial derivation was observed."""
