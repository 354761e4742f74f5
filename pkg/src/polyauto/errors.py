"""Exception types shared across the package.

Errors that certify a mathematical fact about the input (for example that
it cannot be an automorphism) derive from :class:`CertificateError` and
carry a machine-checkable ``certificate`` mapping; everything else is a
plain usage or consistency error.
"""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(AlgebraError):
    """Operands disagree on variable count, index range, or arity."""


class UndefinedValuation(AlgebraError):
    """Valuation requested for the zero polynomial (it would be infinite)."""


class DegenerateInput(AlgebraError):
    """An input is structurally unusable (e.g. an all-zero endomorphism)."""


class FiltrationError(AlgebraError):
    """An endomorphism does not fit the requested degree filtration."""


class MissingInverse(AlgebraError):
    """A word letter was inverted but carries no registered inverse."""


class ConsistencyError(AlgebraError):
    """An internal cross-check failed; indicates a bug or corrupted input."""


class ParseError(AlgebraError):
    """Text input rejected by the tokenizer or parser."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class CertificateError(AlgebraError):
    """Failure carrying machine-checkable evidence.

    ``certificate`` is a flat mapping of strings/ints suitable for direct
    JSON rendering; the CLI prints it verbatim on exit code 2.
    """

    def __init__(self, message: str, certificate: dict):
        super().__init__(message)
        self.certificate = dict(certificate)


class NothingToNormalize(CertificateError):
    """Normalization was asked for an affine (degree <= 1) input."""


class NormalizationRequired(CertificateError):
    """A degeneration operation needs a normalized input and did not get one."""


class NotACoordinate(CertificateError):
    """The first component vanishes on the hyperplane x1 = 0.

    For a map with identity affine part this proves the first component is
    not a coordinate, hence the input is not an automorphism.
    """


class SingularAffinePart(CertificateError):
    """The degree-one truncation has a singular linear part."""


class OverringViolation(CertificateError):
    """Clearing the torus conjugate left a genuine negative power of t.

    This cannot happen for an automorphism with identity affine part, so it
    certifies a precondition breach.
    """


class InvalidSample(CertificateError):
    """A curve specialization was requested at a forbidden parameter value."""


class NotAnAutomorphism(CertificateError):
    """The plane reduction loop rejected the input, with the failing step."""
