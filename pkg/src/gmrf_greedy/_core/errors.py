"""Custom exceptions for gmrf-greedy.

Every error carries the process exit code the CLI reports for it:
2 for invalid input, 3 for numerical failure.
"""

from __future__ import annotations


class GmrfError(Exception):
    """Base exception for all gmrf-greedy errors."""

    exit_code: int = 1


class InvalidInputError(GmrfError):
    """Raised when user-supplied input cannot be used."""

    exit_code = 2


class InvalidParameter(InvalidInputError):
    """Raised when a model or solver parameter is out of range."""


class DimensionMismatch(InvalidInputError):
    """Raised when matrix or vector shapes are incompatible."""


class DimensionTooLarge(InvalidInputError):
    """Raised when a dense computation would exceed its size guard."""


class CombinatorialBlowup(InvalidInputError):
    """Raised when a subset enumeration exceeds its guard."""


class ConfigurationError(InvalidInputError):
    """Raised when configuration is invalid or missing."""


class IOFailure(InvalidInputError):
    """Raised when an input file cannot be read or an output cannot be written."""


class NumericalError(GmrfError):
    """Raised when a numerical routine fails."""

    exit_code = 3


class NotPositiveDefinite(NumericalError):
    """Raised when a matrix expected to be positive definite is not."""


class SingularUpdate(NumericalError):
    """Raised when a rank-1 inverse correction hits a vanishing denominator."""


class Diverged(NumericalError):
    """Raised when an iterate leaves the positive definite cone."""


class NonConvergence(NumericalError):
    """Raised when an iterative method hits its iteration cap."""


class RankDeficient(NumericalError):
    """Raised when a least squares design is numerically rank deficient."""


class ZeroColumn(NumericalError):
    """Raised when a feature column is identically zero."""


class SelectionError(NumericalError):
    """Raised when greedy support bookkeeping cannot proceed."""


class NoCandidates(SelectionError):
    """Raised when no pair is left to add to the support."""


class EmptySupport(SelectionError):
    """Raised when a backward step is requested on an empty support."""
