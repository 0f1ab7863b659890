"""Exception types shared across the package.

Everything derives from :class:`RankCorrError` so callers can catch one
base class.  The split below mirrors the pipeline stages: input handling,
coefficient evaluation, standardization, model fitting, and table I/O.
"""

from __future__ import annotations


class RankCorrError(ValueError):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# input / ranking validation

class EmptyInputError(RankCorrError):
    """A ranking, score vector, or sample collection was empty."""


class DuplicateValueError(RankCorrError):
    """A ranking contained a repeated rank value."""


class OutOfRangeValueError(RankCorrError):
    """Ranking values are not a permutation of 0..n-1 (or 1..n)."""


class TiesPresentError(RankCorrError):
    """Scores contain ties and the tie policy forbids them."""


class LengthMismatchError(RankCorrError):
    """Two rankings that must share a length do not."""


class DegenerateLengthError(RankCorrError):
    """The operation needs at least two items."""


class TooLargeError(RankCorrError):
    """Exhaustive enumeration was requested beyond the supported size."""


class InvalidPositionError(RankCorrError):
    """A weight function was evaluated at a non-positive position."""


class ZeroVarianceError(RankCorrError):
    """A correlation is undefined because one input has zero spread."""


class RatingsFormatError(RankCorrError):
    """A ratings file does not parse as (user, item, rating, timestamp) rows."""


# ---------------------------------------------------------------------------
# standardization

class StandardizationError(RankCorrError):
    """Base class for failures while building or applying a standardizer."""


class InfeasibleFlatBoundError(StandardizationError):
    """The flat-ratio branch admits no monotone solution."""


class FlatDenominatorError(StandardizationError):
    """The general branch was entered with a near-flat variance ratio."""


class BoundConsistencyError(StandardizationError):
    """The admissible interval for the intercept is empty or undefined."""


class OutOfDomainError(StandardizationError):
    """A standardizer was applied outside [-1, 1]."""


# ---------------------------------------------------------------------------
# estimation / regression

class InvalidLengthError(RankCorrError):
    """A ranking length outside the supported range was requested."""


class RankDeficientError(RankCorrError):
    """The regression design matrix does not have full column rank."""


# ---------------------------------------------------------------------------
# parameter table I/O

class TableError(RankCorrError):
    """Base class for parameter-table problems."""


class UnknownConfigError(TableError):
    """The table has no entry for the requested configuration."""


class SchemaError(TableError):
    """A table file does not match the expected JSON layout."""


class VersionMismatchError(TableError):
    """A table file declares an unsupported format version."""


class ExtrapolationRefusedError(RankCorrError):
    """Strict mode rejected parameters extrapolated beyond their fit range."""
