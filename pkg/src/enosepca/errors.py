"""Exception hierarchy.

Two branches matter to the CLI: ``InputError`` maps to exit code 2
(bad files, bad config, malformed data) and ``NumericError`` maps to
exit code 3 (a computation that failed to converge).
"""


class EnosePcaError(Exception):
    """Base class for all library errors."""


class InputError(EnosePcaError):
    """Invalid input data or configuration."""


class NumericError(EnosePcaError):
    """A numeric routine failed."""


# --- ingestion / data model -------------------------------------------------

class MalformedCsv(InputError):
    """Bad header, non-numeric cell, or otherwise unparseable CSV."""


class WrongSampleCount(InputError):
    """A trial group does not contain the expected number of samples."""


class UnknownLabel(InputError):
    """A quality label outside KW1/KW2/KW3."""


class IndivisibleBlockSize(InputError):
    """Raw sample count is not an integer multiple of the reduced count."""


class InconsistentSensorCount(InputError):
    """Trials in one batch disagree on the number of sensors."""


class MissingClass(InputError):
    """A quality class required downstream is absent."""


class EmptyClass(InputError):
    """An operation needs at least one row per class."""


# --- numerics ---------------------------------------------------------------

class TooFewRows(InputError):
    """Statistics need at least two rows."""


class NotSymmetric(InputError):
    """Matrix asymmetry exceeds tolerance."""


class NoConvergence(NumericError):
    """Iteration limit reached before the convergence criterion."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class BadComponentCount(InputError):
    """Requested component count outside 1..n."""


# --- clustering -------------------------------------------------------------

class MissingCentroid(InputError):
    """A class centroid required for assignment is missing."""


class DuplicateRow(InputError):
    """A row id appears more than once in a set of assignments."""


# --- rendering --------------------------------------------------------------

class InsufficientComponents(InputError):
    """Scatter rendering needs at least two principal components."""


# --- synthetic data ---------------------------------------------------------

class ScenarioError(InputError):
    """Scenario file violates its schema."""
