"""Exception hierarchy shared across the package.

Every error raised on a user-facing path derives from BoltNetError so the
command line layer can map failures onto stable exit codes: validation and
configuration problems exit 1, numeric divergence exits 2, and I/O or
persistence failures exit 3.
"""


class BoltNetError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(BoltNetError):
    """Operand dimensions are incompatible; the message names both shapes."""


class ConfigError(BoltNetError):
    """A run configuration value is missing, malformed, or inconsistent."""


class ParseError(BoltNetError):
    """A cell in a delimited input file could not be parsed as a number."""


class ValidationError(BoltNetError):
    """Data or arguments violate a documented invariant."""


class DegenerateFeatureError(ValidationError):
    """A feature column is constant, so scaling statistics are undefined."""


class NotFittedError(ValidationError):
    """A method that requires a fitted estimator was called before fit."""


class NumericError(BoltNetError):
    """A computation produced a non-finite intermediate value."""


class DivergenceError(NumericError):
    """Training lost numeric stability and produced a non-finite loss."""


class PersistenceError(BoltNetError):
    """A model or report file could not be written, read, or understood."""


class InversionError(BoltNetError):
    """Recovering friction coefficients from torques gave an impossible value."""
