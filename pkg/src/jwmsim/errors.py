"""Exception types shared across the package."""


class JwmError(Exception):
    """Base class for all errors raised by this package."""


class GridTooNarrow(JwmError):
    """Grid does not cover enough of a state's support for reliable sampling."""


class InvalidWidth(JwmError):
    """Nonpositive or otherwise unusable Gaussian width."""


class GridMismatch(JwmError):
    """Two fields that must share a grid were built on different grids."""


class ZeroMass(JwmError):
    """Density integrates to zero (or worse), so normalized moments are undefined."""


class NotNormalized(JwmError):
    """Input state was expected to carry unit norm."""


class OutOfGrid(JwmError):
    """Requested evaluation point lies outside the grid domain."""


class InvalidProbe(JwmError):
    """Probe parameters are unusable (nonpositive widths, unresolvable on grid, ...)."""


class NotWeak(JwmError):
    """Coupling is too strong for a weak-regime-only code path."""


class RegimeViolation(JwmError):
    """Parameters leave the validity regime of a closed-form expression."""


class DomainError(JwmError):
    """Scalar argument outside the mathematical domain of the function."""


class QuadratureDivergence(JwmError):
    """Numerical quadrature failed to converge (defensive; not expected for Gaussians)."""


class ConfigError(JwmError):
    """Malformed run or suite configuration."""


class SchemaMismatch(JwmError):
    """Emitted-file schema does not match what the reader expects."""


class IoError(JwmError):
    """File could not be read or written."""
