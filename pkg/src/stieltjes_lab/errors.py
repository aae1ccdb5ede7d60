"""Exception hierarchy shared by every module."""


class StieltjesLabError(Exception):
    """Base class for all library errors."""


class ParameterError(StieltjesLabError, ValueError):
    """A parameter lies outside the admissible domain."""


class PoleError(ParameterError):
    """Evaluation at a pole (e.g. gamma at a nonpositive integer)."""


class ConfigError(StieltjesLabError, ValueError):
    """A run configuration file or value could not be parsed."""


class CutError(StieltjesLabError, ValueError):
    """The argument lies on a branch cut of the function."""


class SupportError(StieltjesLabError, ValueError):
    """The evaluation point is inside (or too close to) the support of a measure."""


class ConvergenceError(StieltjesLabError, ArithmeticError):
    """A series did not reach tolerance within the allowed number of terms."""


class QuadratureError(StieltjesLabError, ArithmeticError):
    """A quadrature rule did not converge within its abscissae budget."""


class BranchError(StieltjesLabError, ArithmeticError):
    """Root selection is ambiguous (close to a discriminant zero)."""


class SectorError(StieltjesLabError, ArithmeticError):
    """A hypergeometric root formula disagrees with direct root finding."""


class ZeroError(StieltjesLabError, ZeroDivisionError):
    """Evaluation at a point where a rational map has a pole at zero."""
