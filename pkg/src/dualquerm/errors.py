"""Exception hierarchy shared by every module of the package."""


class DualQuermError(Exception):
    """Base class for all package errors."""


class ParameterError(DualQuermError, ValueError):
    """An argument is outside its admissible range."""


class EvaluationError(DualQuermError, ArithmeticError):
    """An integrand produced a non-finite value at a quadrature or sample point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class StarBodyViolation(DualQuermError, ValueError):
    """A radial function was non-positive in some direction."""

    def __init__(self, message, direction=None, value=None):
        super().__init__(message)
        self.direction = direction
        self.value = value


class DegenerateBodyError(DualQuermError, ValueError):
    """A radial combination with both coefficients zero was requested."""


class GenerationError(DualQuermError, ValueError):
    """A parameterized body family produced an invalid body."""

    def __init__(self, message, params=None):
        super().__init__(message)
        self.params = params


class FalsificationError(DualQuermError):
    """An inequality check returned slack below minus its tolerance.

    ``metadata`` carries everything needed to reproduce the event.
    """

    def __init__(self, message, metadata=None, result=None):
        super().__init__(message)
        self.metadata = metadata or {}
        self.result = result


class ConfigError(DualQuermError, ValueError):
    """A suite configuration failed validation."""

    def __init__(self, message, field=None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
