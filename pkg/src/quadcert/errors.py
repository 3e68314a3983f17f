"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class UnsupportedRuleError(ValueError):
    """A (rule, method) pairing has no closed form."""


class ConfigError(ValueError):
    """A verification campaign was configured inconsistently."""


class OracleError(RuntimeError):
    """Numeric integration failed to reach the requested tolerance.

    The partial estimate is kept on the exception so callers can log it.
    """

    def __init__(self, message, value=float("nan"), abs_error=float("inf")):
        super().__init__(message)
        self.value = value
        self.abs_error = abs_error


class MomentSignError(AssertionError):
    """A moment consumed by a bound came out negative beyond round-off.

    This indicates a case-classification bug, never a user error.
    """
