"""Exception types shared across the package."""


class ConfigError(ValueError):
    """A scenario or cavity configuration is malformed or inconsistent."""


class FactorizationError(RuntimeError):
    """The numeric Schmidt factorization could not be completed."""


class ModeResolutionError(ValueError):
    """An analytic mode oscillates too fast for the integer grid to resolve."""
