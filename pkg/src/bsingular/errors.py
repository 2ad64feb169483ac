"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigurationError(ValueError):
    """An object is used in a way its declared data cannot support."""


class RangeError(ValueError):
    """A difference stencil would sample points outside the unit interval."""


class DegenerateFitError(ValueError):
    """A rate fit was requested on data that cannot support one."""


class InsufficientSweepError(DegenerateFitError):
    """Fewer usable sweep points than the minimum a fit requires."""
