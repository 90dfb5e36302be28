"""Exception types shared across the package.

The command line maps ConfigurationError (and its subclasses raised while
building models or plans) to exit code 2 and DataError to exit code 3.
"""


class ConfigurationError(Exception):
    """A scenario, plan, or parameter set is malformed or inconsistent."""


class InvalidParameterError(ConfigurationError):
    """A numeric argument is outside its documented domain."""


class InvalidModelError(ConfigurationError):
    """A model violates a structural constraint (root conditions, profile bounds)."""


class SingularFrequencyError(InvalidParameterError):
    """A density with long memory was evaluated at frequency zero."""


class TableKindError(TypeError):
    """A spectral table of the wrong kind was passed to an operation."""


class DataError(Exception):
    """Persisted artifacts are missing, corrupt, or inconsistent with the plan."""


class MemoryBudgetError(ConfigurationError):
    """A requested allocation exceeds the configured element budget."""
