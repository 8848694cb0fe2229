"""Exception hierarchy shared by every module of the package."""


class PowerdomError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(PowerdomError, ValueError):
    """A construction or solver parameter is outside its admissible range."""


class CapacityError(PowerdomError, ValueError):
    """An instance exceeds a design capacity (codec order, bitset width, ...)."""


class Graph6Error(PowerdomError, ValueError):
    """Malformed graph6 input; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ValidationError(PowerdomError, ValueError):
    """A hypergraph violates one of its structural invariants."""


class EmptyEdgeError(ValidationError):
    pass


class VertexRangeError(ValidationError):
    pass


class DuplicateEdgeError(ValidationError):
    pass


class UniformityError(ValidationError):
    pass


class BudgetExceeded(PowerdomError, RuntimeError):
    """A search ran past its node budget or subset cap. Never a wrong answer."""


class ConfigurationError(PowerdomError):
    """Missing or unusable configuration, e.g. no catalog for a clause that needs one."""


class CatalogError(PowerdomError, ValueError):
    """A catalog file has the wrong number of entries or an invalid entry."""
