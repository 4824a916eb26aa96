"""Shared exception types."""


class InvalidParametersError(ValueError):
    """Parameters violate a documented precondition (parity, range, ...)."""


class InstanceLoadError(ValueError):
    """A distance-matrix file could not be parsed into a valid instance."""


class StructureError(ValueError):
    """An object has the wrong shape for the instance it is paired with."""


class ContractError(ValueError):
    """A caller passed data that violates an operation's contract."""


class CapExceededError(RuntimeError):
    """An enumeration or model would exceed its configured size cap."""
