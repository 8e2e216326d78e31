from __future__ import annotations


class ForestSpechtError(ValueError):
    """
    Base class for every domain error raised by the services.
    The CLI maps it to exit status 1.
    """


class ConfigError(ForestSpechtError):
    pass


class GraphValidationError(ForestSpechtError):
    """
    Raised when a graph or diagram description is malformed:
    non-bipartite edge, isolated vertex, duplicate edge, bad JSON/ASCII.
    """


class NotAForestError(ForestSpechtError):
    pass


class PreconditionError(ForestSpechtError):
    pass


class CapExceededError(ForestSpechtError):
    """
    A configured size cap would be exceeded. Carries the cap name so the
    CLI can report which setting to raise.
    """

    def __init__(self, cap_name: str, limit: int, requested: int) -> None:
        self.cap_name = cap_name
        self.limit = limit
        self.requested = requested
        super().__init__(f"{cap_name} exceeded: requested {requested}, limit {limit}")


class InvariantViolation(ForestSpechtError, RuntimeError):
    """
    A result that must hold mathematically did not (negative multiplicity,
    non-integral volume, ...). Always an implementation bug.
    """
