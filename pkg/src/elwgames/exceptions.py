"""Exception types raised across the package."""


class ELWError(Exception):
    """Base class for all errors raised by elwgames."""


class InvalidInputError(ELWError, ValueError):
    """An argument violates a documented precondition on its shape or value."""


class UnsupportedError(ELWError):
    """The request is outside what a closed-form routine covers."""


class PreconditionError(ELWError):
    """A semantic precondition failed (e.g. the gate is not maximally entangling)."""


class SearchFailureError(ELWError, RuntimeError):
    """A numerical search exhausted its budget without reaching its target."""
