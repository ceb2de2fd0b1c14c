from __future__ import annotations


class FutakiError(Exception):
    """Base class for every error raised by the package."""


class InvalidInput(FutakiError, ValueError):
    pass


class DegreeOverflow(FutakiError):
    """Samples do not lie on a polynomial of the promised degree."""


class ResourceLimit(FutakiError):
    pass


class IncompleteInput(FutakiError, ValueError):
    pass


class ConsistencyFailure(FutakiError):
    """An identity that must hold exactly came out false."""
