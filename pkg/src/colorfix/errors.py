"""Exception hierarchy shared by every module."""


class ColorfixError(Exception):
    """Base class for all package errors."""


class ValidationError(ColorfixError, ValueError):
    """A domain object violates one of its invariants."""


class ParseError(ColorfixError, ValueError):
    """An instance file could not be parsed."""


class SearchCapExceeded(ColorfixError):
    """An exact search was asked to run on an instance above its size cap."""


class AdjacencyViolation(ColorfixError, ValueError):
    """A swap between non-adjacent vertices in an adjacent-only context."""


class MultisetMismatch(ColorfixError, ValueError):
    """Two colorings do not have the same color-class sizes."""


class InvalidTarget(ColorfixError, ValueError):
    """A lift target color count is not larger than the current one."""


class BatchShapeMismatch(ValidationError):
    """Formulas in a batch differ in variable or clause count."""


class NotBipartite(ColorfixError, ValueError):
    pass


class PrecoloredDegreeNotOne(ColorfixError, ValueError):
    pass


class WitnessInvalid(ColorfixError, ValueError):
    """A witness handed to a certificate replay does not certify the source."""
