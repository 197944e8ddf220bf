"""Exception hierarchy shared across the package."""


class GluecopError(Exception):
    """Base class for all package errors."""


class ParameterError(GluecopError):
    """A copula family parameter is outside its admissible range."""


class DomainError(GluecopError):
    """An input lies outside the domain of the operation (unit square, support)."""


class DataError(GluecopError):
    """Input data is malformed or insufficient (too few points, NaNs, bad CSV)."""


class NumericalError(GluecopError):
    """A numerical routine failed to converge or lost accuracy beyond tolerance."""
