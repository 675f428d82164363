"""Exception types raised across the package."""


class RmCountError(Exception):
    """Base class for package errors."""


class DimensionError(RmCountError, ValueError):
    """Operand shapes or lengths are incompatible."""


class ParameterError(RmCountError, ValueError):
    """A parameter is outside its valid range."""


class ResourceError(RmCountError):
    """A request exceeds a configured computational bound."""
