"""Exception types shared across the package."""


class GirthThicknessError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(GirthThicknessError, ValueError):
    """An argument is outside the domain of the operation."""


class UnsupportedOrderError(InvalidParameterError):
    """The construction does not cover the requested order."""


class ConstructionFailedError(GirthThicknessError):
    """A construction step could not produce a valid split.

    ``part`` carries the offending edge set when one is available.
    """

    def __init__(self, message: str, part=None):
        super().__init__(message)
        self.part = part


class CertificateFormatError(GirthThicknessError, ValueError):
    """A certificate file could not be parsed."""
