from typing import Optional


class WeylMoeError(Exception):
    """
    Base class for every error raised by weyl_moe, the CLI converts these
    into a machine-readable error and exit code 2.
    """

    def __init__(self, message: str, parameter: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.parameter = parameter

    def to_dict(self):
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "parameter": self.parameter,
        }


class DimensionMismatch(WeylMoeError, ValueError):
    pass


class InvalidParameter(WeylMoeError, ValueError):
    pass


class HypothesisViolated(InvalidParameter):
    pass


class NotHermitian(WeylMoeError, ValueError):
    pass


class NegativeEigenvalue(WeylMoeError, ValueError):
    pass
