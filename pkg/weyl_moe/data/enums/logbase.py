from enum import Enum

import numpy as np

from weyl_moe.errors import InvalidParameter


class LogBase(Enum):
    two = "2"
    e = "e"

    def __str__(self):
        return self.value

    @staticmethod
    def all():
        return [b.value for b in LogBase]

    @staticmethod
    def from_str(value) -> "LogBase":
        if isinstance(value, LogBase):
            return value
        v = str(value).strip().lower()
        if v in ("2", "2.0", "bits", "two"):
            return LogBase.two
        if v in ("e", "nats", "ln"):
            return LogBase.e
        raise InvalidParameter(
            f"Unrecognised log base '{value}', expected one of {LogBase.all()}",
            parameter="log-base",
        )

    def log(self, values):
        if self == LogBase.two:
            return np.log2(values)
        return np.log(values)

    def unit(self):
        return "bits" if self == LogBase.two else "nats"
