from enum import Enum
from os import getenv

from weyl_moe.errors import InvalidParameter


class HashableEnum(str, Enum):
    def __str__(self):
        return self.value


class EnvVariables(HashableEnum):
    config_path = "WEYL_MOE_CONFIGPATH"
    config_dir = "WEYL_MOE_CONFIGDIR"
    threads = "WEYL_MOE_THREADS"

    def __str__(self):
        return self.value

    def default(self):
        import os

        if self == EnvVariables.config_dir:
            return os.path.join(os.path.expanduser("~"), ".weyl-moe/")
        elif self == EnvVariables.config_path:
            return os.path.join(EnvVariables.config_dir.resolve(True), "config.yml")
        elif self == EnvVariables.threads:
            return os.cpu_count() or 1

        raise Exception(f"Couldn't determine default() for '{self.value}'")

    def resolve(self, include_default=False):
        value = getenv(self.value)
        if value is None and include_default:
            value = self.default()
        if self == EnvVariables.threads and value is not None:
            try:
                return max(1, int(value))
            except ValueError:
                raise InvalidParameter(
                    f"{self.value} must be a positive integer, received '{value}'",
                    parameter="threads",
                )
        return value
