from typing import List, Union

import numpy as np

from weyl_moe.errors import InvalidParameter


def try_parse_primitive_type(value: Union[str, list]):
    if not value:
        return value
    if value == "None" or value == "null":
        return None
    if isinstance(value, list):
        return [try_parse_primitive_type(val) for val in value]

    if not isinstance(value, str):
        return value

    vl = value.strip().lower()
    if vl == "true":
        return True
    if vl == "false":
        return False

    if vl.isdigit():
        return int(vl)
    if vl.startswith("-") and vl[1:].isdigit():
        return -int(vl[1:])
    try:
        return float(vl)
    except ValueError:
        return value


def parse_grid(grid: str, parameter: str = "grid") -> List[float]:
    """
    Parse "start:stop:count" into count evenly spaced values, both endpoints
    included. A single number is a grid of one value.
    """
    parts = [try_parse_primitive_type(p) for p in str(grid).split(":")]
    if len(parts) == 1 and isinstance(parts[0], (int, float)):
        return [float(parts[0])]
    if len(parts) != 3:
        raise InvalidParameter(
            f"Grid '{grid}' must have the form start:stop:count", parameter=parameter
        )

    start, stop, count = parts
    if not all(isinstance(v, (int, float)) for v in (start, stop)):
        raise InvalidParameter(
            f"Grid '{grid}' has a non-numeric endpoint", parameter=parameter
        )
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise InvalidParameter(
            f"Grid '{grid}' needs a positive integer count, received '{count}'",
            parameter=parameter,
        )
    if count == 1:
        return [float(start)]
    return [float(v) for v in np.linspace(start, stop, count)]


def convert_argname_to_prefix(argname: str):
    if not argname:
        return None
    return "--" + argname.replace("_", "-")
