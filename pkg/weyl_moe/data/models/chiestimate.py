from typing import List

import numpy as np


class ChiEstimate:
    """
    Result of a multi-start minimisation of the output entropy. value is an
    upper bound on the minimal output entropy, attained by argmin_state.
    """

    def __init__(
        self,
        value: float,
        argmin_state: np.ndarray,
        starts: int,
        iterations_total: int,
        spread: float,
        start_values: List[float] = None,
        polished: bool = False,
    ):
        self.value = value
        self.argmin_state = argmin_state
        self.starts = starts
        self.iterations_total = iterations_total
        self.spread = spread
        self.start_values = start_values or []
        self.polished = polished

    def to_dict(self):
        return {
            "value": self.value,
            "argmin_state": [[float(z.real), float(z.imag)] for z in self.argmin_state],
            "starts": self.starts,
            "iterations_total": self.iterations_total,
            "spread": self.spread,
            "polished": self.polished,
        }

    def __repr__(self):
        return (
            f"ChiEstimate(value={self.value:.12g}, starts={self.starts}, "
            f"spread={self.spread:.3e})"
        )
