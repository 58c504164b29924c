from enum import Enum


class Variant(Enum):
    """
    How the conditional operators x_j^s enter the entropy sum. Only the
    literal variant gates pass/fail.
    """

    literal = "literal"
    normalized = "normalized"

    def __str__(self):
        return self.value
