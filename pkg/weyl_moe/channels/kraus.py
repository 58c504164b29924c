from typing import List

import numpy as np

from weyl_moe.channels.channel import Channel
from weyl_moe.channels.channeltypes import ChannelType
from weyl_moe.errors import DimensionMismatch, InvalidParameter

TRACE_PRESERVATION_TOLERANCE = 1e-10


class KrausChannel(Channel):
    """
    General channel Ψ(x) = Σ_i K_i x K_i†, every K_i is dim_out x dim_in.
    """

    def __init__(self, kraus: List[np.ndarray], unchecked=False):
        if not kraus:
            raise InvalidParameter(
                "A Kraus channel needs at least one operator", parameter="kraus"
            )
        ops = [np.array(k, dtype=complex) for k in kraus]
        shapes = {k.shape for k in ops}
        if len(shapes) != 1 or ops[0].ndim != 2:
            raise DimensionMismatch(
                f"Kraus operators must share one 2D shape, received {shapes}",
                parameter="kraus",
            )
        dim_out, dim_in = ops[0].shape
        super().__init__(dim_in, dim_out, ChannelType.kraus)

        for k in ops:
            k.flags.writeable = False
        self.kraus = ops

        if not unchecked:
            defect = self.trace_preservation_defect()
            if defect > TRACE_PRESERVATION_TOLERANCE:
                raise InvalidParameter(
                    f"Kraus operators are not trace preserving: "
                    f"||Σ K†K - I||_F = {defect:.3e}",
                    parameter="kraus",
                )

    @property
    def rank(self) -> int:
        return len(self.kraus)

    def trace_preservation_defect(self) -> float:
        total = sum(k.conj().T @ k for k in self.kraus)
        return float(np.linalg.norm(total - np.eye(self.dim_in)))

    def apply_matrix(self, x):
        x = self.check_input(x)
        return sum(k @ x @ k.conj().T for k in self.kraus)

    def apply_adjoint(self, y):
        y = np.asarray(y, dtype=complex)
        if y.shape != (self.dim_out, self.dim_out):
            raise DimensionMismatch(
                f"Dual channel acts on {self.dim_out}x{self.dim_out} matrices, "
                f"received {y.shape}",
                parameter="y",
            )
        return sum(k.conj().T @ y @ k for k in self.kraus)

    def kraus_operators(self):
        return list(self.kraus)

    def __repr__(self):
        return f"KrausChannel(dim_in={self.dim_in}, dim_out={self.dim_out}, rank={self.rank})"
