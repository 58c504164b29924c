from abc import ABC, abstractmethod
from typing import List

import numpy as np

from weyl_moe.channels.channeltypes import ChannelType
from weyl_moe.errors import DimensionMismatch
from weyl_moe.linalg import as_matrix


class Channel(ABC):
    """
    A linear map from operators on C^dim_in to operators on C^dim_out.

    Subclasses only need the Schrödinger and Heisenberg actions and a Kraus
    representation, the superoperator and Choi matrix are derived from those.
    Channels are immutable once constructed.
    """

    def __init__(self, dim_in: int, dim_out: int, chtype: ChannelType):
        self.dim_in = dim_in
        self.dim_out = dim_out
        self.chtype = chtype

    @abstractmethod
    def apply_matrix(self, x: np.ndarray) -> np.ndarray:
        """
        Action on an arbitrary (not necessarily Hermitian) dim_in x dim_in matrix
        """
        pass

    @abstractmethod
    def apply_adjoint(self, y: np.ndarray) -> np.ndarray:
        """
        Action of the dual map Φ* on a dim_out x dim_out matrix
        """
        pass

    @abstractmethod
    def kraus_operators(self) -> List[np.ndarray]:
        pass

    def check_input(self, x, name="x") -> np.ndarray:
        x = as_matrix(x)
        if x.shape != (self.dim_in, self.dim_in):
            raise DimensionMismatch(
                f"Channel acts on {self.dim_in}x{self.dim_in} matrices, "
                f"'{name}' has shape {x.shape}",
                parameter=name,
            )
        return x

    def superop_matrix(self) -> np.ndarray:
        """
        Matrix S acting on row-major vectorised operators: vec(Φ(x)) = S vec(x)
        """
        s = np.zeros((self.dim_out ** 2, self.dim_in ** 2), dtype=complex)
        for k in self.kraus_operators():
            s += np.kron(k, k.conj())
        return s

    def choi_matrix(self) -> np.ndarray:
        """
        (Φ ⊗ Id)(|Ω><Ω|) with |Ω> = Σ_k |kk>/√d_in, ordered (output, input)
        """
        d = self.dim_in
        choi = np.zeros((self.dim_out * d, self.dim_out * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                eij = np.zeros((d, d), dtype=complex)
                eij[i, j] = 1
                choi += np.kron(self.apply_matrix(eij), eij)
        return choi / d

    def __repr__(self):
        return f"{self.__class__.__name__}(dim_in={self.dim_in}, dim_out={self.dim_out})"
