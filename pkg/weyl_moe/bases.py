"""
Orthonormal bases of C^d: the computational basis (f_j), the Fourier basis
(e_j) and a family of d mutually unbiased bases for prime d.
"""
from typing import List

import numpy as np

from weyl_moe.errors import DimensionMismatch, InvalidParameter


class Basis:
    """
    d unit vectors of length d, vectors[j] is the j-th basis vector.
    """

    def __init__(self, vectors, name: str = None):
        self.vectors = np.array(vectors, dtype=complex)
        self.name = name
        if self.vectors.ndim != 2 or self.vectors.shape[0] != self.vectors.shape[1]:
            raise DimensionMismatch(
                f"A basis of C^d needs d vectors of length d, received {self.vectors.shape}"
            )

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.dim

    def __getitem__(self, j) -> np.ndarray:
        return self.vectors[j]

    def __iter__(self):
        return iter(self.vectors)

    def __repr__(self):
        return f"Basis(dim={self.dim}, name={self.name})"

    def gram(self) -> np.ndarray:
        return self.vectors.conj() @ self.vectors.T

    def orthonormality_defect(self) -> float:
        return float(np.max(np.abs(self.gram() - np.eye(self.dim))))

    def projector(self, j: int) -> np.ndarray:
        v = self.vectors[j]
        return np.outer(v, v.conj())


class BasisFamily:
    def __init__(self, bases: List[Basis]):
        if not bases:
            raise InvalidParameter("A basis family needs at least one basis")
        dims = {b.dim for b in bases}
        if len(dims) != 1:
            raise DimensionMismatch(f"Bases in a family must share a dimension: {dims}")
        self.bases = list(bases)

    @property
    def dim(self) -> int:
        return self.bases[0].dim

    def __len__(self):
        return len(self.bases)

    def __getitem__(self, s) -> Basis:
        return self.bases[s]

    def __iter__(self):
        return iter(self.bases)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def computational_basis(d: int) -> Basis:
    return Basis(np.eye(d, dtype=complex), name="computational")


def fourier_basis(d: int) -> Basis:
    """
    |e_j> = (1/√d) Σ_k exp(2πi jk/d) |k>
    """
    if d < 1:
        raise InvalidParameter(f"Dimension must be >= 1, received {d}", parameter="d")
    jk = np.outer(np.arange(d), np.arange(d))
    return Basis(np.exp(2j * np.pi * (jk % d) / d) / np.sqrt(d), name="fourier")


def mub_family(d: int) -> BasisFamily:
    """
    d mutually unbiased bases for prime d. Component k of vector j in basis s
    is (1/√d) γ^(s k²) ω^(jk), ω = exp(2πi/d), with γ = ω for odd d and γ = i
    for d = 2. Basis s = 0 is the Fourier basis, and every member is also
    unbiased with the computational basis.
    """
    if not is_prime(d):
        raise InvalidParameter(
            f"Mutually unbiased bases are only constructed for prime d, received {d}",
            parameter="d",
        )
    k = np.arange(d)
    jk = np.outer(k, k)

    # exponents are reduced mod d (mod 4 for d = 2) before exponentiating
    def chirp(s):
        if d == 2:
            return np.array([1, 1j, -1, -1j])[(s * k * k) % 4]
        return np.exp(2j * np.pi * ((s * k * k) % d) / d)

    fourier = np.exp(2j * np.pi * (jk % d) / d) / np.sqrt(d)
    bases = [
        Basis(fourier * chirp(s)[np.newaxis, :], name=f"mub-{s}") for s in range(d)
    ]
    return BasisFamily(bases)


def unbiasedness_defect(a: Basis, b: Basis) -> float:
    """
    max over i, j of | |<a_i|b_j>| - 1/√d |
    """
    if a.dim != b.dim:
        raise DimensionMismatch(
            f"Cannot compare bases of dimension {a.dim} and {b.dim}", parameter="b"
        )
    overlaps = np.abs(a.vectors.conj() @ b.vectors.T)
    return float(np.max(np.abs(overlaps - 1 / np.sqrt(a.dim))))


def family_defect(family: BasisFamily) -> float:
    """
    Largest unbiasedness defect over every pair in the family and between each
    member and the computational basis.
    """
    comp = computational_basis(family.dim)
    defects = [unbiasedness_defect(b, comp) for b in family]
    for s in range(len(family)):
        for t in range(s + 1, len(family)):
            defects.append(unbiasedness_defect(family[s], family[t]))
    return max(defects)
