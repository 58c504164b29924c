"""
Dense complex-matrix substrate.

Every operator in weyl_moe is a square numpy array of complex128 in row-major
order. Composite systems are always ordered (H, K), so a state on H⊗K is a
(d*k) x (d*k) array whose row index is i*k + a for |i> in H and |a> in K.
"""
from typing import List, Optional, Tuple, Union

import numpy as np
import scipy.linalg
from janis_core.utils.logger import Logger

from weyl_moe.errors import (
    DimensionMismatch,
    InvalidParameter,
    NotHermitian,
)

RngSeed = Union[int, np.random.Generator]

HERMITIAN_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10


class DensityOperator:
    """
    A Hermitian, positive semi-definite, unit-trace matrix. Construction
    validates the invariants unless validate=False is passed (used internally
    where the matrix is correct by construction).
    """

    def __init__(self, matrix, validate=True, name="x"):
        self.matrix = np.array(matrix, dtype=complex)
        if validate:
            validate_density(self.matrix, name=name)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix
        return self.matrix.astype(dtype)

    def __repr__(self):
        return f"DensityOperator(dim={self.dim})"


def as_matrix(x) -> np.ndarray:
    if isinstance(x, DensityOperator):
        return x.matrix
    return np.asarray(x, dtype=complex)


def ensure_square(a: np.ndarray, name="a") -> int:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(
            f"Expected '{name}' to be a square matrix, received shape {a.shape}",
            parameter=name,
        )
    return a.shape[0]


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def normalise(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise InvalidParameter("Cannot normalise the zero vector", parameter="psi")
    return psi / norm


def projector(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def density_from_vector(psi) -> DensityOperator:
    return DensityOperator(projector(normalise(psi)), validate=False)


def partial_trace_left(x, d: int, k: int) -> np.ndarray:
    """
    Trace out the first factor of a (d*k) x (d*k) operator on H⊗K.

    :param x: operator on H⊗K
    :param d: dimension of the traced factor H
    :param k: dimension of the kept factor K
    :return: k x k operator Tr_H(x)
    """
    x = as_matrix(x)
    if x.shape != (d * k, d * k):
        raise DimensionMismatch(
            f"partial_trace_left expected a {d * k}x{d * k} matrix for d={d}, k={k}, "
            f"received {x.shape}",
            parameter="x",
        )
    return np.einsum("ijil->jl", x.reshape(d, k, d, k))


def partial_trace_right(x, d: int, k: int) -> np.ndarray:
    """
    Trace out the second factor of a (d*k) x (d*k) operator, returning d x d.
    """
    x = as_matrix(x)
    if x.shape != (d * k, d * k):
        raise DimensionMismatch(
            f"partial_trace_right expected a {d * k}x{d * k} matrix for d={d}, k={k}, "
            f"received {x.shape}",
            parameter="x",
        )
    return np.einsum("ijkj->ik", x.reshape(d, k, d, k))


def hermiticity_defect(a) -> float:
    a = as_matrix(a)
    return float(np.linalg.norm(a - a.conj().T))


def hermitian_eig(a, tolerance=HERMITIAN_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a Hermitian matrix. The input is symmetrised as
    (a + a†)/2 first, the result satisfies a V = V diag(w), w ascending.
    """
    a = as_matrix(a)
    ensure_square(a)
    defect = hermiticity_defect(a)
    if defect > tolerance:
        raise NotHermitian(
            f"Matrix is not Hermitian within {tolerance} (defect {defect:.3e})",
            parameter="a",
        )
    w, v = scipy.linalg.eigh((a + a.conj().T) / 2)
    return w, v


def validate_density(a, name="x", tolerance=TRACE_TOLERANCE):
    a = as_matrix(a)
    ensure_square(a, name=name)
    if not np.all(np.isfinite(a)):
        raise InvalidParameter(f"'{name}' contains NaN or Inf entries", parameter=name)
    defect = hermiticity_defect(a)
    if defect > tolerance:
        raise InvalidParameter(
            f"'{name}' is not Hermitian (defect {defect:.3e})", parameter=name
        )
    tr = np.trace(a)
    if abs(tr - 1) > tolerance:
        raise InvalidParameter(
            f"'{name}' does not have unit trace (trace {tr.real:.12g})",
            parameter=name,
        )
    w = scipy.linalg.eigvalsh((a + a.conj().T) / 2)
    if w[0] < -PSD_TOLERANCE:
        raise InvalidParameter(
            f"'{name}' is not positive semi-definite (min eigenvalue {w[0]:.3e})",
            parameter=name,
        )
    return True


def _ensure_seed(seed):
    if seed is not None and (not isinstance(seed, (int, np.integer)) or seed < 0):
        raise InvalidParameter(
            f"Seed must be a non-negative integer, received {seed}", parameter="seed"
        )


def as_generator(rng: Optional[RngSeed]) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is None:
        Logger.warn("No seed was provided, random draws will not be reproducible")
    _ensure_seed(rng)
    return np.random.default_rng(rng)


def spawn_generators(rng: RngSeed, n: int) -> List[np.random.Generator]:
    """
    Derive n independent generators from a seed. The i-th stream only depends on
    (seed, i), so tasks can be run in any order or in parallel.
    """
    if isinstance(rng, np.random.Generator):
        rng = int(rng.integers(2 ** 63))
    _ensure_seed(rng)
    return [np.random.default_rng(s) for s in np.random.SeedSequence(rng).spawn(n)]


def _complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_pure_state(d: int, rng: RngSeed) -> np.ndarray:
    if d < 1:
        raise InvalidParameter(f"Dimension must be >= 1, received {d}", parameter="d")
    return normalise(_complex_gaussian(d, as_generator(rng)))


def random_density(d: int, rng: RngSeed) -> DensityOperator:
    if d < 1:
        raise InvalidParameter(f"Dimension must be >= 1, received {d}", parameter="d")
    g = _complex_gaussian((d, d), as_generator(rng))
    gg = g @ g.conj().T
    gg = (gg + gg.conj().T) / 2
    return DensityOperator(gg / np.trace(gg).real, validate=False)


def haar_isometry(rows: int, cols: int, rng: RngSeed) -> np.ndarray:
    """
    Haar-distributed isometry V (V†V = I_cols) from the QR decomposition of a
    complex Ginibre matrix, with the phases of diag(R) moved into Q so the
    distribution is unitarily invariant.
    """
    if rows < cols:
        raise InvalidParameter(
            f"An isometry needs rows >= cols, received {rows}x{cols}",
            parameter="rows",
        )
    z = _complex_gaussian((rows, cols), as_generator(rng))
    q, r = scipy.linalg.qr(z, mode="economic")
    diag = np.diagonal(r)
    phases = np.where(np.abs(diag) > 0, diag / np.abs(diag), 1)
    return q * phases


def random_unitary(d: int, rng: RngSeed) -> np.ndarray:
    return haar_isometry(d, d, rng)
