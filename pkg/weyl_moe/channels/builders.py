"""
Constructors for the covariant Weyl family and the channels it decomposes
into. All of them return WeylMixSpec tables except random_channel.
"""
import numpy as np
from janis_core.utils.logger import Logger

from weyl_moe.channels.kraus import KrausChannel
from weyl_moe.channels.weyl import WeylMixSpec, _weyl_operators
from weyl_moe.errors import InvalidParameter
from weyl_moe.linalg import (
    DensityOperator,
    RngSeed,
    as_matrix,
    haar_isometry,
)

PARAMETER_TOLERANCE = 1e-12


def _ensure_dimension(d: int, minimum: int = 1, parameter: str = "d"):
    if not isinstance(d, (int, np.integer)) or d < minimum:
        raise InvalidParameter(
            f"Dimension must be an integer >= {minimum}, received {d}",
            parameter=parameter,
        )


def _ensure_in_range(value: float, low: float, high: float, parameter: str):
    if not (low - PARAMETER_TOLERANCE <= value <= high + PARAMETER_TOLERANCE):
        raise InvalidParameter(
            f"{parameter} must be in [{low:.12g}, {high:.12g}], received {value}",
            parameter=parameter,
        )


def _snap_zero(coeffs: np.ndarray) -> np.ndarray:
    # roundoff on the region boundary can leave -1e-17 style identity weights
    return np.where(np.abs(coeffs) < 1e-15, 0.0, coeffs)


class ChannelParams:
    """
    Parameters (d, r, p) of Φ(x) = (1-(d-1)(r+dp)) x + r Σ_{m≥1} W_{m,0} x W_{m,0}†
    + p Σ_m Σ_{n≥1} W_{m,n} x W_{m,n}†.
    """

    def __init__(self, d: int, r: float, p: float):
        self.d = d
        self.r = float(r)
        self.p = float(p)

    def identity_weight(self) -> float:
        return 1 - (self.d - 1) * (self.r + self.d * self.p)

    def validate(self):
        _ensure_dimension(self.d)
        if self.r < 0:
            raise InvalidParameter(f"r must be >= 0, received {self.r}", parameter="r")
        if self.p < 0:
            raise InvalidParameter(f"p must be >= 0, received {self.p}", parameter="p")
        if self.identity_weight() < -PARAMETER_TOLERANCE:
            raise InvalidParameter(
                f"(d-1)(r+dp) = {1 - self.identity_weight():.12g} exceeds 1, "
                f"the identity weight would be negative",
                parameter="r",
            )
        return True

    def coefficient_table(self) -> np.ndarray:
        d = self.d
        c = np.full((d, d), self.p)
        c[1:, 0] = self.r
        c[0, 0] = self.identity_weight()
        return _snap_zero(c)

    def to_dict(self):
        return {"d": self.d, "r": self.r, "p": self.p}

    def __repr__(self):
        return f"ChannelParams(d={self.d}, r={self.r}, p={self.p})"


def weyl_channel(params: ChannelParams, unchecked=False) -> WeylMixSpec:
    if not unchecked:
        params.validate()
    Logger.debug(f"Building Weyl channel for {params}")
    return WeylMixSpec(params.d, params.coefficient_table(), unchecked=unchecked)


def identity_channel(d: int) -> WeylMixSpec:
    return weyl_channel(ChannelParams(d, 0, 0))


def depolarizing(d: int, q: float, extended=False) -> WeylMixSpec:
    """
    Φ_dep(x) = (1-q) x + (q/d) I, realised as r = p = q/d².

    :param extended: allow q up to d²/(d²-1) instead of 1
    """
    _ensure_dimension(d)
    upper = d ** 2 / (d ** 2 - 1) if (extended and d > 1) else 1.0
    _ensure_in_range(q, 0.0, upper, "q")
    return weyl_channel(ChannelParams(d, q / d ** 2, q / d ** 2))


def qc_channel(d: int, q: float) -> WeylMixSpec:
    """
    Quantum-classical channel measuring in the Fourier basis,
    r = (1/d)(1 - ((d-1)/d) q), p = q/d², 0 <= q <= d/(d-1).
    """
    _ensure_dimension(d, minimum=2)
    _ensure_in_range(q, 0.0, d / (d - 1), "q")
    r = (1 - (d - 1) / d * q) / d
    return weyl_channel(ChannelParams(d, max(r, 0.0), q / d ** 2))


def phase_damping(d: int, lam: float) -> WeylMixSpec:
    """
    Ξ(x) = ((1+(d-1)λ)/d) x + ((1-λ)/d) Σ_{m≥1} W_{m,0} x W_{m,0}†
    """
    _ensure_dimension(d)
    _ensure_in_range(lam, 0.0, 1.0, "lambda")
    c = np.zeros((d, d))
    c[1:, 0] = (1 - lam) / d
    c[0, 0] = (1 + (d - 1) * lam) / d
    return WeylMixSpec(d, _snap_zero(c))


def conditional_expectation(x) -> DensityOperator:
    """
    E(x) = (1/d) Σ_m W_{m,0} x W_{m,0}†, the projection onto the algebra
    generated by the Fourier-basis projectors.
    """
    x = as_matrix(x)
    return DensityOperator(phase_damping(x.shape[0], 0.0).apply_matrix(x), validate=False)


def qc_via_expectation(d: int, q: float, x) -> DensityOperator:
    """
    Alternative form of the q-c channel:
    (1 - ((d-1)/d) q) E(x) + (q/d) Σ_{n≥1} W_{0,n} E(x) W_{0,n}†
    """
    _ensure_dimension(d, minimum=2)
    _ensure_in_range(q, 0.0, d / (d - 1), "q")
    ex = conditional_expectation(x).matrix
    out = (1 - (d - 1) / d * q) * ex
    ops = _weyl_operators(d)
    for n in range(1, d):
        w = ops[0][n]
        out = out + (q / d) * (w @ ex @ w.conj().T)
    return DensityOperator(out, validate=False)


def random_channel(d: int, kraus_rank: int, rng: RngSeed) -> KrausChannel:
    """
    Random channel from a Haar isometry C^d -> C^d ⊗ C^rank (Stinespring),
    sliced into kraus_rank blocks of d rows.
    """
    _ensure_dimension(d)
    if kraus_rank < 1:
        raise InvalidParameter(
            f"kraus_rank must be >= 1, received {kraus_rank}", parameter="kraus_rank"
        )
    v = haar_isometry(d * kraus_rank, d, rng)
    return KrausChannel([v[i * d : (i + 1) * d, :] for i in range(kraus_rank)])
