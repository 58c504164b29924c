from typing import Tuple, Union

import numpy as np
from janis_core.utils.logger import Logger

from weyl_moe.bases import fourier_basis
from weyl_moe.channels.channel import Channel
from weyl_moe.channels.kraus import KrausChannel
from weyl_moe.channels.weyl import WeylMixSpec
from weyl_moe.errors import DimensionMismatch, InvalidParameter
from weyl_moe.linalg import (
    DensityOperator,
    RngSeed,
    as_generator,
    as_matrix,
    hermitian_eig,
    partial_trace_left,
    random_density,
)

ChannelLike = Union[WeylMixSpec, KrausChannel]


def apply(ch: Channel, x) -> DensityOperator:
    out = ch.apply_matrix(as_matrix(x))
    return DensityOperator((out + out.conj().T) / 2, validate=False)


def apply_adjoint(ch: Channel, y) -> np.ndarray:
    return ch.apply_adjoint(as_matrix(y))


def superop_matrix(ch: Channel) -> np.ndarray:
    return ch.superop_matrix()


def superop_distance(a: Channel, b: Channel) -> float:
    return float(np.linalg.norm(a.superop_matrix() - b.superop_matrix()))


def compose(outer: Channel, inner: Channel) -> Channel:
    """
    outer ∘ inner, S(compose) = S_outer S_inner
    """
    if outer.dim_in != inner.dim_out:
        raise DimensionMismatch(
            f"Cannot compose: outer acts on dimension {outer.dim_in}, "
            f"inner outputs dimension {inner.dim_out}"
        )
    if isinstance(outer, WeylMixSpec) and isinstance(inner, WeylMixSpec):
        return outer.compose(inner)
    return KrausChannel(
        [a @ b for a in outer.kraus_operators() for b in inner.kraus_operators()]
    )


def mix(lam: float, a: Channel, b: Channel) -> Channel:
    """
    λ a + (1-λ) b
    """
    if not (0 <= lam <= 1):
        raise InvalidParameter(
            f"Mixing weight must be in [0, 1], received {lam}", parameter="lambda"
        )
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise DimensionMismatch(
            f"Cannot mix channels {a.dim_in}->{a.dim_out} and {b.dim_in}->{b.dim_out}"
        )
    if isinstance(a, WeylMixSpec) and isinstance(b, WeylMixSpec):
        return WeylMixSpec(
            a.d,
            lam * a.coeffs + (1 - lam) * b.coeffs,
            unchecked=a.unchecked or b.unchecked,
        )
    kraus = []
    if lam > 0:
        kraus.extend(np.sqrt(lam) * k for k in a.kraus_operators())
    if lam < 1:
        kraus.extend(np.sqrt(1 - lam) * k for k in b.kraus_operators())
    return KrausChannel(kraus)


def tensor(a: Channel, b: Channel) -> KrausChannel:
    return KrausChannel(
        [np.kron(ka, kb) for ka in a.kraus_operators() for kb in b.kraus_operators()]
    )


def choi_matrix(ch: Channel) -> np.ndarray:
    return ch.choi_matrix()


def cptp_defect(ch: Channel) -> Tuple[float, float]:
    """
    :return: (cp_defect, tp_defect) where cp_defect = max(0, -min eig Choi) and
        tp_defect = ||Tr_out(d Choi) - I||_F
    """
    choi = ch.choi_matrix()
    w, _ = hermitian_eig(choi)
    cp = max(0.0, -float(w[0]))
    reduced = partial_trace_left(ch.dim_in * choi, ch.dim_out, ch.dim_in)
    tp = float(np.linalg.norm(reduced - np.eye(ch.dim_in)))
    return cp, tp


def bistochastic_defect(ch: Channel) -> float:
    if ch.dim_in != ch.dim_out:
        return float("inf")
    d = ch.dim_in
    mixed = np.eye(d, dtype=complex) / d
    return float(np.linalg.norm(ch.apply_matrix(mixed) - mixed))


def fourier_diagonal_unitary(phases) -> np.ndarray:
    """
    U = Σ_j exp(iφ_j) |e_j><e_j|, an element of the maximal commutative group
    """
    phases = np.asarray(phases, dtype=float)
    e = fourier_basis(len(phases)).vectors.T
    return (e * np.exp(1j * phases)) @ e.conj().T


def covariance_defect(ch: Channel, samples: int, rng: RngSeed) -> float:
    """
    max over sampled (U, x) of ||Φ(U x U†) - U Φ(x) U†||_F with U diagonal in
    the Fourier basis
    """
    if ch.dim_in != ch.dim_out:
        raise DimensionMismatch("Covariance needs a channel with dim_in == dim_out")
    gen = as_generator(rng)
    d = ch.dim_in
    worst = 0.0
    for _ in range(samples):
        u = fourier_diagonal_unitary(gen.uniform(0, 2 * np.pi, d))
        x = random_density(d, gen).matrix
        lhs = ch.apply_matrix(u @ x @ u.conj().T)
        rhs = u @ ch.apply_matrix(x) @ u.conj().T
        worst = max(worst, float(np.linalg.norm(lhs - rhs)))
    Logger.debug(f"Covariance defect over {samples} samples: {worst:.3e}")
    return worst
