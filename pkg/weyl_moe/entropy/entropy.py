from typing import Optional, Union

import numpy as np

from weyl_moe.channels import Channel
from weyl_moe.data.enums import LogBase
from weyl_moe.errors import InvalidParameter, NegativeEigenvalue
from weyl_moe.linalg import as_matrix, hermitian_eig, projector

NEGATIVE_EIGENVALUE_ERROR = -1e-8


class EntropyConfig:
    """
    Shared settings for entropies and the output-entropy optimiser, every
    entropy compared in one run must come from the same config so the log base
    agrees.
    """

    def __init__(
        self,
        log_base: Union[str, LogBase] = LogBase.two,
        eig_clip: float = 1e-12,
        max_iterations: int = 10000,
        tolerance: float = 1e-11,
        polish: bool = True,
        threads: Optional[int] = None,
    ):
        self.log_base = LogBase.from_str(log_base)
        if eig_clip <= 0:
            raise InvalidParameter(
                f"eig_clip must be > 0, received {eig_clip}", parameter="eig_clip"
            )
        self.eig_clip = eig_clip
        self.max_iterations = max_iterations
        self.tolerance = tolerance
        self.polish = polish
        self.threads = threads

    def log(self, values):
        return self.log_base.log(values)

    def to_dict(self):
        return {
            "log_base": str(self.log_base),
            "eig_clip": self.eig_clip,
            "max_iterations": self.max_iterations,
            "tolerance": self.tolerance,
            "polish": self.polish,
        }


DEFAULT_CONFIG = EntropyConfig()


def entropy_of_spectrum(values, cfg: EntropyConfig = None) -> float:
    """
    -Σ λ log λ with 0 log 0 = 0. Values need not sum to one, values at or
    below eig_clip (including roundoff negatives down to -1e-8) count as zero.
    """
    cfg = cfg or DEFAULT_CONFIG
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < NEGATIVE_EIGENVALUE_ERROR:
        raise NegativeEigenvalue(
            f"Entropy requires a positive semi-definite argument, "
            f"found eigenvalue {values.min():.3e}",
            parameter="a",
        )
    positive = values[values > cfg.eig_clip]
    return float(-np.sum(positive * cfg.log(positive)))


def von_neumann_entropy(a, cfg: EntropyConfig = None) -> float:
    """
    S(a) = -Tr(a log a) for a Hermitian PSD a, unit trace is not required.
    """
    w, _ = hermitian_eig(as_matrix(a))
    return entropy_of_spectrum(w, cfg)


def output_entropy(ch: Channel, psi, cfg: EntropyConfig = None) -> float:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return von_neumann_entropy(ch.apply_matrix(projector(psi)), cfg)


def _dep_spectrum(d: int, q: float):
    return [1 - (d - 1) / d * q] + [q / d] * (d - 1)


def chi_dep_closed(d: int, q: float, cfg: EntropyConfig = None) -> float:
    """
    -(1-((d-1)/d)q) log(1-((d-1)/d)q) - (d-1)(q/d) log(q/d), the minimal output
    entropy of the depolarizing channel. q may reach d²/(d²-1).
    """
    upper = d ** 2 / (d ** 2 - 1) if d > 1 else 1.0
    if not (0 <= q <= upper + 1e-12):
        raise InvalidParameter(
            f"q must be in [0, {upper:.12g}] for the depolarizing channel, received {q}",
            parameter="q",
        )
    return entropy_of_spectrum(_dep_spectrum(d, q), cfg)


def chi_qc_closed(d: int, q: float, cfg: EntropyConfig = None) -> float:
    """
    Minimal output entropy of the Fourier-basis q-c channel, the same expression
    as chi_dep_closed on 0 <= q <= d/(d-1).
    """
    if d < 2 or not (0 <= q <= d / (d - 1) + 1e-12):
        raise InvalidParameter(
            f"q must be in [0, d/(d-1)] for the q-c channel, received q={q}, d={d}",
            parameter="q",
        )
    return entropy_of_spectrum(np.clip(_dep_spectrum(d, q), 0, None), cfg)
