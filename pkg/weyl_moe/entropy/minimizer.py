"""
Multi-start minimisation of the output entropy S(Φ(|ψ><ψ|)) over unit vectors.

S is concave and Φ linear, so the infimum over all states is attained on pure
inputs. Each start runs the majorise-minimise fixed point

    ψ <- top eigenvector of Φ*(log Φ(|ψ><ψ|))

which never increases the objective (the linearisation of a concave function
is an upper bound). The best start is then polished with BFGS on the real
parametrisation of ψ, and the polish is kept only if it improves the value.
"""
from typing import Tuple

import numpy as np
import scipy.optimize
from janis_core.utils.logger import Logger

from weyl_moe.channels import Channel
from weyl_moe.data.models import ChiEstimate
from weyl_moe.entropy.entropy import (
    DEFAULT_CONFIG,
    EntropyConfig,
    output_entropy,
)
from weyl_moe.errors import InvalidParameter
from weyl_moe.linalg import (
    RngSeed,
    as_generator,
    hermitian_eig,
    normalise,
    projector,
    random_pure_state,
    spawn_generators,
)
from weyl_moe.utils.parallel import parallel_map

ORACLE_CHUNK = 4096


class OutputEntropyMinimizer:
    def __init__(self, channel: Channel, cfg: EntropyConfig = None):
        self.channel = channel
        self.cfg = cfg or DEFAULT_CONFIG

    def objective(self, psi) -> float:
        return output_entropy(self.channel, normalise(psi), self.cfg)

    def iterate(self, psi: np.ndarray) -> np.ndarray:
        out = self.channel.apply_matrix(projector(psi))
        w, v = hermitian_eig(out)
        log_out = (v * np.log(np.clip(w, self.cfg.eig_clip, None))) @ v.conj().T
        _, gv = hermitian_eig(self.channel.apply_adjoint(log_out))
        return gv[:, -1]

    def refine(self, psi: np.ndarray) -> Tuple[np.ndarray, float, int]:
        """
        Run the fixed point from psi until the objective changes by less than
        cfg.tolerance or cfg.max_iterations is reached.

        :return: (state, value, iterations)
        """
        value = self.objective(psi)
        iterations = 0
        while iterations < self.cfg.max_iterations:
            iterations += 1
            candidate = self.iterate(psi)
            new_value = self.objective(candidate)
            # eigenvalue clipping can make a step overshoot near rank-deficient outputs
            if new_value > value:
                break
            change = value - new_value
            psi, value = candidate, new_value
            if change < self.cfg.tolerance:
                break
        else:
            Logger.warn(
                f"Output entropy refinement hit the iteration cap "
                f"({self.cfg.max_iterations}) at value {value:.12g}"
            )
        return psi, value, iterations

    def polish(self, psi: np.ndarray) -> Tuple[np.ndarray, float]:
        n = len(psi)

        def f(x):
            return self.objective(x[:n] + 1j * x[n:])

        result = scipy.optimize.minimize(
            f,
            np.concatenate([psi.real, psi.imag]),
            method="BFGS",
            options={"gtol": 1e-10, "maxiter": 200},
        )
        polished = normalise(result.x[:n] + 1j * result.x[n:])
        return polished, self.objective(polished)


def minimize_output_entropy(
    ch: Channel, starts: int = 32, rng: RngSeed = 0, cfg: EntropyConfig = None
) -> ChiEstimate:
    """
    Multi-start estimate of χ(ch) = inf S(ch(x)). The returned value is an
    upper bound, it is attained by ChiEstimate.argmin_state. Start i draws its
    initial vector from a stream that only depends on (rng, i).
    """
    if starts < 1:
        raise InvalidParameter(f"starts must be >= 1, received {starts}", parameter="starts")
    cfg = cfg or DEFAULT_CONFIG
    minimizer = OutputEntropyMinimizer(ch, cfg)
    generators = spawn_generators(rng, starts)

    def run_start(gen):
        return minimizer.refine(random_pure_state(ch.dim_in, gen))

    results = parallel_map(run_start, generators, threads=cfg.threads)
    values = [v for _, v, _ in results]
    best = int(np.argmin(values))
    psi, value, _ = results[best]
    Logger.log(
        f"Best of {starts} starts: {value:.12g} (spread {max(values) - min(values):.3e})"
    )

    polished = False
    if cfg.polish:
        candidate, candidate_value = minimizer.polish(psi)
        if candidate_value < value:
            Logger.debug(f"Polish lowered the value by {value - candidate_value:.3e}")
            psi, value, polished = candidate, candidate_value, True

    return ChiEstimate(
        value=value,
        argmin_state=psi,
        starts=starts,
        iterations_total=sum(it for _, _, it in results),
        spread=max(values) - min(values),
        start_values=values,
        polished=polished,
    )


def _batched_entropies(outputs: np.ndarray, cfg: EntropyConfig) -> np.ndarray:
    spectra = np.linalg.eigvalsh(outputs)
    # masked entries become 1 so they contribute 1 log 1 = 0
    masked = np.where(spectra > cfg.eig_clip, spectra, 1.0)
    return -np.sum(masked * cfg.log(masked), axis=-1)


def _kraus_stack(ch: Channel) -> np.ndarray:
    return np.array(ch.kraus_operators())


def sample_chi_oracle(
    ch: Channel, n_samples: int, rng: RngSeed, cfg: EntropyConfig = None
) -> float:
    """
    Minimum of the output entropy over n_samples Haar-random pure inputs, an
    independent check of minimize_output_entropy.
    """
    if n_samples < 1:
        raise InvalidParameter(
            f"n_samples must be >= 1, received {n_samples}", parameter="samples"
        )
    cfg = cfg or DEFAULT_CONFIG
    gen = as_generator(rng)
    kraus = _kraus_stack(ch)
    best = np.inf
    remaining = n_samples
    while remaining > 0:
        m = min(ORACLE_CHUNK, remaining)
        z = gen.standard_normal((m, ch.dim_in)) + 1j * gen.standard_normal(
            (m, ch.dim_in)
        )
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        kz = np.einsum("rij,nj->rni", kraus, z)
        outputs = np.einsum("rni,rnj->nij", kz, kz.conj())
        best = min(best, float(np.min(_batched_entropies(outputs, cfg))))
        remaining -= m
    return best


def mixed_sample_oracle(
    ch: Channel, n_samples: int, rng: RngSeed, cfg: EntropyConfig = None
) -> float:
    """
    Minimum of the output entropy over n_samples random mixed inputs
    G G†/Tr(G G†). It is never below the pure-state optimum.
    """
    if n_samples < 1:
        raise InvalidParameter(
            f"n_samples must be >= 1, received {n_samples}", parameter="samples"
        )
    cfg = cfg or DEFAULT_CONFIG
    gen = as_generator(rng)
    kraus = _kraus_stack(ch)
    d = ch.dim_in
    best = np.inf
    remaining = n_samples
    while remaining > 0:
        m = min(ORACLE_CHUNK, remaining)
        g = gen.standard_normal((m, d, d)) + 1j * gen.standard_normal((m, d, d))
        rho = g @ np.conj(np.swapaxes(g, 1, 2))
        rho /= np.trace(rho, axis1=1, axis2=2).real[:, None, None]
        outputs = np.einsum("rij,njk,rlk->nil", kraus, rho, kraus.conj())
        best = min(best, float(np.min(_batched_entropies(outputs, cfg))))
        remaining -= m
    return best
