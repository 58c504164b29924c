"""
Numerical checks of the tensor-product entropy bound

    S((Φ ⊗ Ψ)(x)) >= χ(Φ) + (1/d²) Σ_s Σ_j S(Ψ(x_j^s))

where x_j^s = d Tr_H((|h_j^s><h_j^s| ⊗ I_K) x) and (h_j^s) runs over the d
mutually unbiased bases of mub_family(d). The x_j^s need not have unit trace,
their entropy is -Tr(a log a) on the unnormalised operator.
"""
from typing import List, Optional, Tuple

import numpy as np
from janis_core.utils.logger import Logger

from weyl_moe.bases import BasisFamily, mub_family
from weyl_moe.channels import (
    Channel,
    ChannelParams,
    depolarizing,
    identity_channel,
    tensor,
    weyl_channel,
)
from weyl_moe.data.enums import Variant
from weyl_moe.data.models import TheoremReport
from weyl_moe.entropy import (
    DEFAULT_CONFIG,
    EntropyConfig,
    chi_dep_closed,
    minimize_output_entropy,
    von_neumann_entropy,
)
from weyl_moe.errors import DimensionMismatch, InvalidParameter
from weyl_moe.linalg import (
    DensityOperator,
    RngSeed,
    as_matrix,
    density_from_vector,
    random_density,
    random_pure_state,
    spawn_generators,
    validate_density,
)
from weyl_moe.utils.parallel import parallel_map
from weyl_moe.verify.decomposition import (
    check_hypothesis,
    decompose_lambda,
    in_region,
)

PASS_THRESHOLD = -1e-8
EXPLORATORY_STARTS = 16


def conditional_operators(
    x, d: int, k: int, family: BasisFamily
) -> List[List[np.ndarray]]:
    """
    x_j^s = d (<h_j^s| ⊗ I_K) x (|h_j^s> ⊗ I_K), a k x k block for every basis s
    and index j.
    """
    x = as_matrix(x)
    if x.shape != (d * k, d * k):
        raise DimensionMismatch(
            f"Expected a state on C^{d} ⊗ C^{k}, received shape {x.shape}",
            parameter="x",
        )
    if family.dim != d:
        raise DimensionMismatch(
            f"Basis family has dimension {family.dim}, expected {d}", parameter="bases"
        )
    blocks = x.reshape(d, k, d, k)
    return [
        [d * np.einsum("i,iajb,j->ab", h.conj(), blocks, h) for h in basis]
        for basis in family
    ]


def psi_description(psi: Channel) -> dict:
    return {
        "type": str(psi.chtype),
        "dim": psi.dim_in,
        "kraus_rank": len(psi.kraus_operators()),
    }


class BoundEvaluator:
    """
    Evaluates both sides of the bound for a fixed pair of channels. phi acts on
    the first factor (dimension d), psi on the second.
    """

    def __init__(
        self,
        phi: Channel,
        psi: Channel,
        chi_term: float,
        params: ChannelParams,
        lam: Optional[float],
        cfg: EntropyConfig = None,
        family: BasisFamily = None,
        psi_spec: dict = None,
        exploratory: bool = False,
        threshold: float = PASS_THRESHOLD,
    ):
        self.phi = phi
        self.psi = psi
        self.chi_term = chi_term
        self.params = params
        self.lam = lam
        self.cfg = cfg or DEFAULT_CONFIG
        self.family = family or mub_family(params.d)
        self.psi_spec = psi_spec or psi_description(psi)
        self.exploratory = exploratory
        self.threshold = threshold
        self.joint = tensor(phi, psi)

    @property
    def d(self) -> int:
        return self.phi.dim_in

    @property
    def k(self) -> int:
        return self.psi.dim_in

    def basis_terms(self, x) -> Tuple[List[List[float]], float]:
        """
        :return: (S(Ψ(x_j^s)) as a [s][j] table, the normalized-variant sum
            (1/d) Σ_s Σ_j (Tr x_j^s / d) S(Ψ(x_j^s / Tr x_j^s)))
        """
        d = self.d
        literal, normalized = [], 0.0
        for row in conditional_operators(x, d, self.k, self.family):
            literal_row = []
            for xjs in row:
                out = self.psi.apply_matrix(xjs)
                literal_row.append(von_neumann_entropy(out, self.cfg))
                t = float(np.trace(xjs).real)
                if t > self.cfg.eig_clip:
                    normalized += (t / d) * von_neumann_entropy(out / t, self.cfg)
            literal.append(literal_row)
        return literal, normalized / d

    def rhs(self, x) -> float:
        terms, _ = self.basis_terms(x)
        return self.chi_term + float(np.sum(terms)) / self.d ** 2

    def lhs(self, x) -> float:
        return von_neumann_entropy(self.joint.apply_matrix(as_matrix(x)), self.cfg)

    def evaluate(self, x, seed=None) -> TheoremReport:
        x = as_matrix(x)
        validate_density(x)
        if x.shape != (self.d * self.k, self.d * self.k):
            raise DimensionMismatch(
                f"Expected a state on C^{self.d} ⊗ C^{self.k}, "
                f"received shape {x.shape}",
                parameter="x",
            )
        terms, normalized = self.basis_terms(x)
        lhs = self.lhs(x)
        rhs = self.chi_term + float(np.sum(terms)) / self.d ** 2
        report = TheoremReport(
            d=self.params.d,
            r=self.params.r,
            p=self.params.p,
            lam=self.lam,
            lhs=lhs,
            rhs=rhs,
            per_basis_terms=terms,
            variant=Variant.literal,
            chi_term=self.chi_term,
            normalized_rhs=self.chi_term + normalized,
            seed=seed,
            psi_spec=self.psi_spec,
            exploratory=self.exploratory,
            threshold=self.threshold,
        )
        Logger.debug(f"Bound at seed {seed}: margin {report.margin:.3e}")
        return report


def theorem_evaluator(
    d: int,
    r: float,
    p: float,
    psi: Channel,
    cfg: EntropyConfig = None,
    exploratory: bool = False,
    psi_spec: dict = None,
    threshold: float = PASS_THRESHOLD,
) -> BoundEvaluator:
    """
    Builds the evaluator for Φ = weyl_channel(d, r, p). In the region the χ(Φ)
    term is chi_dep_closed(d, d²p). exploratory=True skips the region check and
    estimates χ(Φ) with the optimizer instead, d must still be prime.
    """
    cfg = cfg or DEFAULT_CONFIG
    params = ChannelParams(d, r, p)
    if exploratory:
        phi = weyl_channel(params)
        lam = decompose_lambda(d, r, p) if in_region(d, r, p) else None
        chi = minimize_output_entropy(phi, starts=EXPLORATORY_STARTS, rng=0, cfg=cfg)
        chi_term = chi.value
        Logger.warn(
            f"Exploratory run for d={d}, r={r}, p={p}, "
            f"the result does not gate acceptance"
        )
    else:
        check_hypothesis(d, r, p)
        lam = decompose_lambda(d, r, p)
        phi = weyl_channel(params)
        chi_term = chi_dep_closed(d, d ** 2 * p, cfg)
    return BoundEvaluator(
        phi,
        psi,
        chi_term,
        params,
        lam,
        cfg=cfg,
        family=mub_family(d),
        psi_spec=psi_spec,
        exploratory=exploratory,
        threshold=threshold,
    )


def theorem2_evaluator(
    d: int,
    q: float,
    k: int,
    cfg: EntropyConfig = None,
    threshold: float = PASS_THRESHOLD,
) -> BoundEvaluator:
    """
    The depolarizing form of the bound, S((Φ_dep ⊗ Id)(x)) >= χ(Φ_dep) +
    (1/d²) Σ_s Σ_j S(x_j^s), for 0 <= q <= d²/(d²-1).
    """
    if k < 1:
        raise InvalidParameter(f"k must be >= 1, received {k}", parameter="k")
    cfg = cfg or DEFAULT_CONFIG
    family = mub_family(d)
    phi = depolarizing(d, q, extended=True)
    return BoundEvaluator(
        phi,
        identity_channel(k),
        chi_dep_closed(d, q, cfg),
        ChannelParams(d, q / d ** 2, q / d ** 2),
        1.0,
        cfg=cfg,
        family=family,
        psi_spec={"type": "identity", "dim": k, "kraus_rank": 1},
        threshold=threshold,
    )


def _split_dimension(x, d: int) -> int:
    n = as_matrix(x).shape[0]
    if n % d:
        raise DimensionMismatch(
            f"A state of dimension {n} is not on C^{d} ⊗ C^k", parameter="x"
        )
    return n // d


def theorem_rhs(
    d: int,
    r: float,
    p: float,
    psi: Channel,
    x,
    bases: BasisFamily = None,
    cfg: EntropyConfig = None,
) -> float:
    check_hypothesis(d, r, p)
    cfg = cfg or DEFAULT_CONFIG
    k = _split_dimension(x, d)
    if psi.dim_in != k:
        raise DimensionMismatch(
            f"Ψ acts on dimension {psi.dim_in}, the state has k={k}", parameter="psi"
        )
    evaluator = BoundEvaluator(
        weyl_channel(ChannelParams(d, r, p)),
        psi,
        chi_dep_closed(d, d ** 2 * p, cfg),
        ChannelParams(d, r, p),
        decompose_lambda(d, r, p),
        cfg=cfg,
        family=bases or mub_family(d),
    )
    return evaluator.rhs(x)


def theorem_margin(
    d: int,
    r: float,
    p: float,
    psi: Channel,
    x,
    cfg: EntropyConfig = None,
    exploratory: bool = False,
    seed=None,
    psi_spec: dict = None,
    threshold: float = PASS_THRESHOLD,
) -> TheoremReport:
    k = _split_dimension(x, d)
    if psi.dim_in != k:
        raise DimensionMismatch(
            f"Ψ acts on dimension {psi.dim_in}, the state has k={k}", parameter="psi"
        )
    evaluator = theorem_evaluator(
        d,
        r,
        p,
        psi,
        cfg,
        exploratory=exploratory,
        psi_spec=psi_spec,
        threshold=threshold,
    )
    return evaluator.evaluate(x, seed=seed)


def theorem2_margin(
    d: int, q_dep: float, x, cfg: EntropyConfig = None, seed=None
) -> TheoremReport:
    if not (0 <= q_dep <= d ** 2 / (d ** 2 - 1) + 1e-12):
        raise InvalidParameter(
            f"q must be in [0, d²/(d²-1)], received {q_dep}", parameter="q"
        )
    return theorem2_evaluator(d, q_dep, _split_dimension(x, d), cfg).evaluate(
        x, seed=seed
    )


def monotonicity_margin(
    d: int, r: float, p: float, psi: Channel, x, cfg: EntropyConfig = None
) -> float:
    """
    S((Φ ⊗ Ψ)x) - S((Φ_dep ⊗ Ψ)x) with q = d²p. Φ = Ξ ∘ Φ_dep and Ξ is unital, so
    the margin is non-negative.
    """
    check_hypothesis(d, r, p)
    x = as_matrix(x)
    phi = weyl_channel(ChannelParams(d, r, p))
    dep = depolarizing(d, d ** 2 * p)
    s_phi = von_neumann_entropy(tensor(phi, psi).apply_matrix(x), cfg)
    s_dep = von_neumann_entropy(tensor(dep, psi).apply_matrix(x), cfg)
    return s_phi - s_dep


def random_composite_state(n: int, index: int, rng: RngSeed) -> DensityOperator:
    """
    Even indices draw Haar pure states, odd indices full-rank Ginibre states.
    """
    if index % 2 == 0:
        return density_from_vector(random_pure_state(n, rng))
    return random_density(n, rng)


def random_bound_batch(
    evaluator: BoundEvaluator, n: int, seed: int
) -> List[TheoremReport]:
    """
    n independent reports, state i is drawn from a stream that only depends on
    (seed, i), so the batch is identical however it is scheduled.
    """
    if n < 1:
        raise InvalidParameter(
            f"A batch needs at least one state, received n={n}", parameter="n"
        )
    dim = evaluator.d * evaluator.k
    generators = spawn_generators(seed, n)

    def run(task):
        i, gen = task
        return evaluator.evaluate(random_composite_state(dim, i, gen), seed=seed)

    reports = parallel_map(
        run, list(enumerate(generators)), threads=evaluator.cfg.threads
    )
    worst = min(r.margin for r in reports)
    Logger.log(f"Batch of {n} states: worst margin {worst:.3e}")
    return reports


def random_theorem_batch(
    d: int,
    r: float,
    p: float,
    psi: Channel,
    k: int,
    n: int,
    seed: int,
    cfg: EntropyConfig = None,
    exploratory: bool = False,
    psi_spec: dict = None,
    threshold: float = PASS_THRESHOLD,
) -> List[TheoremReport]:
    if psi.dim_in != k:
        raise DimensionMismatch(
            f"Ψ acts on dimension {psi.dim_in}, expected k={k}", parameter="psi"
        )
    evaluator = theorem_evaluator(
        d,
        r,
        p,
        psi,
        cfg,
        exploratory=exploratory,
        psi_spec=psi_spec,
        threshold=threshold,
    )
    return random_bound_batch(evaluator, n, seed)


def random_theorem2_batch(
    d: int,
    q: float,
    k: int,
    n: int,
    seed: int,
    cfg: EntropyConfig = None,
    threshold: float = PASS_THRESHOLD,
) -> List[TheoremReport]:
    return random_bound_batch(theorem2_evaluator(d, q, k, cfg, threshold), n, seed)
