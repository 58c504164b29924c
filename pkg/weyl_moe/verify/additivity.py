from janis_core.utils.logger import Logger

from weyl_moe.channels import Channel, ChannelParams, tensor, weyl_channel
from weyl_moe.data.models import AdditivityReport, ChiReport
from weyl_moe.entropy import (
    DEFAULT_CONFIG,
    EntropyConfig,
    chi_dep_closed,
    minimize_output_entropy,
    sample_chi_oracle,
)
from weyl_moe.linalg import RngSeed, spawn_generators
from weyl_moe.verify.decomposition import decompose_lambda


def additivity_gap(
    phi_params: ChannelParams,
    psi: Channel,
    starts: int = 32,
    rng: RngSeed = 0,
    cfg: EntropyConfig = None,
    psi_spec: dict = None,
    tolerance: float = 1e-5,
) -> AdditivityReport:
    """
    gap = χ(Φ ⊗ Ψ) - χ(Φ) - χ(Ψ), every term estimated by the optimizer.
    Product inputs bound χ(Φ ⊗ Ψ) by the sum, so a large positive gap means
    the tensor optimisation did not converge.
    """
    cfg = cfg or DEFAULT_CONFIG
    d, r, p = phi_params.d, phi_params.r, phi_params.p
    lam = decompose_lambda(d, r, p)
    phi = weyl_channel(phi_params)

    gen_phi, gen_psi, gen_tensor = spawn_generators(rng, 3)
    chi_phi = minimize_output_entropy(phi, starts, gen_phi, cfg).value
    chi_psi = minimize_output_entropy(psi, starts, gen_psi, cfg).value
    joint = tensor(phi, psi)
    chi_tensor = minimize_output_entropy(joint, starts, gen_tensor, cfg).value

    report = AdditivityReport(
        d=d,
        r=r,
        p=p,
        lam=lam,
        chi_phi=chi_phi,
        chi_psi=chi_psi,
        chi_tensor=chi_tensor,
        seed=rng if isinstance(rng, int) else None,
        psi_spec=psi_spec,
        tolerance=tolerance,
    )
    Logger.info(f"Additivity gap for d={d}, r={r}, p={p}: {report.gap:.3e}")
    return report


def chi_weyl_check(
    d: int,
    r: float,
    p: float,
    starts: int = 32,
    samples: int = 10000,
    rng: RngSeed = 0,
    cfg: EntropyConfig = None,
    tolerance: float = 1e-6,
) -> ChiReport:
    """
    χ(weyl_channel(d, r, p)) from the optimizer and the sampling oracle next to
    the depolarizing closed form at q = d²p, which it equals in the region.
    """
    cfg = cfg or DEFAULT_CONFIG
    params = ChannelParams(d, r, p)
    decompose_lambda(d, r, p)
    phi = weyl_channel(params)

    gen_opt, gen_oracle = spawn_generators(rng, 2)
    estimate = minimize_output_entropy(phi, starts, gen_opt, cfg)
    oracle = sample_chi_oracle(phi, samples, gen_oracle, cfg) if samples else None
    return ChiReport(
        channel_spec={"type": "weyl", **params.to_dict()},
        estimate=estimate,
        closed_form=chi_dep_closed(d, d ** 2 * p, cfg),
        oracle=oracle,
        seed=rng if isinstance(rng, int) else None,
        tolerance=tolerance,
    )
