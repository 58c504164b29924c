"""
Inside the region p <= r <= (1/d)(1 - d(d-1)p), d prime, the Weyl channel is
both a convex combination of the depolarizing and q-c channels with q = d²p,
and the phase damping channel Ξ_λ applied after the depolarizing channel.
"""
import numpy as np
from janis_core.utils.logger import Logger

from weyl_moe.bases import is_prime
from weyl_moe.channels import (
    ChannelParams,
    depolarizing,
    mix,
    phase_damping,
    qc_channel,
    superop_distance,
    weyl_channel,
)
from weyl_moe.data.models import DecompositionReport
from weyl_moe.errors import HypothesisViolated

REGION_TOLERANCE = 1e-12


def region_upper(d: int, p: float) -> float:
    return (1 - d * (d - 1) * p) / d


def check_hypothesis(d: int, r: float, p: float):
    if not is_prime(d):
        raise HypothesisViolated(f"d must be prime, received {d}", parameter="d")
    if p < 0:
        raise HypothesisViolated(f"p must be >= 0, received {p}", parameter="p")
    if r < p - REGION_TOLERANCE:
        raise HypothesisViolated(
            f"Requires p <= r, received r={r}, p={p}", parameter="r"
        )
    upper = region_upper(d, p)
    if r > upper + REGION_TOLERANCE:
        raise HypothesisViolated(
            f"Requires r <= (1/d)(1-d(d-1)p) = {upper:.12g}, received r={r}",
            parameter="r",
        )


def in_region(d: int, r: float, p: float) -> bool:
    try:
        check_hypothesis(d, r, p)
        return True
    except HypothesisViolated:
        return False


def decompose_lambda(d: int, r: float, p: float) -> float:
    """
    The λ in [0, 1] with r = λ p + (1-λ)(1/d)(1-d(d-1)p). When p = 1/d² the
    region collapses to r = p and λ = 1.
    """
    check_hypothesis(d, r, p)
    upper = region_upper(d, p)
    denominator = upper - p
    if abs(denominator) <= REGION_TOLERANCE:
        return 1.0
    return float(np.clip((upper - r) / denominator, 0.0, 1.0))


def decomposition_report(
    d: int, r: float, p: float, tolerance: float = 1e-10
) -> DecompositionReport:
    lam = decompose_lambda(d, r, p)
    q = d ** 2 * p
    phi = weyl_channel(ChannelParams(d, r, p))
    dep = depolarizing(d, q)

    mix_residual = superop_distance(phi, mix(lam, dep, qc_channel(d, q)))
    # the product of superoperators, independent of the table convolution in compose
    s_xi = phase_damping(d, lam).superop_matrix()
    compose_residual = float(
        np.linalg.norm(phi.superop_matrix() - s_xi @ dep.superop_matrix())
    )
    Logger.log(
        f"Decomposition d={d}, r={r}, p={p}: λ={lam:.12g}, mix residual "
        f"{mix_residual:.3e}, compose residual {compose_residual:.3e}"
    )
    return DecompositionReport(
        d=d,
        r=r,
        p=p,
        lam=lam,
        mix_residual=mix_residual,
        compose_residual=compose_residual,
        tolerance=tolerance,
    )
