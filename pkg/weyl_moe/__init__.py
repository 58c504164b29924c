from weyl_moe.linalg import DensityOperator, partial_trace_left, partial_trace_right
from weyl_moe.bases import Basis, BasisFamily, fourier_basis, mub_family
from weyl_moe.channels import (
    Channel,
    ChannelParams,
    KrausChannel,
    WeylMixSpec,
    weyl_channel,
    depolarizing,
    qc_channel,
    phase_damping,
    random_channel,
    tensor,
)
from weyl_moe.entropy import (
    EntropyConfig,
    von_neumann_entropy,
    chi_dep_closed,
    chi_qc_closed,
    minimize_output_entropy,
)
from weyl_moe.verify import (
    decompose_lambda,
    theorem_margin,
    theorem2_margin,
    additivity_gap,
)
from weyl_moe.errors import WeylMoeError, InvalidParameter, HypothesisViolated
from weyl_moe.__meta__ import __version__
