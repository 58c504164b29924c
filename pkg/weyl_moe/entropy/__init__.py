from weyl_moe.entropy.entropy import (
    EntropyConfig,
    DEFAULT_CONFIG,
    entropy_of_spectrum,
    von_neumann_entropy,
    output_entropy,
    chi_dep_closed,
    chi_qc_closed,
)
from weyl_moe.entropy.minimizer import (
    OutputEntropyMinimizer,
    minimize_output_entropy,
    sample_chi_oracle,
    mixed_sample_oracle,
)
