from weyl_moe.channels.channeltypes import ChannelType
from weyl_moe.channels.channel import Channel
from weyl_moe.channels.weyl import WeylMixSpec, weyl_operator, shift_defect
from weyl_moe.channels.kraus import KrausChannel
from weyl_moe.channels.builders import (
    ChannelParams,
    weyl_channel,
    identity_channel,
    depolarizing,
    qc_channel,
    phase_damping,
    conditional_expectation,
    qc_via_expectation,
    random_channel,
)
from weyl_moe.channels.operations import (
    apply,
    apply_adjoint,
    superop_matrix,
    superop_distance,
    compose,
    mix,
    tensor,
    choi_matrix,
    cptp_defect,
    bistochastic_defect,
    covariance_defect,
    fourier_diagonal_unitary,
)
from weyl_moe.channels.serialization import to_dict, from_dict, to_json, from_json
