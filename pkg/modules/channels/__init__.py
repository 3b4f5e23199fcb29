"""截断空间上的量子信道、Choi 构造与测量-制备信道"""

from .channel import (
    QuantumChannel,
    apply,
    apply_extended,
    apply_extended_second,
    apply_local,
    broadcast_channel,
    channel_from_choi,
    choi_matrix,
    completeness_residual,
    dephasing_channel,
    depolarizing_channel,
    fragment_channel,
    identity_channel,
    random_channel,
    replacement_channel,
)
from .choi import ModifiedChoi, TruncatedChoi, modified_choi, truncate_input_side, truncated_choi
from .measure_prepare import (
    MeasurePrepare,
    build_measure_prepare,
    check_povm,
    measure_prepare_from_povm,
    random_povm,
    random_projective_povm,
    separable_choi,
)

__all__ = [
    "MeasurePrepare",
    "ModifiedChoi",
    "QuantumChannel",
    "TruncatedChoi",
    "apply",
    "apply_extended",
    "apply_extended_second",
    "apply_local",
    "broadcast_channel",
    "build_measure_prepare",
    "channel_from_choi",
    "check_povm",
    "choi_matrix",
    "completeness_residual",
    "dephasing_channel",
    "depolarizing_channel",
    "fragment_channel",
    "identity_channel",
    "measure_prepare_from_povm",
    "modified_choi",
    "random_channel",
    "random_povm",
    "random_projective_povm",
    "replacement_channel",
    "separable_choi",
    "truncate_input_side",
    "truncated_choi",
]
