"""Capacity upper bounds for qubit channels from temporal correlations."""

from .bounds import (
    BoundReport,
    OptimizerConfig,
    SweepRow,
    analytic_shifted_depol,
    causality_bound,
    compare_bounds,
    hw_bound,
    maxrains_surrogate,
    sweep_shifted_depol,
)
from .channels import (
    ChannelFormatError,
    QuantumChannel,
    apply,
    choi,
    compose,
    conjugate,
    from_kraus,
    kraus_from_choi,
    load_channel,
    named_channel,
    random_channel,
    save_channel,
    shifted_depolarizing,
    tensor,
)
from .pdm import (
    PseudoDensityMatrix,
    causality_F,
    f_tr,
    lemma1_check,
    log_negativity,
    pdm_from_channel,
    pdm_two_point,
    swap_matrix,
)
from .verify import (
    FidelityCheckRecord,
    entanglement_fidelity,
    fidelity,
    fvg_check,
    lemma2_suite,
)

__all__ = [
    "BoundReport",
    "ChannelFormatError",
    "FidelityCheckRecord",
    "OptimizerConfig",
    "PseudoDensityMatrix",
    "QuantumChannel",
    "SweepRow",
    "analytic_shifted_depol",
    "apply",
    "causality_F",
    "causality_bound",
    "choi",
    "compare_bounds",
    "compose",
    "conjugate",
    "entanglement_fidelity",
    "f_tr",
    "fidelity",
    "from_kraus",
    "fvg_check",
    "hw_bound",
    "kraus_from_choi",
    "lemma1_check",
    "lemma2_suite",
    "load_channel",
    "log_negativity",
    "maxrains_surrogate",
    "named_channel",
    "pdm_from_channel",
    "pdm_two_point",
    "random_channel",
    "save_channel",
    "shifted_depolarizing",
    "sweep_shifted_depol",
    "swap_matrix",
    "tensor",
]
