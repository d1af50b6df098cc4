"""Two-qubit entangled-mixed-state toolkit.

Builds the GHZ/W-mixture state family and its amplitude-damped image,
evaluates entanglement and teleportation witnesses, applies Kraus channels,
and computes concurrence, teleportation fidelity, von Neumann entropy,
measurement-induced disturbance, X-state quantum discord, and the CHSH
criterion.  The sweep module and ``nmems`` CLI turn all of it into CSV
tables over (p, theta) grids.
"""

from .channels import (
    KrausChannel,
    adc,
    apply_correlated_pair,
    apply_product_pair,
    apply_single,
    gadc,
    kraus_channel,
)
from .errors import InputError, NumericalError
from .linalg import (
    Spectrum,
    dagger,
    hermitian_eigen,
    kron,
    multiply,
    partial_trace,
    psd_sqrt,
    trace,
)
from .measures import (
    ChshResult,
    CorrelationMatrix,
    DiscordBreakdown,
    FidelityResult,
    binary_entropy,
    chsh_criterion,
    concurrence_wootters,
    concurrence_x,
    correlation_matrix,
    discord_closed_form,
    discord_closed_form_branches,
    discord_closed_form_residuals,
    discord_x,
    fidelity_ad_closed_form,
    fidelity_from_correlation,
    mid_adc,
    mid_dephasing,
    teleportation_fidelity,
    von_neumann_entropy,
)
from .states import (
    DensityMatrix,
    XStateParams,
    ghz_reduced,
    ghz_state,
    nmems,
    nmems_ad,
    projector,
    w_reduced,
    w_state,
    x_matrix_of,
    x_params_of,
)
from .sweep import (
    CHANNEL_MODES,
    PRESETS,
    QUANTITIES,
    SweepRow,
    SweepSpec,
    emit_csv,
    entanglement_boundary,
    preset_spec,
    report_headlines,
    run_sweep,
)
from .witnesses import (
    WitnessOperator,
    WitnessVerdict,
    evaluate,
    witness_generic,
    witness_stabilizer,
    witness_w1,
)

__version__ = "0.1.0"

__all__ = [
    "ChshResult",
    "CorrelationMatrix",
    "CHANNEL_MODES",
    "DensityMatrix",
    "DiscordBreakdown",
    "FidelityResult",
    "InputError",
    "KrausChannel",
    "NumericalError",
    "PRESETS",
    "QUANTITIES",
    "Spectrum",
    "SweepRow",
    "SweepSpec",
    "WitnessOperator",
    "WitnessVerdict",
    "XStateParams",
    "adc",
    "apply_correlated_pair",
    "apply_product_pair",
    "apply_single",
    "binary_entropy",
    "chsh_criterion",
    "concurrence_wootters",
    "concurrence_x",
    "correlation_matrix",
    "dagger",
    "discord_closed_form",
    "discord_closed_form_branches",
    "discord_closed_form_residuals",
    "discord_x",
    "emit_csv",
    "entanglement_boundary",
    "evaluate",
    "fidelity_ad_closed_form",
    "fidelity_from_correlation",
    "gadc",
    "ghz_reduced",
    "ghz_state",
    "hermitian_eigen",
    "kraus_channel",
    "kron",
    "mid_adc",
    "mid_dephasing",
    "multiply",
    "nmems",
    "nmems_ad",
    "partial_trace",
    "preset_spec",
    "projector",
    "psd_sqrt",
    "report_headlines",
    "run_sweep",
    "teleportation_fidelity",
    "trace",
    "von_neumann_entropy",
    "w_reduced",
    "w_state",
    "witness_generic",
    "witness_stabilizer",
    "witness_w1",
    "x_matrix_of",
    "x_params_of",
]
