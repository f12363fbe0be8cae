"""Sequential entanglement witnessing with unsharp measurements.

A library and CLI computing how many sequential, independent, unsharply
measuring observers can witness entanglement with a single projectively
measuring partner: cascade thresholds, observer counts as a coarse-grained
entanglement measure, the equal-sharpness staircase, and residual
correlations of the final averaged state.

All library functions are pure; they may be called concurrently without
synchronization.
"""

__version__ = "0.1.0"

from .cascade import (
    CascadeReport,
    EqualLambdaPoint,
    OutOfRange,
    SweepPoint,
    boundary_bisect,
    entanglement_to_ab,
    equal_lambda_boundary,
    final_cascade_state,
    max_bobs_equal,
    next_threshold,
    sweep_entanglement,
    sweep_lambda,
    threshold_cascade,
)
from .correlations import (
    DiscordReport,
    discord,
    mutual_information,
    negativity,
    pure_state_entanglement,
    von_neumann_entropy,
)
from .measurement import (
    BadDirection,
    BadSharpness,
    Effect,
    MeasuredOutcome,
    ZeroProbability,
    averaged_channel,
    averaged_channel_pauli,
    effect_operator,
    luders_update,
    shrink_factor,
    sqrt_effect,
)
from .qmath import (
    InvalidState,
    NotHermitian,
    PauliForm,
    assert_valid_state,
    bell_psi_plus,
    hermitian_eigs,
    maximally_mixed,
    partial_trace,
    partial_transpose,
    pauli_compose,
    pauli_decompose,
    pure_entangled_state,
    tensor,
    werner_state,
)
from .witness import (
    BadSchedule,
    bell_witness,
    bell_witness_unsharp,
    sample_separable_states,
    stage_witness_value,
    witness_expectation,
)

__all__ = [
    "__version__",
    "BadDirection",
    "BadSchedule",
    "BadSharpness",
    "CascadeReport",
    "DiscordReport",
    "Effect",
    "EqualLambdaPoint",
    "InvalidState",
    "MeasuredOutcome",
    "NotHermitian",
    "OutOfRange",
    "PauliForm",
    "SweepPoint",
    "ZeroProbability",
    "assert_valid_state",
    "averaged_channel",
    "averaged_channel_pauli",
    "bell_psi_plus",
    "bell_witness",
    "bell_witness_unsharp",
    "boundary_bisect",
    "discord",
    "effect_operator",
    "entanglement_to_ab",
    "equal_lambda_boundary",
    "final_cascade_state",
    "hermitian_eigs",
    "luders_update",
    "max_bobs_equal",
    "maximally_mixed",
    "mutual_information",
    "negativity",
    "next_threshold",
    "partial_trace",
    "partial_transpose",
    "pauli_compose",
    "pauli_decompose",
    "pure_entangled_state",
    "pure_state_entanglement",
    "sample_separable_states",
    "shrink_factor",
    "sqrt_effect",
    "stage_witness_value",
    "sweep_entanglement",
    "sweep_lambda",
    "tensor",
    "threshold_cascade",
    "von_neumann_entropy",
    "werner_state",
    "witness_expectation",
]
