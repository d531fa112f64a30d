"""gapfill: recovery of a missing block of samples in discrete-time complex sequences.

Two schemes are provided: optimal band-limited smoothing (project the
observations onto the band-limited class and read the gap off the
projection) and transform-degeneracy recovery (fill the gap so the
transform and its derivatives vanish at a probe frequency, which is exact
on the degenerate class).  Generators, operator-norm robustness checks,
and a seeded experiment harness round out the toolkit.
"""

from .bandlimited import BLRecoveryResult, recover_bl, recover_bl_single, single_gap_weight
from .degenerate import (
    ConstraintMatrix,
    DegRecoveryResult,
    constraint_matrix,
    minimax_error_identity,
    recover_deg,
    recover_deg_single,
)
from .errors import (
    DimensionTooLarge,
    EmptyInput,
    GapfillError,
    InvalidGap,
    MissingGroundTruth,
    ScenarioMismatch,
    SingularSystem,
)
from .generators import (
    BLAtomSpec,
    add_noise,
    gap_free_noise,
    make_degenerate,
    random_atoms,
    synth_bandlimited,
    synth_ell1,
    truncate,
)
from .harness import (
    ExperimentConfig,
    MethodSpec,
    TrialRecord,
    parse_angle,
    run_experiment,
    summarize,
)
from .lowpass import GapMatrix, Kernel, convolve_lowpass, gap_matrix, kernel_value
from .opnorms import NormReport, inf_input_upper, op_norm, spectral_norm
from .robustness import (
    BLScenario,
    BoundCheck,
    BoundReport,
    DegScenario,
    check_r1_bound,
    check_r2_bound,
    random_bl_scenario,
    random_deg_scenario,
)
from .sequences import (
    FiniteSequence,
    GapSpec,
    SpectralProbe,
    add,
    clear_gap,
    from_pairs,
    norm,
    overlay_gap,
    read_sequence_csv,
    scale,
    subtract,
    weighted_moment,
    write_sequence_csv,
    z_derivatives,
)

__version__ = "0.1.0"

__all__ = [
    "BLAtomSpec",
    "BLRecoveryResult",
    "BLScenario",
    "BoundCheck",
    "BoundReport",
    "ConstraintMatrix",
    "DegRecoveryResult",
    "DegScenario",
    "DimensionTooLarge",
    "EmptyInput",
    "ExperimentConfig",
    "FiniteSequence",
    "GapMatrix",
    "GapSpec",
    "GapfillError",
    "InvalidGap",
    "Kernel",
    "MethodSpec",
    "MissingGroundTruth",
    "NormReport",
    "ScenarioMismatch",
    "SingularSystem",
    "SpectralProbe",
    "TrialRecord",
    "add",
    "add_noise",
    "check_r1_bound",
    "check_r2_bound",
    "clear_gap",
    "constraint_matrix",
    "convolve_lowpass",
    "from_pairs",
    "gap_free_noise",
    "gap_matrix",
    "inf_input_upper",
    "kernel_value",
    "make_degenerate",
    "minimax_error_identity",
    "norm",
    "op_norm",
    "overlay_gap",
    "parse_angle",
    "random_atoms",
    "random_bl_scenario",
    "random_deg_scenario",
    "read_sequence_csv",
    "recover_bl",
    "recover_bl_single",
    "recover_deg",
    "recover_deg_single",
    "run_experiment",
    "scale",
    "single_gap_weight",
    "spectral_norm",
    "subtract",
    "summarize",
    "synth_bandlimited",
    "synth_ell1",
    "truncate",
    "weighted_moment",
    "write_sequence_csv",
    "z_derivatives",
]
