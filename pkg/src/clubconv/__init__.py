"""clubconv: club convergence analysis for panel indicators.

Core pieces: panel ingestion and target rescaling, relative transition
paths with the log-t convergence regression, endogenous club detection
with merging and transition tests, a membership probit, and a synthetic
panel lab for validating the whole chain.
"""

__version__ = "0.1.0"

from .clustering import (
    ClubPartition,
    ClusterConfig,
    MergeRecord,
    TransitionRecord,
    form_core_group,
    identify_clubs,
    merge_clubs,
    order_units,
    sieve_membership,
    transition_test,
)
from .errors import (
    BandwidthTooLarge,
    ClubConvError,
    DegenerateVariance,
    DimensionMismatch,
    EmptyPanel,
    InvalidConfig,
    InvalidSubset,
    MalformedInput,
    MissingTarget,
    NoConvergence,
    NonPositiveValue,
    SampleTooSmall,
    SeparationError,
    SingularDesign,
    SmoothingBrokePositivity,
)
from .logt import (
    ConvergenceClass,
    Decision,
    HacConfig,
    LogTConfig,
    LogTResult,
    TransitionPaths,
    convergence_test,
    logt_regress,
    newey_west_lrv,
    relative_transitions,
)
from .panel import Panel, TargetVector, UnitId, load_panel, load_targets, rescale_to_targets, write_wide
from .probit import ClassificationTable, DesignMatrix, ProbitFit, classification_table, fit_probit, predict_prob
from .simlab import ClubSpec, DgpConfig, MonteCarloSummary, adjusted_rand_index, generate_panel, monte_carlo
from .smoothing import SmoothingConfig, hp_trend, smooth

__all__ = [
    "__version__",
    "BandwidthTooLarge",
    "ClassificationTable",
    "ClubConvError",
    "ClubPartition",
    "ClubSpec",
    "ClusterConfig",
    "ConvergenceClass",
    "Decision",
    "DegenerateVariance",
    "DesignMatrix",
    "DgpConfig",
    "DimensionMismatch",
    "EmptyPanel",
    "HacConfig",
    "InvalidConfig",
    "InvalidSubset",
    "LogTConfig",
    "LogTResult",
    "MalformedInput",
    "MergeRecord",
    "MissingTarget",
    "MonteCarloSummary",
    "NoConvergence",
    "NonPositiveValue",
    "Panel",
    "ProbitFit",
    "SampleTooSmall",
    "SeparationError",
    "SingularDesign",
    "SmoothingBrokePositivity",
    "SmoothingConfig",
    "TargetVector",
    "TransitionPaths",
    "TransitionRecord",
    "UnitId",
    "adjusted_rand_index",
    "classification_table",
    "convergence_test",
    "fit_probit",
    "form_core_group",
    "generate_panel",
    "hp_trend",
    "identify_clubs",
    "load_panel",
    "load_targets",
    "logt_regress",
    "merge_clubs",
    "monte_carlo",
    "newey_west_lrv",
    "order_units",
    "predict_prob",
    "relative_transitions",
    "rescale_to_targets",
    "sieve_membership",
    "smooth",
    "transition_test",
    "write_wide",
]
