"""Achievable rates of cat codes and concatenated cat codes on Pauli channels,
threshold searches, and channel degradability tests."""

from .channels import (
    Basis,
    ChannelFamily,
    InvalidDistributionError,
    NOISELESS,
    NoSolutionError,
    PauliChannel,
    entropy4,
    evaluate_family,
    hashing_rate,
    make_family,
    permute_basis,
)
from .catcode import (
    CatCodeSpec,
    SyndromeClass,
    ZeroProbabilityClassError,
    cat_rate,
    induced_channel,
    joint_prob,
    joint_prob_hetero,
    joint_prob_hetero_grouped,
    logical_z_flip_prob,
    syndrome_classes,
)
from .concat import (
    CompositionLimitError,
    ConcatSpec,
    InducedEnsemble,
    concat_rate,
    induced_ensemble,
)
from .degradable import (
    ChannelMatrixRep,
    DegradabilityVerdict,
    KrausSet,
    choi_of_map,
    complementary,
    degradability_verdict,
    kraus_from_pauli,
    natural_rep,
    solve_degrading,
)
from .search import (
    NoBracketError,
    ScanRow,
    ThresholdResult,
    asymptotic_rate_estimate,
    best_length_scan,
    best_threshold_scan,
    code_rate,
    rule_of_thumb_lengths,
    threshold,
)
from .slog import SignedLog, slog_pow, slog_sum

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
