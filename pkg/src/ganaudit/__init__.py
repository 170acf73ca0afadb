"""ganaudit: fairness auditing for natural-vs-GAN image detectors.

Computes per-group classification measures (Acc, Acc_gan, Acc_real, FPR,
FNR) and pairwise bias measures (ACS, DP, EO) over gender, skin, affect, and
intersectional groups, and quantifies how JPEG re-encoding of the corpus
shifts them.
"""

from .compression import CompressionConfig, compress_corpus, verify_derived
from .manifest import (
    AttributeSet,
    ClassLabel,
    GroupSelector,
    ImageRecord,
    Manifest,
    PairSpec,
    ValidationReport,
    load_manifest,
    save_manifest,
    select_group,
    standard_groups,
    standard_pairs,
    validate_manifest,
)
from .metrics import (
    AuditResult,
    ConfusionCounts,
    GroupMetrics,
    PairResult,
    ScoreMode,
    acs,
    class_prediction_rate,
    confusion,
    dp,
    eo,
    evaluate_all,
    group_metrics,
)
from .predictions import (
    EvaluationSet,
    PredictionRecord,
    join,
    load_predictions,
    predicted_class,
    save_predictions,
)
from .report import (
    BiasFlag,
    SettingComparison,
    compare_settings,
    flag_bias,
    render_individual_table,
    render_pairwise_table,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeSet", "AuditResult", "BiasFlag", "ClassLabel", "CompressionConfig",
    "ConfusionCounts", "EvaluationSet", "GroupMetrics", "GroupSelector",
    "ImageRecord", "Manifest", "PairResult", "PairSpec", "PredictionRecord",
    "ScoreMode", "SettingComparison", "ValidationReport",
    "acs", "class_prediction_rate", "compare_settings", "compress_corpus",
    "confusion", "dp", "eo", "evaluate_all", "flag_bias", "group_metrics",
    "join", "load_manifest", "load_predictions", "predicted_class",
    "render_individual_table", "render_pairwise_table", "save_manifest",
    "save_predictions", "select_group", "standard_groups", "standard_pairs",
    "validate_manifest", "verify_derived",
]
