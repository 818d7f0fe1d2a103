"""privtab: adaptive privacy protection for tabular medical data.

Partition a role-annotated table, apply composable anonymization
transforms, and quantify the trade-off between disclosure risk
(mutual information against the target) and classification utility.
"""

from .dataset import (
    Attribute,
    AttributeRole,
    ColumnKind,
    Dataset,
    PartitionView,
    Schema,
    dataset_to_csv,
    drop_identifiers,
    load_csv,
    partition,
    render_cell,
    standardize_numeric,
    train_test_split,
)
from .transforms import (
    ALL_NUMERIC,
    Bin,
    KAnonymize,
    LDiversify,
    Mask,
    ProtectionPlan,
    RandAdditive,
    RandMultiplicative,
    SuppressionLog,
    apply_plan,
    bin_column,
    enforce_l_diversity,
    k_anonymize,
    mask_column,
    preset_plan,
    PRESET_NAMES,
    rand_additive,
    rand_multiplicative,
)
from .risk import (
    EstimatorConfig,
    JointHistogram,
    MIScore,
    RiskReport,
    attribute_risk_scores,
    discretize_for_mi,
    mutual_information_knn,
    mutual_information_plugin,
    risk_band,
    risk_reduced_ratio,
    with_baseline,
)
from .utility import (
    ConfusionMatrix,
    FeatureEncoder,
    KNNSpec,
    LogRegSpec,
    Metrics,
    PublishedVariant,
    UtilityReport,
    confusion_matrix,
    encode_features,
    knn_predict,
    logreg_fit,
    logreg_fit_predict,
    logreg_gradient,
    logreg_loss,
    logreg_predict,
    metrics_from_cm,
    utility_report,
)
from . import errors

__version__ = "0.1.0"
