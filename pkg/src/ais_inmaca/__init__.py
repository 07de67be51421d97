"""Fuzzy multiple-attractor cellular-automata classifier with clonal-selection
training, window-based DNA coding-region and promoter prediction, and
nucleotide-level evaluation metrics."""

__version__ = "0.1.0"

from .clonal_trainer import TrainerConfig, TrainerReport, train
from .errors import DimensionMismatch, ParseError, StateSpaceError, VersionError
from .evaluation import (
    ConfusionCounts,
    DerivedCounts,
    MetricsReport,
    accuracy,
    confusion_from_regions,
    correlation,
    derive,
    metrics_report,
    sensitivity,
    specificity,
)
from .feature_extract import (
    CODING_SCHEMA,
    PROMOTER_SCHEMA,
    FeatureVector,
    coding_features,
    promoter_features,
)
from .fuzzy_ca import (
    RULE_CATALOG,
    EvolutionResult,
    FuzzyLattice,
    FuzzyLevels,
    LocalRule,
    RuleId,
    basin_map,
    evolve,
    make_levels,
    quantize,
    step,
)
from .maca_model import (
    LabeledExample,
    TrainedModel,
    classify,
    deserialize,
    encode,
    fit_basins,
    label_basins,
    serialize,
)
from .region_report import (
    GENE_TABLE_HEADER,
    PROMOTER_TABLE_HEADER,
    GeneElementRow,
    PromoterRow,
    RegionCall,
    gene_table,
    merge_windows,
    promoter_table,
)
from .seq_ingest import (
    SequenceRecord,
    Window,
    WindowSpec,
    load_table,
    parse_fasta,
    reverse_complement,
    windows,
)

__all__ = [
    "__version__",
    "TrainerConfig",
    "TrainerReport",
    "train",
    "DimensionMismatch",
    "ParseError",
    "StateSpaceError",
    "VersionError",
    "ConfusionCounts",
    "DerivedCounts",
    "MetricsReport",
    "accuracy",
    "confusion_from_regions",
    "correlation",
    "derive",
    "metrics_report",
    "sensitivity",
    "specificity",
    "CODING_SCHEMA",
    "PROMOTER_SCHEMA",
    "FeatureVector",
    "coding_features",
    "promoter_features",
    "RULE_CATALOG",
    "EvolutionResult",
    "FuzzyLattice",
    "FuzzyLevels",
    "LocalRule",
    "RuleId",
    "basin_map",
    "evolve",
    "make_levels",
    "quantize",
    "step",
    "LabeledExample",
    "TrainedModel",
    "classify",
    "deserialize",
    "encode",
    "fit_basins",
    "label_basins",
    "serialize",
    "GENE_TABLE_HEADER",
    "PROMOTER_TABLE_HEADER",
    "GeneElementRow",
    "PromoterRow",
    "RegionCall",
    "gene_table",
    "merge_windows",
    "promoter_table",
    "SequenceRecord",
    "Window",
    "WindowSpec",
    "load_table",
    "parse_fasta",
    "reverse_complement",
    "windows",
]
