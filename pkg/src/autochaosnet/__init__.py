"""Training-free chaotic feature classification.

Features come from decimal shift map traces of the truncated Champernowne
constant 0.123456789101112...498499; classification is nearest class
prototype under cosine similarity.  A skew-tent-map comparator with the
conventional four chaotic features is included for benchmarking.
"""

from .bench import BenchReport, evaluate, run_benchmark
from .champernowne import (
    DIGIT_COUNT,
    ChampernowneSource,
    OrbitValue,
    build_source,
    find_pattern,
    orbit_value,
    orbit_values,
    position_of,
)
from .chaosnet import (
    ChaosNetConfig,
    ChaosNetFeatures,
    chaosnet_features,
    chaosnet_pipeline,
    default_grid,
    evaluate_chaosnet_grid,
    skew_tent,
)
from .datasets import (
    Dataset,
    DatasetManifest,
    IngestError,
    builtin_manifests,
    get_manifest,
    load_dataset,
    write_bundled_datasets,
)
from .features import (
    AutochaosFeatures,
    Trace,
    TraceSpec,
    build_trace,
    extract,
    firing_rate,
    firing_time_bound,
    pattern_number,
    trace_mean,
)
from .pipeline import (
    CosinePrototypeClassifier,
    EvalReport,
    MinMaxNormalizer,
    class_prototypes,
    cosine_similarity,
    macro_f1,
    per_class_f1,
    predict_labels,
    run_pipeline,
    similarity_matrix,
    stratified_split,
)

__version__ = "0.1.0"

__all__ = [
    "AutochaosFeatures",
    "BenchReport",
    "ChampernowneSource",
    "ChaosNetConfig",
    "ChaosNetFeatures",
    "CosinePrototypeClassifier",
    "Dataset",
    "DatasetManifest",
    "DIGIT_COUNT",
    "EvalReport",
    "IngestError",
    "MinMaxNormalizer",
    "OrbitValue",
    "Trace",
    "TraceSpec",
    "build_source",
    "build_trace",
    "builtin_manifests",
    "chaosnet_features",
    "chaosnet_pipeline",
    "class_prototypes",
    "cosine_similarity",
    "default_grid",
    "evaluate",
    "evaluate_chaosnet_grid",
    "extract",
    "find_pattern",
    "firing_rate",
    "firing_time_bound",
    "get_manifest",
    "load_dataset",
    "macro_f1",
    "orbit_value",
    "orbit_values",
    "pattern_number",
    "per_class_f1",
    "position_of",
    "predict_labels",
    "run_benchmark",
    "run_pipeline",
    "similarity_matrix",
    "skew_tent",
    "stratified_split",
    "trace_mean",
    "write_bundled_datasets",
]
