"""Binary-to-image dataset toolkit.

Turns labeled binaries into 3-channel PNG datasets (byte values plus a
windowed-entropy channel), enlarges them with additive noise, and scores
classifier predictions. See the README for the pipeline walkthrough.
"""

from .augmentation import (
    COMBINATIONS,
    NOISE_KINDS,
    AugmentationPlan,
    AugmentationSpec,
    apply_noise,
    enhance,
    rng_for,
    sample_gaussian,
    sample_laplace,
    sample_poisson,
)
from .corpus import ClassSet, SampleRecord, load_corpus, read_label_file
from .imaging import (
    ConversionConfig,
    MalwareImage,
    byte_channel,
    convert,
    decode_png,
    encode_png,
    entropy_channel,
    entropy_profile,
)
from .manifest import MANIFEST_VERSION, DatasetManifest, ManifestEntry
from .metrics import (
    AVERAGING_MODES,
    ClassificationReport,
    PerClassMetrics,
    PredictionSet,
    accuracy,
    averaged_metrics,
    confusion_matrix,
    per_class_metrics,
    score,
)
from .pipeline import (
    SweepConfig,
    SweepResult,
    augment_manifest,
    convert_corpus,
    manifest_stats,
    rebase_manifest,
    run_sweep,
    split_manifest,
)

__version__ = "0.1.0"

__all__ = [
    "AVERAGING_MODES",
    "COMBINATIONS",
    "MANIFEST_VERSION",
    "NOISE_KINDS",
    "AugmentationPlan",
    "AugmentationSpec",
    "ClassSet",
    "ClassificationReport",
    "ConversionConfig",
    "DatasetManifest",
    "MalwareImage",
    "ManifestEntry",
    "PerClassMetrics",
    "PredictionSet",
    "SampleRecord",
    "SweepConfig",
    "SweepResult",
    "accuracy",
    "apply_noise",
    "augment_manifest",
    "averaged_metrics",
    "byte_channel",
    "confusion_matrix",
    "convert",
    "convert_corpus",
    "decode_png",
    "encode_png",
    "enhance",
    "entropy_channel",
    "entropy_profile",
    "load_corpus",
    "manifest_stats",
    "per_class_metrics",
    "read_label_file",
    "rebase_manifest",
    "rng_for",
    "run_sweep",
    "sample_gaussian",
    "sample_laplace",
    "sample_poisson",
    "score",
    "split_manifest",
]
