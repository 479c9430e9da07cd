"""Label-noise filtering for annotated beat datasets."""

from labelguard._core import (
    ArgumentError,
    Classifier,
    ConfigError,
    DataError,
    Error,
    FilterReport,
    IoError,
    SampleSet,
    VoteTally,
    accuracy,
    apply_standard,
    decode_wfdb_212,
    detection_metrics,
    encode_wfdb_212,
    ensemble_votes,
    generate_synthetic,
    inject_noise,
    read_wfdb_dat,
    remove_flagged,
    resample_morphology,
    run_experiment,
    train_classifier,
)

__all__ = [
    "ArgumentError",
    "Classifier",
    "ConfigError",
    "DataError",
    "Error",
    "FilterReport",
    "IoError",
    "SampleSet",
    "VoteTally",
    "accuracy",
    "apply_standard",
    "decode_wfdb_212",
    "detection_metrics",
    "encode_wfdb_212",
    "ensemble_votes",
    "generate_synthetic",
    "inject_noise",
    "read_wfdb_dat",
    "remove_flagged",
    "resample_morphology",
    "run_experiment",
    "train_classifier",
]
