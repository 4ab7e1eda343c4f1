"""SOM pseudo-labeling, Gaussian naive Bayes, and Klassen typology."""

from somnb._core import (
    AlignedAgreement,
    ConfusionMatrix,
    Error,
    EvaluationReport,
    FeatureRow,
    FeatureTable,
    GridSpec,
    NbModel,
    NormalizationParams,
    PipelineConfig,
    PipelineResult,
    Position,
    Prediction,
    Quadrant,
    RawAgreement,
    SomConfig,
    SomModel,
    Topology,
    __version__,
    aligned_agreement,
    apply_normalizer,
    assign_labels,
    classify_all_labels,
    classify_quadrant,
    compare_labels,
    compare_with_klassen,
    default_config,
    fit_nb,
    fit_normalizer,
    grid_positions,
    initial_prototypes,
    label_histogram,
    load_feature_csv,
    log_likelihood,
    nb_model_from_json,
    predict,
    quantization_error,
    raw_agreement,
    report_from_json,
    run_pipeline,
    save_feature_csv,
    sector_names,
    som_energy,
    som_model_from_json,
    train_som,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
