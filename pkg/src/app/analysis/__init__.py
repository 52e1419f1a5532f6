"""Threshold sweeps, release simulation and evaluation metrics."""

from .experiments import (
    GRIDS,
    ExperimentJob,
    ModelEvaluation,
    build_grid,
    evaluate_model,
    run_grid,
    run_job,
)
from .metrics import (
    AVERAGING_MODES,
    ClassificationScores,
    auc_roc,
    cefr_level_report,
    f_beta,
    multiclass_metrics,
    quadratic_weighted_kappa,
    rmse,
)
from .release import (
    DEFAULT_TARGETS,
    BaselineReport,
    DecisionSummary,
    ReleaseOutcome,
    ReleaseReport,
    ReleaseTargetRow,
    automarker_baseline,
    decision_summary,
    normalize_targets,
    release_report,
    release_simulation,
)
from .sweep import DEFAULT_STEPS, ReleaseInputs, SweepRow, best_f1_row, sweep, sweep_inputs, thresholds

__all__ = [
    "ClassificationScores",
    "AVERAGING_MODES",
    "auc_roc",
    "f_beta",
    "multiclass_metrics",
    "cefr_level_report",
    "rmse",
    "quadratic_weighted_kappa",
    "SweepRow",
    "ReleaseInputs",
    "DEFAULT_STEPS",
    "thresholds",
    "sweep",
    "sweep_inputs",
    "best_f1_row",
    "DEFAULT_TARGETS",
    "ReleaseOutcome",
    "ReleaseTargetRow",
    "ReleaseReport",
    "BaselineReport",
    "DecisionSummary",
    "release_simulation",
    "normalize_targets",
    "release_report",
    "automarker_baseline",
    "decision_summary",
    "GRIDS",
    "ExperimentJob",
    "ModelEvaluation",
    "build_grid",
    "run_job",
    "evaluate_model",
    "run_grid",
]
