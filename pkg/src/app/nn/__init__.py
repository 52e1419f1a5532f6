"""Feed-forward softmax confidence classifier: training, persistence and gradient checks."""

from .config import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_EPOCHS,
    DEFAULT_HIDDEN_LAYERS,
    DEFAULT_LEARNING_RATE,
    ModelConfig,
)
from .gradcheck import DEFAULT_TOLERANCE, GradCheckReport, GradCheckResult, run_suite
from .network import ForwardCache, ModelParams, backward, forward, forward_with_cache, init_params
from .persistence import ModelFormatError, SavedModel, load_model, save_model
from .training import (
    TrainingDivergedError,
    TrainingResult,
    feature_matrix,
    predict_confidence,
    predict_records,
    train,
    train_on_samples,
    training_labels,
)

__all__ = [
    "ModelConfig",
    "DEFAULT_HIDDEN_LAYERS",
    "DEFAULT_LEARNING_RATE",
    "DEFAULT_EPOCHS",
    "DEFAULT_BATCH_SIZE",
    "ModelParams",
    "ForwardCache",
    "init_params",
    "forward",
    "forward_with_cache",
    "backward",
    "TrainingDivergedError",
    "TrainingResult",
    "train",
    "train_on_samples",
    "training_labels",
    "feature_matrix",
    "predict_confidence",
    "predict_records",
    "save_model",
    "load_model",
    "SavedModel",
    "ModelFormatError",
    "GradCheckResult",
    "GradCheckReport",
    "DEFAULT_TOLERANCE",
    "run_suite",
]
