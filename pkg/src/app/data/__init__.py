"""Synthetic exam data: generation, stratified splits and dataset files."""

from .corpus import DEMO_CORPUS_SEED, DEMO_N_EVAL, DEMO_N_TRAIN, build_demo_corpus
from .generator import feature_dim, generate, score_features
from .io import BASE_FIELDS, DatasetFormatError, read_dataset, write_dataset
from .schemas import GeneratorConfig, Sample
from .split import SplitError, split
from .utils import summarize_dataset

__all__ = [
    "GeneratorConfig",
    "Sample",
    "generate",
    "score_features",
    "feature_dim",
    "split",
    "SplitError",
    "read_dataset",
    "write_dataset",
    "DatasetFormatError",
    "BASE_FIELDS",
    "summarize_dataset",
    "DEMO_CORPUS_SEED",
    "DEMO_N_TRAIN",
    "DEMO_N_EVAL",
    "build_demo_corpus",
]
