from __future__ import annotations

import logging

import numpy as np
import pytest

from src.app.cefr import ScoreScheme
from src.app.data import GeneratorConfig, Sample, generate
from src.app.losses import parse_loss
import src.app.nn.training as training_module
from src.app.nn import (
    ModelConfig,
    ModelParams,
    TrainingDivergedError,
    feature_matrix,
    forward,
    init_params,
    predict_confidence,
    predict_records,
    train,
    train_on_samples,
    training_labels,
)


def _build_separable(n: int = 100) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(12)
    labels = np.arange(n) % 2
    centers = np.where(labels[:, None] == 1, 1.5, -1.5) * np.array([1.0, 1.0])
    features = centers + rng.uniform(-0.5, 0.5, size=(n, 2))
    return features, labels


def _build_config(**overrides) -> ModelConfig:
    fields = {
        "architecture": "binary",
        "input_dim": 2,
        "hidden_layers": (8,),
        "n_classes": 2,
        "seed": 1,
        "epochs": 30,
        "batch_size": 10,
    }
    fields.update(overrides)
    return ModelConfig(**fields)


def test_training_separates_toy_data() -> None:
    features, labels = _build_separable()
    result = train(_build_config(), features, labels)
    _, probs = forward(result.params, features)
    accuracy = np.mean(np.argmax(probs, axis=1) == labels)
    assert accuracy >= 0.99
    assert len(result.curve) == 30


def test_training_loss_descends_after_first_epoch() -> None:
    features, labels = _build_separable()
    curve = train(_build_config(batch_size=100), features, labels).curve
    assert all(b <= a + 1e-12 for a, b in zip(curve[1:], curve[2:]))
    assert curve[-1] < curve[0]


def test_training_is_bit_reproducible() -> None:
    features, labels = _build_separable()
    first = train(_build_config(), features, labels)
    second = train(_build_config(), features, labels)
    assert first.curve == second.curve
    for a, b in zip(first.params.arrays(), second.params.arrays()):
        np.testing.assert_array_equal(a, b)


def test_zero_epochs_returns_initial_parameters() -> None:
    features, labels = _build_separable()
    cfg = _build_config(epochs=0)
    result = train(cfg, features, labels)
    assert result.curve == []
    for a, b in zip(result.params.arrays(), init_params(cfg).arrays()):
        np.testing.assert_array_equal(a, b)


def test_constant_one_kernel_trains_like_cce() -> None:
    features, labels = _build_separable()
    cce = train(_build_config(epochs=5), features, labels)
    constant = train(_build_config(epochs=5, loss=parse_loss("kwocce-constant-one")), features, labels)
    assert cce.curve == constant.curve
    for a, b in zip(cce.params.arrays(), constant.params.arrays()):
        np.testing.assert_array_equal(a, b)


def test_training_rejects_invalid_inputs() -> None:
    features, labels = _build_separable()
    cfg = _build_config()
    with pytest.raises(ValueError):
        train(cfg, features[:0], labels[:0])
    with pytest.raises(ValueError):
        train(cfg, features, labels + 2)
    with pytest.raises(ValueError):
        train(cfg, features[:, :1], labels)


def test_divergence_is_reported(monkeypatch, caplog) -> None:
    features, labels = _build_separable()
    monkeypatch.setattr(
        training_module,
        "batch_gradient_logits",
        lambda batch_labels, logits, loss, epsilon: np.full_like(logits, np.nan),
    )
    with caplog.at_level(logging.ERROR, logger="src.app"):
        with pytest.raises(TrainingDivergedError) as info:
            train(_build_config(), features, labels)
    assert (info.value.epoch, info.value.batch) == (0, 1)
    assert "diverged" in str(info.value)
    assert any(record.levelno == logging.ERROR for record in caplog.records)


def test_training_labels_per_architecture() -> None:
    samples = [
        Sample("a", (0.0,), fa_score=20, am_score=21, fa_level=1, am_level=1),
        Sample("b", (1.0,), fa_score=15, am_score=17, fa_level=0, am_level=1),
    ]
    assert training_labels("binary", samples).tolist() == [1, 0]
    assert training_labels("cefr", samples).tolist() == [1, 0]
    assert training_labels("score", samples).tolist() == [20, 15]
    with pytest.raises(ValueError):
        training_labels("ordinal", samples)


def test_predict_confidence_per_architecture() -> None:
    scheme = ScoreScheme()

    binary_cfg = ModelConfig(architecture="binary", input_dim=1, hidden_layers=(), n_classes=2)
    binary = ModelParams(weights=[np.zeros((1, 2))], biases=[np.log([0.3, 0.7])])
    assert predict_confidence(binary, binary_cfg, [0.0], 20, scheme).confidence == pytest.approx(0.7)

    score_cfg = ModelConfig(architecture="score", input_dim=1, hidden_layers=(), n_classes=41)
    peaked = np.zeros(41)
    peaked[23] = 60.0
    score = ModelParams(weights=[np.zeros((1, 41))], biases=[peaked])
    record = predict_confidence(score, score_cfg, [0.0], 23, scheme, sample_id="c7")
    assert record.confidence == pytest.approx(1.0)
    assert (record.sample_id, record.am_level) == ("c7", 1)

    cefr_cfg = ModelConfig(architecture="cefr", input_dim=1, hidden_layers=(), n_classes=3)
    cefr = ModelParams(weights=[np.zeros((1, 3))], biases=[np.log([0.1, 0.8, 0.1])])
    assert predict_confidence(cefr, cefr_cfg, [0.0], 20, scheme).confidence == pytest.approx(0.8)

    wrong = ModelConfig(architecture="cefr", input_dim=1, hidden_layers=(), n_classes=41)
    with pytest.raises(ValueError):
        predict_confidence(score, wrong, [0.0], 23, scheme)


def test_predict_records_matches_single_predictions() -> None:
    scheme = ScoreScheme()
    samples = generate(GeneratorConfig(n_candidates=40, seed=2), scheme)
    cfg = ModelConfig.for_scheme("score", scheme, input_dim=len(samples[0].features), epochs=1)
    params = train_on_samples(cfg, samples).params
    records = predict_records(params, cfg, samples, scheme)
    assert [record.sample_id for record in records] == [sample.sample_id for sample in samples]
    for sample, record in zip(samples[:5], records[:5]):
        single = predict_confidence(params, cfg, sample.features, sample.am_score, scheme)
        assert single.confidence == pytest.approx(record.confidence, abs=1e-12)
    assert predict_records(params, cfg, [], scheme) == []
    assert feature_matrix(samples).shape == (40, cfg.input_dim)
