from __future__ import annotations

import numpy as np
import pytest

from src.app.cefr import (
    ConfidenceRecord,
    ScoreScheme,
    band_of,
    batch_confidence,
    bin_probabilities,
    confidence_binary,
    confidence_cefr_nary,
    confidence_score_binned,
    n_classes_for,
    predicted_levels,
)


def _one_hot(index: int, size: int = 41) -> np.ndarray:
    vector = np.zeros(size)
    vector[index] = 1.0
    return vector


def test_default_scheme_shape() -> None:
    scheme = ScoreScheme()
    assert scheme.component_max == 40
    assert scheme.n_scores == 41
    assert scheme.bands == 3
    assert scheme.band_sizes().tolist() == [16, 12, 13]


def test_band_of_boundaries() -> None:
    scheme = ScoreScheme()
    assert band_of(0, scheme) == 0
    assert band_of(15, scheme) == 0
    assert band_of(16, scheme) == 1
    assert band_of(27, scheme) == 1
    assert band_of(28, scheme) == 2
    assert band_of(40, scheme) == 2


def test_band_of_partitions_every_score() -> None:
    scheme = ScoreScheme()
    levels = band_of(np.arange(41), scheme)
    expected = [0] * 16 + [1] * 12 + [2] * 13
    assert levels.tolist() == expected
    assert np.bincount(levels).sum() == 41


def test_band_of_rejects_out_of_range_scores() -> None:
    scheme = ScoreScheme()
    with pytest.raises(ValueError):
        band_of(41, scheme)
    with pytest.raises(ValueError):
        band_of(-1, scheme)
    with pytest.raises(ValueError):
        band_of(12.5, scheme)


def test_raising_cuts_never_raises_a_band() -> None:
    low = ScoreScheme(cut_scores=(16, 28))
    high = ScoreScheme(cut_scores=(18, 30))
    scores = np.arange(41)
    assert np.all(band_of(scores, high) <= band_of(scores, low))


def test_scheme_validation() -> None:
    with pytest.raises(ValueError):
        ScoreScheme(cut_scores=(28, 16))
    with pytest.raises(ValueError):
        ScoreScheme(cut_scores=(0, 16))
    with pytest.raises(ValueError):
        ScoreScheme(cut_scores=(16, 41))
    with pytest.raises(ValueError):
        ScoreScheme(level_names=("L1", "L2"))
    with pytest.raises(ValueError):
        ScoreScheme(part_min=1)
    with pytest.raises(ValueError):
        ScoreScheme(cut_scores=())


def test_scheme_record_round_trip() -> None:
    scheme = ScoreScheme()
    assert scheme.to_record() == "part_max=20 cuts=16,28 levels=L1,L2,L3"
    assert ScoreScheme.from_record(scheme.to_record()) == scheme

    custom = ScoreScheme.from_record("part_max=10 cuts=5,10,15 levels=A,B,C,D")
    assert custom.component_max == 20
    assert custom.bands == 4

    with pytest.raises(ValueError):
        ScoreScheme.from_record("part_max=20 cut=16")


def test_bin_probabilities_examples() -> None:
    scheme = ScoreScheme()
    uniform = np.full(41, 1.0 / 41)
    np.testing.assert_allclose(bin_probabilities(uniform, scheme), [16 / 41, 12 / 41, 13 / 41], atol=1e-12)
    np.testing.assert_array_equal(bin_probabilities(_one_hot(0), scheme), [1.0, 0.0, 0.0])
    np.testing.assert_array_equal(bin_probabilities(_one_hot(40), scheme), [0.0, 0.0, 1.0])


def test_bin_probabilities_conserves_mass() -> None:
    rng = np.random.default_rng(3)
    probs = rng.dirichlet(np.ones(41), size=25)
    binned = bin_probabilities(probs, ScoreScheme())
    assert binned.shape == (25, 3)
    np.testing.assert_allclose(binned.sum(axis=1), probs.sum(axis=1), atol=1e-12)


def test_bin_probabilities_rejects_wrong_width() -> None:
    with pytest.raises(ValueError):
        bin_probabilities(np.full(40, 1.0 / 40), ScoreScheme())


def test_confidence_binary() -> None:
    assert confidence_binary([0.3, 0.7]) == 0.7
    assert confidence_binary([1.0, 0.0]) == 0.0
    assert confidence_binary([0.5, 0.5]) == 0.5
    with pytest.raises(ValueError):
        confidence_binary([0.2, 0.3, 0.5])


def test_confidence_cefr_nary() -> None:
    assert confidence_cefr_nary([0.1, 0.8, 0.1], 1) == 0.8
    assert confidence_cefr_nary([0.0, 0.0, 1.0], 2) == 1.0
    assert confidence_cefr_nary([0.1, 0.8, 0.1], 2) == 0.1
    with pytest.raises(ValueError):
        confidence_cefr_nary([0.1, 0.8, 0.1], 3)


def test_confidence_score_binned() -> None:
    scheme = ScoreScheme()
    assert confidence_score_binned(_one_hot(23), 23, scheme) == 1.0
    assert confidence_score_binned(np.full(41, 1.0 / 41), 0, scheme) == pytest.approx(16 / 41)

    split_mass = np.zeros(41)
    split_mass[15] = 0.5
    split_mass[16] = 0.5
    assert confidence_score_binned(split_mass, 15, scheme) == 0.5


def test_score_binned_confidence_dominates_single_score() -> None:
    scheme = ScoreScheme()
    rng = np.random.default_rng(9)
    for _ in range(50):
        probs = rng.dirichlet(np.ones(41))
        am_score = int(rng.integers(41))
        level = band_of(am_score, scheme)
        members = np.flatnonzero(band_of(np.arange(41), scheme) == level)
        assert confidence_score_binned(probs, am_score, scheme) >= probs[members].max()


def test_batch_confidence_matches_scalar_versions() -> None:
    scheme = ScoreScheme()
    rng = np.random.default_rng(4)
    am_scores = rng.integers(41, size=12)

    score_probs = rng.dirichlet(np.ones(41), size=12)
    batch = batch_confidence("score", score_probs, am_scores, scheme)
    for row, score, value in zip(score_probs, am_scores, batch):
        assert value == pytest.approx(confidence_score_binned(row, int(score), scheme), abs=1e-15)

    band_probs = rng.dirichlet(np.ones(3), size=12)
    batch = batch_confidence("cefr", band_probs, am_scores, scheme)
    levels = band_of(am_scores, scheme)
    np.testing.assert_array_equal(batch, band_probs[np.arange(12), levels])

    binary_probs = rng.dirichlet(np.ones(2), size=12)
    np.testing.assert_array_equal(batch_confidence("binary", binary_probs, am_scores, scheme), binary_probs[:, 1])

    with pytest.raises(ValueError):
        batch_confidence("cefr", score_probs, am_scores, scheme)


def test_n_classes_for_each_architecture() -> None:
    scheme = ScoreScheme()
    assert n_classes_for("binary", scheme) == 2
    assert n_classes_for("cefr", scheme) == 3
    assert n_classes_for("score", scheme) == 41
    with pytest.raises(ValueError):
        n_classes_for("ordinal", scheme)


def test_predicted_levels() -> None:
    scheme = ScoreScheme()
    assert predicted_levels("score", np.vstack([_one_hot(3), _one_hot(30)]), scheme).tolist() == [0, 2]
    assert predicted_levels("cefr", [[0.2, 0.5, 0.3]], scheme).tolist() == [1]
    with pytest.raises(ValueError):
        predicted_levels("binary", [[0.4, 0.6]], scheme)


def test_confidence_record_range() -> None:
    record = ConfidenceRecord(sample_id="c1", am_score=20, am_level=1, confidence=0.75)
    assert record.confidence == 0.75
    with pytest.raises(ValueError):
        ConfidenceRecord(sample_id="c2", am_score=20, am_level=1, confidence=1.5)
    with pytest.raises(ValueError):
        ConfidenceRecord(sample_id="c3", am_score=20, am_level=1, confidence=float("nan"))


def test_confidence_record_level_follows_score_band() -> None:
    scheme = ScoreScheme()
    record = ConfidenceRecord.for_score("c1", 28, 0.4, scheme)
    assert record.am_level == 2
    record.check_scheme(scheme)

    stale = ConfidenceRecord(sample_id="c2", am_score=15, am_level=1, confidence=0.4)
    with pytest.raises(ValueError, match="does not match band 0"):
        stale.check_scheme(scheme)
    with pytest.raises(ValueError):
        ConfidenceRecord(sample_id="c3", am_score=-1, am_level=0, confidence=0.4)
