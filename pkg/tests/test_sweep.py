from __future__ import annotations

import numpy as np
import pytest

from src.app.analysis import ReleaseInputs, SweepRow, best_f1_row, sweep, sweep_inputs, thresholds
from src.app.analysis.metrics import f_beta
from src.app.cefr import ConfidenceRecord, ScoreScheme, band_of

CONFIDENCES = (0.1, 0.3, 0.5, 0.6, 0.8, 0.9)
CORRECT = (False, False, True, False, True, True)


def _build_records(confidences, correct) -> tuple[list[ConfidenceRecord], list[int]]:
    records = []
    fa_scores = []
    for index, (confidence, ok) in enumerate(zip(confidences, correct)):
        records.append(ConfidenceRecord(sample_id=f"c{index}", am_score=20, am_level=1, confidence=confidence))
        fa_scores.append(20 if ok else 10)
    return records, fa_scores


def _random_inputs(seed: int, n: int = 200) -> ReleaseInputs:
    rng = np.random.default_rng(seed)
    fa = rng.integers(0, 41, size=n)
    am = np.clip(fa + rng.integers(-4, 5, size=n), 0, 40)
    confidence = np.round(rng.uniform(0.0, 0.99, size=n), 2)
    return ReleaseInputs.from_arrays(confidence, am, fa, ScoreScheme())


def _build_row(threshold: float, f1: float) -> SweepRow:
    return SweepRow(threshold, 1, 0, 0, 0, 1.0, 1.0, f1, f1, 1.0, 100.0, 100.0, 0.0)


def test_threshold_grid_is_inclusive() -> None:
    grid = thresholds(1000)
    assert grid.shape == (1001,)
    assert (grid[0], grid[-1]) == (0.0, 1.0)
    assert grid[550] == 0.55
    with pytest.raises(ValueError):
        thresholds(0)


def test_handcrafted_counts_at_threshold() -> None:
    records, fa_scores = _build_records(CONFIDENCES, CORRECT)
    row = sweep(records, fa_scores, ScoreScheme())[550]
    assert row.threshold == 0.55
    assert (row.tp, row.fp, row.tn, row.fn) == (2, 1, 2, 1)
    assert row.precision == pytest.approx(2 / 3)
    assert row.recall == pytest.approx(2 / 3)
    assert row.pct_released == pytest.approx(50.0)
    assert row.cefr_agreement == pytest.approx(100.0 * 5 / 6)
    assert row.rmse_released == pytest.approx(np.sqrt(100 / 3))


def test_release_uses_inclusive_comparison() -> None:
    records, fa_scores = _build_records(CONFIDENCES, CORRECT)
    row = sweep(records, fa_scores, ScoreScheme())[600]
    assert (row.tp, row.fp) == (2, 1)


def test_threshold_floor_and_ceiling() -> None:
    records, fa_scores = _build_records(CONFIDENCES, CORRECT)
    rows = sweep(records, fa_scores, ScoreScheme(), n_steps=10)
    first, last = rows[0], rows[-1]
    assert first.pct_released == 100.0
    assert first.accuracy == pytest.approx(0.5)
    assert first.cefr_agreement == pytest.approx(50.0)
    assert last.threshold == 1.0
    assert (last.tp, last.fp) == (0, 0)
    assert last.recall == 0.0 and last.precision == 0.0 and last.f1 == 0.0
    assert last.cefr_agreement == 100.0
    assert last.rmse_released is None


def test_sweep_matches_exhaustive_scan() -> None:
    records, fa_scores = _build_records(CONFIDENCES, CORRECT)
    rows = sweep(records, fa_scores, ScoreScheme())
    assert len(rows) == 1001
    confidence = np.asarray(CONFIDENCES)
    correct = np.asarray(CORRECT)
    best = None
    for k, row in enumerate(rows):
        released = confidence >= k / 1000
        tp = int(np.sum(released & correct))
        fp = int(np.sum(released & ~correct))
        tn = int(np.sum(~released & ~correct))
        fn = int(np.sum(~released & correct))
        assert (row.tp, row.fp, row.tn, row.fn) == (tp, fp, tn, fn)
        f1 = f_beta(tp, fp, fn, 1.0)
        assert row.f1 == f1
        if best is None or f1 > best[1]:
            best = (k / 1000, f1)
    chosen = best_f1_row(rows)
    assert (chosen.threshold, chosen.f1) == best


def test_counts_are_conserved_and_monotone() -> None:
    for seed in range(5):
        inputs = _random_inputs(seed)
        rows = sweep_inputs(inputs, n_steps=200)
        assert all(row.total == inputs.size for row in rows)
        released = [row.tp + row.fp for row in rows]
        withheld = [row.tn + row.fn for row in rows]
        pct = [row.pct_released for row in rows]
        assert all(a >= b for a, b in zip(released, released[1:]))
        assert all(a <= b for a, b in zip(withheld, withheld[1:]))
        assert all(a >= b for a, b in zip(pct, pct[1:]))


def test_agreement_floor_equals_raw_automarker_agreement() -> None:
    inputs = _random_inputs(7)
    rows = sweep_inputs(inputs, n_steps=100)
    scheme = ScoreScheme()
    raw = 100.0 * np.mean(band_of(inputs.am_scores, scheme) == band_of(inputs.fa_scores, scheme))
    assert rows[0].cefr_agreement == pytest.approx(raw)
    assert rows[-1].cefr_agreement == 100.0


def test_derived_metrics_follow_counts() -> None:
    for row in sweep_inputs(_random_inputs(3), n_steps=50):
        assert row.pct_released == pytest.approx(100.0 * (row.tp + row.fp) / row.total)
        assert row.accuracy == pytest.approx((row.tp + row.tn) / row.total)
        assert row.f05 == pytest.approx(f_beta(row.tp, row.fp, row.fn, 0.5))


def test_best_f1_row_breaks_ties_low() -> None:
    rows = [_build_row(0.1, 0.2), _build_row(0.5, 0.9), _build_row(0.7, 0.9)]
    assert best_f1_row(rows).threshold == 0.5
    assert best_f1_row(rows[:1]) is rows[0]
    with pytest.raises(ValueError):
        best_f1_row([])


def test_sweep_rejects_misaligned_inputs() -> None:
    records, fa_scores = _build_records(CONFIDENCES, CORRECT)
    with pytest.raises(ValueError):
        sweep(records, fa_scores[:-1], ScoreScheme())
    with pytest.raises(ValueError):
        sweep([], [], ScoreScheme())
    with pytest.raises(ValueError):
        sweep(records, fa_scores, ScoreScheme(), n_steps=0)


def test_sweep_rejects_records_with_inconsistent_levels() -> None:
    records, fa_scores = _build_records(CONFIDENCES, CORRECT)
    records[3] = ConfidenceRecord(sample_id="c3", am_score=20, am_level=2, confidence=0.6)
    with pytest.raises(ValueError, match="c3"):
        sweep(records, fa_scores, ScoreScheme())
