"""Trend reproductions on the frozen synthetic corpus; run with ``pytest -m slow``."""

from __future__ import annotations

import os

import numpy as np
import pytest

from src.app.analysis import (
    DEFAULT_TARGETS,
    automarker_baseline,
    build_grid,
    release_report,
    release_simulation,
    run_grid,
    sweep,
)
from src.app.cefr import band_of
from src.app.data import DEMO_N_EVAL, DEMO_N_TRAIN, build_demo_corpus
from src.app.nn import ModelConfig, predict_records, train_on_samples

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def corpus():
    return build_demo_corpus()


@pytest.fixture(scope="module")
def score_model_sweep(corpus):
    scheme, train, evaluation = corpus
    cfg = ModelConfig.for_scheme("score", scheme, input_dim=len(train[0].features))
    result = train_on_samples(cfg, train)
    records = predict_records(result.params, cfg, evaluation, scheme)
    fa_scores = [sample.fa_score for sample in evaluation]
    return records, fa_scores, sweep(records, fa_scores, scheme)


def _workers() -> int:
    return max(1, min(6, os.cpu_count() or 1))


def test_demo_corpus_sizes(corpus) -> None:
    _, train, evaluation = corpus
    assert len(train) + len(evaluation) == DEMO_N_TRAIN + DEMO_N_EVAL
    # per-level rounding moves at most one candidate per level
    assert abs(len(evaluation) - DEMO_N_EVAL) <= 3


def test_sweep_counts_on_trained_model(corpus, score_model_sweep) -> None:
    scheme, _, evaluation = corpus
    _, _, rows = score_model_sweep
    assert len(rows) == 1001
    assert all(row.total == len(evaluation) for row in rows)

    released = [row.tp + row.fp for row in rows]
    withheld = [row.tn + row.fn for row in rows]
    assert all(a >= b for a, b in zip(released, released[1:]))
    assert all(a <= b for a, b in zip(withheld, withheld[1:]))
    assert released[0] == len(evaluation)

    am = np.asarray([sample.am_score for sample in evaluation])
    fa = np.asarray([sample.fa_score for sample in evaluation])
    raw = 100.0 * np.mean(band_of(am, scheme) == band_of(fa, scheme))
    assert rows[0].cefr_agreement == pytest.approx(raw)
    assert min(row.cefr_agreement for row in rows) == pytest.approx(raw)


def test_release_report_on_trained_model(corpus, score_model_sweep) -> None:
    scheme, _, _ = corpus
    records, fa_scores, rows = score_model_sweep
    report = release_report(rows, DEFAULT_TARGETS)
    feasible = [row.feasible for row in report.rows]
    assert feasible == sorted(feasible)
    assert feasible[-1]
    released = [row.pct_released for row in report.rows if row.feasible]
    assert all(a <= b for a, b in zip(released, released[1:]))

    for row in report.rows:
        if not row.feasible:
            continue
        assert row.cefr_agreement >= row.target
        outcome = release_simulation(records, fa_scores, scheme, row.threshold)
        assert outcome.pct_released == pytest.approx(row.pct_released)
        assert outcome.cefr_agreement == pytest.approx(row.cefr_agreement)


def test_finer_architectures_release_better_decisions(corpus) -> None:
    scheme, train, evaluation = corpus
    jobs = build_grid("architectures", scheme, input_dim=len(train[0].features))
    results = {result.label: result for result in run_grid(jobs, train, evaluation, scheme, workers=_workers())}
    binary = results["binary"].decision.f1
    assert results["score"].decision.f1 >= binary
    assert results["cefr"].decision.f1 >= binary


def test_kernel_losses_release_more_at_full_agreement(corpus) -> None:
    scheme, train, evaluation = corpus
    jobs = build_grid("losses", scheme, input_dim=len(train[0].features))
    results = run_grid(jobs, train, evaluation, scheme, workers=_workers())

    released = {result.label: result.release.row_for(100.0).pct_released or 0.0 for result in results}
    kernel_losses = [label for label in released if label.startswith("kwocce-")]
    assert max(released[label] for label in kernel_losses) > released["cce"]

    baseline = automarker_baseline(
        np.asarray([sample.am_score for sample in evaluation]),
        np.asarray([sample.fa_score for sample in evaluation]),
        scheme,
    )
    for result in results:
        for row in result.release.rows:
            if row.feasible and row.target >= 95.0 and row.rmse_released is not None:
                assert row.rmse_released <= baseline.rmse
