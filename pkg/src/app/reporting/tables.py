"""Tabular report emission: comma-separated files and aligned plain text.

Both renderings print reals with four decimals and leave undefined values
empty (CSV) or ``n/a`` (text), so identical inputs give identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import pandas as pd

from src.app.analysis import (
    BaselineReport,
    ClassificationScores,
    DecisionSummary,
    ReleaseReport,
    SweepRow,
)
from src.app.nn import GradCheckReport

REAL_FORMAT = "%.4f"
MISSING_TEXT = "n/a"
RAW_AUTOMARKER = "Raw automarker"

SWEEP_COLUMNS = [
    "threshold",
    "tp",
    "fp",
    "tn",
    "fn",
    "precision",
    "recall",
    "f1",
    "f05",
    "accuracy",
    "pct_released",
    "cefr_agreement",
    "rmse_released",
]
RELEASE_COLUMNS = ["model", "target", "cefr_agreement", "pct_released", "rmse_released", "threshold", "qwk"]
DECISION_COLUMNS = ["model", "threshold", "accuracy", "precision", "recall", "f1", "f05", "auc_roc"]
LEVEL_COLUMNS = ["model", "averaging", "precision", "recall", "f1", "f05"]
GRADCHECK_COLUMNS = ["check", "loss", "n_classes", "max_rel_error", "worst_coordinate", "passed"]


def _frame(records: Iterable[Mapping[str, Any]], columns: Sequence[str], reals: Iterable[str]) -> pd.DataFrame:
    frame = pd.DataFrame(list(records), columns=list(columns))
    for column in reals:
        frame[column] = frame[column].astype("float64")
    return frame


def sweep_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    records = [{column: getattr(row, column) for column in SWEEP_COLUMNS} for row in rows]
    reals = [c for c in SWEEP_COLUMNS if c not in {"tp", "fp", "tn", "fn"}]
    return _frame(records, SWEEP_COLUMNS, reals)


def release_frame(
    reports: Sequence[tuple[str, ReleaseReport]],
    baseline: BaselineReport | None = None,
) -> pd.DataFrame:
    """One row per (model, target), led by the unaided automarker when given."""

    records: list[dict[str, Any]] = []
    if baseline is not None:
        records.append(
            {
                "model": RAW_AUTOMARKER,
                "target": None,
                "cefr_agreement": baseline.cefr_agreement,
                "pct_released": 100.0,
                "rmse_released": baseline.rmse,
                "threshold": None,
                "qwk": baseline.qwk,
            }
        )
    for model, report in reports:
        for row in report.rows:
            records.append(
                {
                    "model": model,
                    "target": row.target,
                    "cefr_agreement": row.cefr_agreement,
                    "pct_released": row.pct_released,
                    "rmse_released": row.rmse_released,
                    "threshold": row.threshold,
                    "qwk": None,
                }
            )
    return _frame(records, RELEASE_COLUMNS, RELEASE_COLUMNS[1:])


def decision_frame(summaries: Sequence[tuple[str, DecisionSummary]]) -> pd.DataFrame:
    records = [
        {"model": model, **{column: getattr(summary, column) for column in DECISION_COLUMNS[1:]}}
        for model, summary in summaries
    ]
    return _frame(records, DECISION_COLUMNS, DECISION_COLUMNS[1:])


def level_frame(reports: Sequence[tuple[str, Mapping[str, ClassificationScores]]]) -> pd.DataFrame:
    records = [
        {
            "model": model,
            "averaging": mode,
            "precision": scores.precision,
            "recall": scores.recall,
            "f1": scores.f1,
            "f05": scores.f05,
        }
        for model, report in reports
        for mode, scores in report.items()
    ]
    return _frame(records, LEVEL_COLUMNS, LEVEL_COLUMNS[2:])


def curve_frame(curve: Sequence[float]) -> pd.DataFrame:
    records = [{"epoch": index + 1, "mean_loss": value} for index, value in enumerate(curve)]
    return _frame(records, ["epoch", "mean_loss"], ["mean_loss"])


def gradcheck_frame(report: GradCheckReport) -> pd.DataFrame:
    records = [
        {
            "check": result.check,
            "loss": result.loss,
            "n_classes": result.n_classes,
            "max_rel_error": result.max_rel_error,
            "worst_coordinate": result.worst_coordinate,
            "passed": "yes" if result.passed else "no",
        }
        for result in report.results
    ]
    frame = pd.DataFrame(records, columns=GRADCHECK_COLUMNS)
    # relative errors span many orders of magnitude
    frame["max_rel_error"] = frame["max_rel_error"].map(lambda value: f"{value:.3e}")
    return frame


def to_csv_text(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=REAL_FORMAT, na_rep="", lineterminator="\n")


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(to_csv_text(frame), encoding="utf-8")
    return path


def _cell(value: Any) -> str:
    if value is None or (isinstance(value, float) and value != value):
        return MISSING_TEXT
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def render_text(frame: pd.DataFrame, title: str | None = None) -> str:
    """Aligned plain-text table; numeric columns right-aligned."""

    columns = [str(column) for column in frame.columns]
    numeric = [pd.api.types.is_numeric_dtype(frame[column]) for column in frame.columns]
    body = [[_cell(value) for value in row] for row in frame.astype(object).itertuples(index=False)]
    widths = [
        max([len(column), *(len(row[index]) for row in body)]) for index, column in enumerate(columns)
    ]

    def line(cells: Sequence[str]) -> str:
        parts = [
            cell.rjust(width) if is_num else cell.ljust(width)
            for cell, width, is_num in zip(cells, widths, numeric)
        ]
        return "  ".join(parts).rstrip()

    lines = [] if title is None else [title, "=" * len(title)]
    lines.append(line(columns))
    lines.append("  ".join("-" * width for width in widths))
    lines.extend(line(row) for row in body)
    return "\n".join(lines) + "\n"


def write_text(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path


__all__ = [
    "REAL_FORMAT",
    "MISSING_TEXT",
    "RAW_AUTOMARKER",
    "SWEEP_COLUMNS",
    "RELEASE_COLUMNS",
    "DECISION_COLUMNS",
    "LEVEL_COLUMNS",
    "GRADCHECK_COLUMNS",
    "sweep_frame",
    "release_frame",
    "decision_frame",
    "level_frame",
    "curve_frame",
    "gradcheck_frame",
    "to_csv_text",
    "write_csv",
    "render_text",
    "write_text",
]
