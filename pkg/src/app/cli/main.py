"""``hms-confidence`` command-line entry point."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from src.app import __version__
from src.app.data import DatasetFormatError
from src.app.nn import ModelFormatError
from src.app.utils import configure_logging

from .commands import COMMANDS, UsageError
from .config import load_config, resolve_options


def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--config", help="JSON/YAML config file or run manifest")
    common.add_argument("--out", help="output directory (default ./out)")
    common.add_argument("-v", "--verbose", action="count", help="-v for INFO, -vv for DEBUG logs")
    return common


def _scheme_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--part-max", dest="part_max", type=int, help="maximum score per part (default 20)")
    parser.add_argument("--cuts", help="comma-separated component cut scores (default 16,28)")
    parser.add_argument("--levels", help="comma-separated CEFR level names (default L1,L2,L3)")


def _model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--hidden-layers", dest="hidden_layers", help="comma-separated hidden widths, '' for none")
    parser.add_argument("--learning-rate", dest="learning_rate", type=float)
    parser.add_argument("--epochs", type=int)
    parser.add_argument("--batch-size", dest="batch_size", type=int)
    parser.add_argument("--epsilon", type=float, help="probability clip before the log")
    parser.add_argument("--weight-scheme", dest="weight_scheme", choices=("occ_style", "literal"))


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="hms-confidence",
        description="Confidence models and score-release simulation for automated essay scoring.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text, argument_default=argparse.SUPPRESS)

    gen = add("gen-data", "generate synthetic train/val/eval datasets")
    gen.add_argument("--n", "--n-candidates", dest="n_candidates", type=int, help="number of candidates")
    gen.add_argument("--score-mean", dest="score_mean", type=float)
    gen.add_argument("--score-sd", dest="score_sd", type=float)
    gen.add_argument("--am-noise-sd-easy", dest="am_noise_sd_easy", type=float)
    gen.add_argument("--am-noise-sd-hard", dest="am_noise_sd_hard", type=float)
    gen.add_argument("--hard-fraction", dest="hard_fraction", type=float)
    gen.add_argument("--embedding-dim", dest="embedding_dim", type=int)
    gen.add_argument("--fractions", help="train,val,eval fractions (default 0.8,0.1,0.1)")
    _scheme_flags(gen)

    train = add("train", "train one confidence model")
    train.add_argument("--train", help="training dataset file")
    train.add_argument("--architecture", choices=("binary", "cefr", "score"))
    train.add_argument("--loss", help="cce, occ, kwocce-linear, kwocce-log, kwocce-exp or kwocce-gaussian")
    train.add_argument("--alpha", type=float, help="kernel shape (kernel default when omitted)")
    train.add_argument("--beta", type=float, help="exp-kernel offset (default 3)")
    _model_flags(train)
    _scheme_flags(train)

    sweep = add("sweep", "threshold sweep and best-F1 summary for a trained model")
    sweep.add_argument("--model", help="model file written by train")
    sweep.add_argument("--eval", help="evaluation dataset file")
    sweep.add_argument(
        "--architecture",
        dest="expected_architecture",
        choices=("binary", "cefr", "score"),
        help="fail unless the model has this head",
    )
    sweep.add_argument("--steps", type=int, help="threshold increments (default 1000)")

    release = add("release-report", "percentage released at CEFR agreement targets")
    release.add_argument("--model", help="model file written by train")
    release.add_argument("--eval", help="evaluation dataset file")
    release.add_argument("--steps", type=int, help="threshold increments (default 1000)")
    release.add_argument("--targets", help="comma-separated agreement targets (default 100,99,98,97,96,95)")

    grad = add("grad-check", "finite-difference check of every loss gradient")
    grad.add_argument("--tolerance", type=float, help="maximum relative error (default 1e-4)")
    grad.add_argument("--instances", type=int, help="random instances per row (default 100)")

    compare = add("compare", "train and compare the loss or architecture grid")
    compare.add_argument("--train", help="training dataset file")
    compare.add_argument("--eval", help="evaluation dataset file")
    compare.add_argument("--grid", choices=("losses", "architectures"))
    compare.add_argument("--jobs", type=int, help="models trained in parallel (default 1)")
    compare.add_argument("--steps", type=int, help="threshold increments (default 1000)")
    compare.add_argument("--targets", help="comma-separated agreement targets")
    _model_flags(compare)
    _scheme_flags(compare)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = vars(args)
    command = flags.pop("command")
    config_path = flags.pop("config", None)
    configure_logging(flags.pop("verbose", 0))

    try:
        file_values = load_config(config_path) if config_path is not None else None
        options = resolve_options(command, file_values, flags)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))

    try:
        return COMMANDS[command](options)
    except UsageError as exc:
        parser.error(str(exc))
    except (DatasetFormatError, ModelFormatError, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


__all__ = ["build_parser", "main"]
