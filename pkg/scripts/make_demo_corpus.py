"""Regenerate the frozen synthetic demo corpus (50k train / 10k eval)."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.app.data import DEMO_CORPUS_SEED, build_demo_corpus, summarize_dataset, write_dataset

CORPUS_DIR = ROOT / "data" / "corpus"


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=CORPUS_DIR)
    parser.add_argument("--seed", type=int, default=DEMO_CORPUS_SEED)
    args = parser.parse_args()

    scheme, train, evaluation = build_demo_corpus(args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    write_dataset(train, args.out / "train.csv")
    write_dataset(evaluation, args.out / "eval.csv")
    print(summarize_dataset(train + evaluation, scheme))
    print(f"Corpus written to {args.out}")


if __name__ == "__main__":
    main()
