"""Majority-class stub trainer.

Implements the external trainer contract end to end without learning
anything: it predicts the most frequent training label for every test
entry. Useful for exercising sweeps and the prediction plumbing.

Run as: python -m binviz.stub_trainer --train T.jsonl --test E.jsonl --out preds.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from collections import Counter
from pathlib import Path

from .manifest import DatasetManifest


def majority_label(manifest: DatasetManifest) -> str:
    counts = Counter(e.label for e in manifest.entries)
    if not counts:
        raise ValueError("training manifest has no entries")
    best = max(counts.values())
    # ties break toward the lexicographically smallest label
    return min(name for name, c in counts.items() if c == best)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="binviz-stub-trainer", description=__doc__)
    parser.add_argument("--train", required=True, type=Path)
    parser.add_argument("--test", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    args = parser.parse_args(argv)

    try:
        train = DatasetManifest.read(args.train)
        test = DatasetManifest.read(args.test)
        label = majority_label(train)
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", newline="", encoding="utf-8") as fp:
            writer = csv.writer(fp)
            writer.writerow(["sample_id", "true_label", "predicted_label"])
            for entry in test.entries:
                writer.writerow([entry.path, entry.label, label])
    except (OSError, ValueError) as exc:
        print(f"binviz-stub-trainer: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
