#!/usr/bin/env python3
"""Trend check: noise augmentation at desk scale.

Builds a 4-family synthetic corpus (200 samples per family), converts it
to 16x16 images, splits once, then trains the CNN under four data
configurations: no augmentation, and poisson noise at ratios 0.01, 0.2,
and 1.0 (train side only, test stays clean). Each configuration runs with
three trainer seeds.

Checks, on mean test accuracy over the three seeds:
  A. low-ratio augmentation (0.01, 0.2) costs at most 0.02 vs baseline
  B. saturating poisson (ratio 1.0) trails ratio 0.01 by at least 0.05

Everything runs through the two command-line surfaces (binviz, the node
trainer); nothing is imported. Artifacts land in --work; a summary JSON
is written to --summary.
"""

import argparse
import json
import shlex
import subprocess
import sys
import time
from pathlib import Path

HERE = Path(__file__).resolve().parent
TRAINER = HERE.parent / "dist" / "main.js"


def run(cmd, **kw):
    """Run one command, echoing it; hard-fail on nonzero exit."""
    print(f"$ {' '.join(shlex.quote(str(c)) for c in cmd)}", flush=True)
    res = subprocess.run([str(c) for c in cmd], **kw)
    if res.returncode != 0:
        sys.exit(f"command failed with exit {res.returncode}")
    return res


def score_accuracy(test_manifest: Path, predictions: Path) -> float:
    res = run(
        ["binviz", "score", "--manifest", test_manifest, "--predictions", predictions, "--json"],
        capture_output=True,
        text=True,
    )
    return float(json.loads(res.stdout)["accuracy"])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--work", type=Path, default=Path("/tmp/binviz_trend"))
    ap.add_argument("--summary", type=Path, default=HERE / "results" / "trend_summary.json")
    ap.add_argument("--per-class", type=int, default=200)
    ap.add_argument("--corpus-seed", type=int, default=7)
    ap.add_argument("--epochs", type=int, default=4)
    ap.add_argument("--batch-size", type=int, default=128)
    ap.add_argument("--lr", type=float, default=0.002)
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()

    t0 = time.time()
    work = args.work
    work.mkdir(parents=True, exist_ok=True)

    # corpus -> images -> one fixed split
    run([sys.executable, "-m", "binviz.synthetic",
         "--out", work / "corpus", "--per-class", args.per_class, "--seed", args.corpus_seed])
    run(["binviz", "convert", "--root", work / "corpus",
         "--labels", work / "corpus" / "labels.csv",
         "--out", work / "ds", "--width", "256", "--resize", "16x16"])
    run(["binviz", "split", "--manifest", work / "ds" / "manifest.jsonl",
         "--train-out", work / "train.jsonl", "--test-out", work / "test.jsonl",
         "--fraction", "0.8", "--seed", "0"])
    test_manifest = work / "test.jsonl"

    # one augmented train manifest per ratio, originals plus noised copies
    ratios = [0.01, 0.2, 1.0]
    train_manifests = {"baseline": work / "train.jsonl"}
    for eps in ratios:
        cell = work / f"poisson_{str(eps).replace('.', 'p')}"
        run(["binviz", "augment", "--manifest", work / "train.jsonl",
             "--out-dir", cell, "--noise", f"poisson:{eps}:0"])
        train_manifests[f"poisson@{eps}"] = cell / "manifest.jsonl"

    accuracies: dict[str, list[float]] = {}
    for name, manifest in train_manifests.items():
        accuracies[name] = []
        for seed in args.seeds:
            out_dir = work / "runs" / f"{name.replace('@', '_')}_s{seed}"
            preds = out_dir / "predictions.csv"
            run(["node", TRAINER, "--train", manifest, "--test", test_manifest,
                 "--out", preds, "--epochs", args.epochs, "--batch-size", args.batch_size,
                 "--lr", args.lr, "--arch", "cnn", "--seed", seed])
            acc = score_accuracy(test_manifest, preds)
            accuracies[name].append(acc)
            print(f"  {name} seed {seed}: accuracy {acc:.4f}", flush=True)

    mean = {name: sum(v) / len(v) for name, v in accuracies.items()}
    print("\nmean test accuracy over seeds:")
    for name, m in mean.items():
        print(f"  {name:<14} {m:.4f}   (runs: {', '.join(f'{a:.4f}' for a in accuracies[name])})")

    checks = {
        "low_ratio_0.01_within_0.02_of_baseline": mean["poisson@0.01"] >= mean["baseline"] - 0.02,
        "low_ratio_0.2_within_0.02_of_baseline": mean["poisson@0.2"] >= mean["baseline"] - 0.02,
        "saturating_1.0_trails_0.01_by_0.05": mean["poisson@0.01"] - mean["poisson@1.0"] >= 0.05,
    }
    elapsed = time.time() - t0
    print(f"\nelapsed: {elapsed:.0f} s")
    for name, ok in checks.items():
        print(f"[TREND] {name}: {'PASS' if ok else 'FAIL'}")

    args.summary.parent.mkdir(parents=True, exist_ok=True)
    args.summary.write_text(json.dumps({
        "config": {"per_class": args.per_class, "corpus_seed": args.corpus_seed,
                   "epochs": args.epochs, "batch_size": args.batch_size,
                   "lr": args.lr, "seeds": args.seeds, "image_size": "16x16"},
        "accuracies": accuracies,
        "mean": mean,
        "checks": checks,
        "elapsed_seconds": round(elapsed, 1),
    }, indent=2) + "\n")
    print(f"summary -> {args.summary}")
    return 0 if all(checks.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
