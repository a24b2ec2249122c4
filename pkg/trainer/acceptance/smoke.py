#!/usr/bin/env python3
"""Sweep smoke check: the full ratio x kind grid end to end.

Runs `binviz sweep` over 6 ratios x 3 noise kinds (plus the unaugmented
baseline column) on a small synthetic corpus, with the CNN trainer in
every cell, then verifies the results table is well formed and that the
per-cell predictions score cleanly.
"""

import argparse
import csv
import json
import shlex
import subprocess
import sys
import time
from pathlib import Path

HERE = Path(__file__).resolve().parent
TRAINER = HERE.parent / "dist" / "main.js"
RATIOS = ["0.01", "0.2", "0.4", "0.6", "0.8", "1.0"]
KINDS = ["poisson", "gaussian", "laplace"]


def run(cmd, **kw):
    print(f"$ {' '.join(shlex.quote(str(c)) for c in cmd)}", flush=True)
    res = subprocess.run([str(c) for c in cmd], **kw)
    if res.returncode != 0:
        sys.exit(f"command failed with exit {res.returncode}")
    return res


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--work", type=Path, default=Path("/tmp/binviz_smoke"))
    ap.add_argument("--results-copy", type=Path, default=HERE / "results" / "smoke_results.csv")
    ap.add_argument("--per-class", type=int, default=25)
    ap.add_argument("--epochs", type=int, default=4)
    args = ap.parse_args()

    t0 = time.time()
    work = args.work
    work.mkdir(parents=True, exist_ok=True)

    run([sys.executable, "-m", "binviz.synthetic",
         "--out", work / "corpus", "--per-class", args.per_class, "--seed", "13"])
    run(["binviz", "convert", "--root", work / "corpus",
         "--labels", work / "corpus" / "labels.csv",
         "--out", work / "ds", "--width", "256", "--resize", "16x16"])

    trainer_cmd = f"node {TRAINER} --epochs {args.epochs} --batch-size 64 --lr 0.005 --arch cnn"
    sweep_dir = work / "sweep"
    run(["binviz", "sweep", "--manifest", work / "ds" / "manifest.jsonl",
         "--out", sweep_dir, "--trainer", trainer_cmd,
         "--ratios", ",".join(RATIOS), "--combos", ",".join(KINDS),
         "--seed", "5", "--fraction", "0.8", "--split-seed", "0"])

    # table shape: header row, one row per ratio, every cell a float in [0,1]
    with open(sweep_dir / "results.csv", newline="") as fp:
        rows = list(csv.reader(fp))
    ok_header = rows[0] == ["noise_ratio", "original_model"] + KINDS
    ok_rows = [r[0] for r in rows[1:]] == RATIOS
    cells = [cell for r in rows[1:] for cell in r[1:]]
    ok_cells = all(cell != "failed" and 0.0 <= float(cell) <= 1.0 for cell in cells)

    # every cell's predictions must score under the scorer with no errors
    ok_score = True
    preds = sorted(sweep_dir.glob("cells/*/predictions.csv")) + [sweep_dir / "preds_baseline.csv"]
    for p in preds:
        res = run(["binviz", "score", "--manifest", sweep_dir / "test.jsonl",
                   "--predictions", p, "--json"], capture_output=True, text=True)
        report = json.loads(res.stdout)
        ok_score = ok_score and 0.0 <= report["accuracy"] <= 1.0

    elapsed = time.time() - t0
    checks = {
        "results_header": ok_header,
        "one_row_per_ratio": ok_rows,
        f"all_{len(cells)}_cells_numeric": ok_cells,
        f"all_{len(preds)}_prediction_files_score": ok_score,
    }
    print(f"\nelapsed: {elapsed:.0f} s")
    for name, ok in checks.items():
        print(f"[SMOKE] {name}: {'PASS' if ok else 'FAIL'}")

    args.results_copy.parent.mkdir(parents=True, exist_ok=True)
    args.results_copy.write_bytes((sweep_dir / "results.csv").read_bytes())
    print(f"results table copied -> {args.results_copy}")
    return 0 if all(checks.values()) else 1


if __name__ == "__main__":
    sys.exit(main())
