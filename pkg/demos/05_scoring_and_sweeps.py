"""
Scoring predictions and sweeping noise configurations
=====================================================

A trainer is any command that accepts --train/--test manifests and
writes a predictions CSV. Here the bundled majority-class stub stands
in for a real model: the sweep machinery trains one cell per
(noise combination, ratio), scores each against the untouched test
split, and emits a results table.
"""

import sys
import tempfile
from pathlib import Path

from binviz import (
    ClassSet,
    ConversionConfig,
    PredictionSet,
    SweepConfig,
    convert_corpus,
    run_sweep,
    score,
)
from binviz.synthetic import generate_records

work = Path(tempfile.mkdtemp(prefix="binviz_demo_"))

# Scoring first, on a hand-made prediction set: 3 right, 1 wrong.
classes = ClassSet(["clean", "packed"])
preds = PredictionSet(
    [("s1", "clean", "clean"), ("s2", "clean", "clean"),
     ("s3", "packed", "packed"), ("s4", "packed", "clean")],
    classes,
)
report = score(preds)
print(report.render_text())

# The same machinery at sweep scale. Convert a small corpus...
records, fam_classes = generate_records(per_class=6, seed=31)
cfg = ConversionConfig(width=16, entropy_window=16, resize_to=None)
images = work / "images"
manifest = convert_corpus(records, fam_classes, cfg, images)

# ...then drive the stub trainer over a 2x2 grid plus the baseline.
sweep = SweepConfig(
    ratios=(0.01, 1.0),
    combinations=("poisson", "poisson+gaussian"),
    seed=8,
    split_seed=8,
)
stub = f"{sys.executable} -m binviz.stub_trainer"
result = run_sweep(manifest, sweep, stub, work / "sweep", images)
print(result.render_text())
print(f"artifacts (test.jsonl, per-cell manifests, results.csv) under {work / 'sweep'}")

# A majority-class stub lands at the majority share no matter the noise;
# swap in a real trainer command to see the table move.
