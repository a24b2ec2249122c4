"""
Corpus to training-ready dataset
================================

The full data path: synthesize a labeled binary corpus, convert it to
PNGs plus a manifest, enlarge the originals with noise, and split into
train/test without letting augmented copies leak across the boundary.
Everything is driven by seeds, so re-running reproduces every byte.
"""

import tempfile
from pathlib import Path

from binviz import (
    AugmentationPlan,
    AugmentationSpec,
    ConversionConfig,
    augment_manifest,
    convert_corpus,
    load_corpus,
    manifest_stats,
    split_manifest,
)
from binviz.synthetic import generate_corpus

work = Path(tempfile.mkdtemp(prefix="binviz_demo_"))

# 1. A corpus: four byte-statistic families, 10 blobs each, labels.csv.
corpus = work / "corpus"
labels = generate_corpus(corpus, per_class=10, seed=2024)
records, classes = load_corpus(corpus, labels)
print(f"loaded {len(records)} binaries, classes {list(classes.names)}")

# 2. Convert. Native width 64; no resize keeps this demo inspectable.
cfg = ConversionConfig(width=64, entropy_window=256, resize_to=None)
images = work / "images"
manifest = convert_corpus(records, classes, cfg, images, workers=4)
manifest.write(images / "manifest.jsonl")
print(f"converted -> {images / 'manifest.jsonl'}")
print("first entry:", manifest.entries[0].to_json_line())

# 3. Augment the originals: two kinds at ratio 0.2 triples the dataset.
plan = AugmentationPlan(specs=(
    AugmentationSpec(kind="poisson", ratio=0.2, seed=11),
    AugmentationSpec(kind="laplace", ratio=0.2, seed=11),
))
augmented = augment_manifest(manifest, plan, images, workers=4)
stats = manifest_stats(augmented)
print(f"\nafter augmentation: {stats['entries']} entries "
      f"({stats['originals']} originals), lineage {stats['lineage_counts']}")

# 4. Split 80/20 on the originals; augmented rows follow their source.
train, test = split_manifest(augmented, 0.8, seed=5)
train_src = {e.source_id for e in train.entries}
test_src = {e.source_id for e in test.entries}
print(f"\ntrain entries: {len(train.entries)}   test entries: {len(test.entries)}")
print("source overlap between sides:", train_src & test_src or "none")
print("per-class test originals:", test.class_histogram(originals_only=True))
