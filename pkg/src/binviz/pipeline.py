"""End-to-end orchestration over the manifest.

Materializes conversions and augmentations to disk, splits datasets
without lineage leakage, and drives external trainers over a sweep grid.
All steps are deterministic for a given seed: outputs never depend on
worker count or completion order.
"""

from __future__ import annotations

import io
import os
import shlex
import subprocess
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path, PurePosixPath

import numpy as np
from PIL import Image

from .augmentation import COMBINATIONS, AugmentationPlan, AugmentationSpec, apply_noise
from .corpus import ClassSet, SampleRecord
from .imaging import ConversionConfig, MalwareImage, convert, decode_png
from .manifest import DatasetManifest, ManifestEntry
from .metrics import PredictionSet, score


def _write_png_atomic(pixels: np.ndarray, path: Path) -> None:
    """Encode and publish a PNG via rename, so concurrent cells that
    produce the same file never expose a torn read."""
    buf = io.BytesIO()
    Image.fromarray(pixels, "RGB").save(buf, format="PNG")
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fp:
            fp.write(buf.getvalue())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def convert_corpus(
    records: list[SampleRecord],
    classes: ClassSet,
    cfg: ConversionConfig,
    out_dir,
    workers: int = 1,
) -> DatasetManifest:
    """Convert every record to a PNG under out_dir and build the manifest.

    PNGs are named <id>__orig.png. Entries are ordered by id, so re-runs
    and different worker counts produce byte-identical manifests.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    def one(record: SampleRecord) -> ManifestEntry:
        image = convert(record, cfg)
        rel = f"{record.id}__orig.png"
        _write_png_atomic(image.pixels, out_dir / rel)
        return ManifestEntry(
            path=str(PurePosixPath(rel)),
            source_id=record.id,
            label=record.label,
            lineage="original",
            width=image.width,
            height=image.height,
        )

    ordered = sorted(records, key=lambda r: r.id)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(one, ordered))
    else:
        entries = [one(r) for r in ordered]
    return DatasetManifest(classes=classes, entries=entries, conversion=cfg.to_dict())


def augment_manifest(
    manifest: DatasetManifest,
    plan: AugmentationPlan,
    images_root,
    out_root=None,
    workers: int = 1,
) -> DatasetManifest:
    """Materialize every plan spec over the manifest's original entries.

    Augmented PNGs are written as <id>__<kind>_<ratio>_<seed>.png under
    out_root (default: next to their originals under images_root); the
    returned manifest holds the originals followed by the augmented
    entries in (spec, id) order, with paths still relative to
    images_root. Labels propagate from the source entry.
    """
    images_root = Path(images_root)
    out_root = images_root if out_root is None else Path(out_root)
    originals = manifest.originals()
    if not originals:
        raise ValueError("manifest has no original entries to augment")

    jobs = [(spec_idx, spec, entry) for spec_idx, spec in enumerate(plan.specs)
            for entry in originals]

    def one(job) -> tuple[int, ManifestEntry]:
        spec_idx, spec, entry = job
        pixels = decode_png(images_root / entry.path)
        image = MalwareImage(pixels=pixels, source_id=entry.source_id)
        noised = apply_noise(image, spec)
        rel = f"{entry.source_id}__{spec.tag()}.png"
        _write_png_atomic(noised.pixels, out_root / rel)
        return spec_idx, ManifestEntry(
            path=str(PurePosixPath(os.path.relpath(out_root / rel, images_root))),
            source_id=entry.source_id,
            label=entry.label,
            lineage=spec,
            width=noised.width,
            height=noised.height,
        )

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            produced = list(pool.map(one, jobs))
    else:
        produced = [one(j) for j in jobs]
    produced.sort(key=lambda pair: (pair[0], pair[1].source_id))
    new_entries = [e for _, e in produced]

    existing = {e.path for e in manifest.entries}
    collisions = sorted({e.path for e in new_entries} & existing)
    if collisions:
        raise ValueError(f"augmentation output collides with existing entries: {collisions}")
    return DatasetManifest(
        classes=manifest.classes,
        entries=manifest.entries + new_entries,
        conversion=manifest.conversion,
        version=manifest.version,
    )


def split_manifest(
    manifest: DatasetManifest, fraction: float = 0.8, seed: int = 0
) -> tuple[DatasetManifest, DatasetManifest]:
    """Stratified train/test split with no lineage leakage.

    Original entries are split per class at the given fraction; every
    augmented entry follows its source to the same side, so no augmented
    copy of a test original can appear in train. Classes with fewer than
    two originals go entirely to train, with a warning.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"split fraction must be in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    by_class: dict[str, list[str]] = {name: [] for name in manifest.classes.names}
    for entry in manifest.originals():
        by_class[entry.label].append(entry.source_id)

    train_ids: set[str] = set()
    test_ids: set[str] = set()
    for name in manifest.classes.names:
        ids = sorted(by_class[name])
        n = len(ids)
        if n < 2:
            if n:
                print(
                    f"binviz: class {name!r} has {n} original(s); assigning all to train",
                    file=sys.stderr,
                )
            train_ids.update(ids)
            continue
        order = rng.permutation(n)
        n_train = int(np.floor(fraction * n + 0.5))
        n_train = min(max(n_train, 1), n - 1)
        shuffled = [ids[i] for i in order]
        train_ids.update(shuffled[:n_train])
        test_ids.update(shuffled[n_train:])

    train_entries, test_entries = [], []
    for entry in manifest.entries:
        if entry.source_id in train_ids:
            train_entries.append(entry)
        elif entry.source_id in test_ids:
            test_entries.append(entry)
        else:
            raise ValueError(
                f"entry {entry.path!r} references source {entry.source_id!r} "
                "with no original in the manifest"
            )

    def build(entries):
        return DatasetManifest(
            classes=manifest.classes,
            entries=entries,
            conversion=manifest.conversion,
            version=manifest.version,
        )

    return build(train_entries), build(test_entries)


def rebase_manifest(manifest: DatasetManifest, old_dir, new_dir) -> DatasetManifest:
    """Re-express entry paths relative to a different manifest directory."""
    old_dir, new_dir = Path(old_dir), Path(new_dir)
    entries = [
        ManifestEntry(
            path=str(PurePosixPath(os.path.relpath(old_dir / e.path, new_dir))),
            source_id=e.source_id,
            label=e.label,
            lineage=e.lineage,
            width=e.width,
            height=e.height,
        )
        for e in manifest.entries
    ]
    return DatasetManifest(
        classes=manifest.classes,
        entries=entries,
        conversion=manifest.conversion,
        version=manifest.version,
    )


@dataclass(frozen=True)
class SweepConfig:
    """Grid definition for the noise sweep."""

    ratios: tuple[float, ...] = (0.01, 0.2, 0.4, 0.6, 0.8, 1.0)
    combinations: tuple[str, ...] = ("poisson", "gaussian", "laplace")
    seed: int = 0
    fraction: float = 0.8
    split_seed: int = 0

    def __post_init__(self) -> None:
        ratios = tuple(float(r) for r in self.ratios)
        if any(not 0.0 <= r <= 1.0 for r in ratios):
            raise ValueError(f"ratios must lie in [0, 1], got {ratios}")
        object.__setattr__(self, "ratios", ratios)
        combos = tuple(self.combinations)
        unknown = [c for c in combos if c not in COMBINATIONS]
        if unknown:
            raise ValueError(f"unknown combinations {unknown}; choose from {sorted(COMBINATIONS)}")
        object.__setattr__(self, "combinations", combos)
        if not 0.0 < self.fraction < 1.0:
            raise ValueError(f"split fraction must be in (0, 1), got {self.fraction}")


@dataclass
class SweepResult:
    config: SweepConfig
    baseline_accuracy: float | None
    cells: dict  # (combination, ratio) -> float accuracy or None when failed

    def to_csv(self) -> str:
        header = ["noise_ratio", "original_model"] + list(self.config.combinations)
        lines = [",".join(header)]
        base = _fmt_cell(self.baseline_accuracy)
        for ratio in self.config.ratios:
            row = [repr(ratio), base]
            row += [_fmt_cell(self.cells.get((combo, ratio))) for combo in self.config.combinations]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"

    def render_text(self) -> str:
        cols = ["original_model"] + list(self.config.combinations)
        width = max(14, max(len(c) for c in cols) + 2)
        out = [f"{'noise_ratio':<12}" + "".join(f"{c:>{width}}" for c in cols)]
        base = _fmt_cell(self.baseline_accuracy)
        for ratio in self.config.ratios:
            cells = [base] + [
                _fmt_cell(self.cells.get((combo, ratio))) for combo in self.config.combinations
            ]
            out.append(f"{repr(ratio):<12}" + "".join(f"{c:>{width}}" for c in cells))
        return "\n".join(out) + "\n"


def _fmt_cell(value) -> str:
    return "failed" if value is None else f"{value:.4f}"


def run_trainer(trainer_cmd: str, train_path: Path, test_path: Path, out_path: Path) -> bool:
    """Invoke the external trainer per the file-based contract.

    The command is extended with --train/--test/--out and must write the
    predictions CSV. Returns False on nonzero exit instead of raising, so
    a sweep can keep going.
    """
    cmd = shlex.split(trainer_cmd) + [
        "--train", str(train_path), "--test", str(test_path), "--out", str(out_path),
    ]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        tail = proc.stderr.strip().splitlines()[-5:]
        print(
            f"binviz: trainer failed (exit {proc.returncode}): {' '.join(cmd)}\n"
            + "\n".join(tail),
            file=sys.stderr,
        )
        return False
    return True


def run_sweep(
    manifest: DatasetManifest,
    sweep: SweepConfig,
    trainer_cmd: str,
    out_dir,
    images_root,
    parallel_cells: int = 1,
) -> SweepResult:
    """Train and score one cell per (combination, ratio), plus a baseline.

    The manifest's originals are split once; each cell enhances the train
    side only (test data stays original) and calls the trainer. A failed
    trainer marks the cell failed and the sweep continues.
    """
    out_dir = Path(out_dir)
    images_root = Path(images_root)
    out_dir.mkdir(parents=True, exist_ok=True)

    train_m, test_m = split_manifest(manifest, sweep.fraction, sweep.split_seed)
    test_path = out_dir / "test.jsonl"
    rebase_manifest(test_m, images_root, out_dir).write(test_path)
    baseline_train = out_dir / "train_baseline.jsonl"
    rebase_manifest(train_m, images_root, out_dir).write(baseline_train)

    baseline_preds = out_dir / "preds_baseline.csv"
    baseline_acc = None
    if run_trainer(trainer_cmd, baseline_train, test_path, baseline_preds):
        baseline_acc = _score_cell(baseline_preds, manifest.classes)

    def cell(combo: str, ratio: float):
        cell_dir = out_dir / "cells" / f"{combo}__{format_for_path(ratio)}"
        cell_dir.mkdir(parents=True, exist_ok=True)
        plan = AugmentationPlan(
            specs=tuple(
                AugmentationSpec(kind=kind, ratio=ratio, seed=sweep.seed)
                for kind in COMBINATIONS[combo]
            )
        )
        enhanced = augment_manifest(train_m, plan, images_root)
        train_path = cell_dir / "train.jsonl"
        rebase_manifest(enhanced, images_root, cell_dir).write(train_path)
        preds = cell_dir / "predictions.csv"
        if not run_trainer(trainer_cmd, train_path, test_path, preds):
            return (combo, ratio), None
        try:
            return (combo, ratio), _score_cell(preds, manifest.classes)
        except ValueError as exc:
            print(f"binviz: cell {combo}@{ratio} produced unusable predictions: {exc}",
                  file=sys.stderr)
            return (combo, ratio), None

    grid = [(combo, ratio) for combo in sweep.combinations for ratio in sweep.ratios]
    if parallel_cells > 1:
        with ThreadPoolExecutor(max_workers=parallel_cells) as pool:
            results = list(pool.map(lambda cr: cell(*cr), grid))
    else:
        results = [cell(*cr) for cr in grid]

    result = SweepResult(
        config=sweep,
        baseline_accuracy=baseline_acc,
        cells=dict(results),
    )
    (out_dir / "results.csv").write_text(result.to_csv(), encoding="utf-8")
    (out_dir / "results.txt").write_text(result.render_text(), encoding="utf-8")
    return result


def _score_cell(preds_path: Path, classes: ClassSet) -> float:
    preds = PredictionSet.read_csv(preds_path, classes)
    return score(preds).accuracy


def format_for_path(ratio: float) -> str:
    return repr(float(ratio)).replace(".", "p")


def manifest_stats(manifest: DatasetManifest) -> dict:
    """Summary counts used by the stats subcommand."""
    lineage_counts: dict[str, int] = {"original": 0}
    for e in manifest.entries:
        key = "original" if e.is_original else e.lineage.kind
        lineage_counts[key] = lineage_counts.get(key, 0) + 1
    dims = sorted({(e.width, e.height) for e in manifest.entries})
    return {
        "entries": len(manifest.entries),
        "originals": len(manifest.originals()),
        "classes": list(manifest.classes.names),
        "class_histogram": manifest.class_histogram(),
        "class_histogram_originals": manifest.class_histogram(originals_only=True),
        "lineage_counts": lineage_counts,
        "image_dims": [list(d) for d in dims],
    }
