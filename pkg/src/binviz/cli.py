"""Command line front end.

Subcommands: convert, augment, split, sweep, score, stats. All state
lives in files (blobs, PNGs, JSONL manifests, CSVs); every command is
deterministic for a given seed. BINVIZ_SEED sets the default seed when
a command's --seed flag is omitted.

Exit codes: 0 success, 1 validation or I/O failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .augmentation import COMBINATIONS, NOISE_KINDS, AugmentationPlan, AugmentationSpec
from .corpus import DEFAULT_MAX_SIZE, load_corpus
from .imaging import ConversionConfig
from .manifest import DatasetManifest
from .metrics import AVERAGING_MODES, PredictionSet, score
from .pipeline import (
    SweepConfig,
    augment_manifest,
    convert_corpus,
    manifest_stats,
    rebase_manifest,
    run_sweep,
    split_manifest,
)


def _default_seed() -> int:
    raw = os.environ.get("BINVIZ_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"BINVIZ_SEED must be an integer, got {raw!r}") from None


def _resolve_seed(value) -> int:
    return _default_seed() if value is None else int(value)


def _parse_resize(text: str):
    if text.lower() == "none":
        return None
    try:
        w, h = text.lower().split("x")
        return (int(w), int(h))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT or 'none', got {text!r}")


def _parse_channels(text: str) -> tuple:
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated channel indices, got {text!r}")


def _parse_noise(text: str) -> tuple:
    """kind:ratio or kind:ratio:seed"""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"expected kind:ratio[:seed], got {text!r}")
    kind = parts[0]
    try:
        ratio = float(parts[1])
        seed = int(parts[2]) if len(parts) == 3 else None
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad ratio or seed in {text!r}")
    return kind, ratio, seed


def _csv_floats(text: str) -> tuple:
    if not text.strip():
        return ()
    return tuple(float(t) for t in text.split(","))


def _csv_names(text: str) -> tuple:
    if not text.strip():
        return ()
    return tuple(t.strip() for t in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binviz",
        description="Binary-to-image conversion, noise augmentation, and scoring toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="convert labeled binaries to PNGs plus a manifest")
    p.add_argument("--root", required=True, type=Path, help="corpus directory")
    p.add_argument("--labels", required=True, type=Path, help="CSV with header id,label")
    p.add_argument("--out", required=True, type=Path, help="output directory")
    p.add_argument("--width", type=int, default=256)
    p.add_argument("--entropy-window", type=int, default=256)
    p.add_argument("--resize", type=_parse_resize, default=(256, 256),
                   help="WIDTHxHEIGHT or 'none' (default 256x256)")
    p.add_argument("--interpolation", choices=("bilinear", "nearest", "bicubic"),
                   default="bilinear")
    p.add_argument("--max-size-bytes", type=int, default=DEFAULT_MAX_SIZE)
    p.add_argument("--lenient", action="store_true",
                   help="skip per-record violations instead of aborting")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("augment", help="materialize noise-augmented copies of originals")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--out-dir", required=True, type=Path,
                   help="directory for augmented PNGs and the new manifest")
    p.add_argument("--noise", action="append", type=_parse_noise, default=[],
                   metavar="KIND:RATIO[:SEED]",
                   help=f"one augmentation (kinds: {', '.join(NOISE_KINDS)}); repeatable")
    p.add_argument("--preset", action="append", default=[], choices=sorted(COMBINATIONS),
                   help="named kind combination, expanded at --ratio; repeatable")
    p.add_argument("--ratio", type=float, default=None, help="ratio for --preset entries")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--channels", type=_parse_channels, default=(0, 1, 2),
                   help="channel indices to perturb (default 0,1,2)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("split", help="stratified train/test split without lineage leakage")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--train-out", required=True, type=Path)
    p.add_argument("--test-out", required=True, type=Path)
    p.add_argument("--fraction", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("sweep", help="train/score a grid of noise configurations")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--trainer", required=True,
                   help="command invoked as: CMD --train T --test E --out P")
    p.add_argument("--ratios", type=_csv_floats, default=(0.01, 0.2, 0.4, 0.6, 0.8, 1.0))
    p.add_argument("--combos", type=_csv_names, default=("poisson", "gaussian", "laplace"),
                   help=f"comma-separated combination names from: {', '.join(sorted(COMBINATIONS))}"
                        " (empty string = baseline only)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fraction", type=float, default=0.8)
    p.add_argument("--split-seed", type=int, default=None)
    p.add_argument("--parallel-cells", type=int, default=1)

    p = sub.add_parser("score", help="score a predictions CSV against a manifest's classes")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--predictions", required=True, type=Path)
    p.add_argument("--mode", choices=AVERAGING_MODES, default="weighted")
    p.add_argument("--json", action="store_true", help="emit the report as JSON instead of text")

    p = sub.add_parser("stats", help="summarize a manifest")
    p.add_argument("--manifest", required=True, type=Path)
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")

    return parser


def cmd_convert(args, parser) -> int:
    if not args.labels.is_file():
        parser.error(f"label file not found: {args.labels}")
    if not args.root.is_dir():
        parser.error(f"corpus root not found: {args.root}")
    cfg = ConversionConfig(
        width=args.width,
        entropy_window=args.entropy_window,
        resize_to=args.resize,
        interpolation=args.interpolation,
    )
    records, classes = load_corpus(
        args.root, args.labels, max_size_bytes=args.max_size_bytes, lenient=args.lenient
    )
    manifest = convert_corpus(records, classes, cfg, args.out, workers=args.workers)
    manifest.write(args.out / "manifest.jsonl")
    print(f"converted {len(manifest.entries)} binaries across "
          f"{len(classes)} classes -> {args.out / 'manifest.jsonl'}")
    return 0


def cmd_augment(args, parser) -> int:
    seed = _resolve_seed(args.seed)
    specs = []
    for kind, ratio, spec_seed in args.noise:
        specs.append(AugmentationSpec(
            kind=kind, ratio=ratio,
            seed=seed if spec_seed is None else spec_seed,
            channels=args.channels,
        ))
    if args.preset:
        if args.ratio is None:
            parser.error("--preset requires --ratio")
        for name in args.preset:
            for kind in COMBINATIONS[name]:
                specs.append(AugmentationSpec(
                    kind=kind, ratio=args.ratio, seed=seed, channels=args.channels,
                ))
    if not specs:
        parser.error("no augmentations requested; pass --noise and/or --preset")

    manifest = DatasetManifest.read(args.manifest)
    images_root = args.manifest.parent
    plan = AugmentationPlan(specs=tuple(specs))
    augmented = augment_manifest(
        manifest, plan, images_root, out_root=args.out_dir, workers=args.workers
    )
    out_path = args.out_dir / "manifest.jsonl"
    rebase_manifest(augmented, images_root, args.out_dir).write(out_path)
    n_new = len(augmented.entries) - len(manifest.entries)
    print(f"wrote {n_new} augmented images ({len(plan.specs)} spec(s)) -> {out_path}")
    return 0


def cmd_split(args, parser) -> int:
    manifest = DatasetManifest.read(args.manifest)
    images_root = args.manifest.parent
    train, test = split_manifest(manifest, args.fraction, _resolve_seed(args.seed))
    for part, path in ((train, args.train_out), (test, args.test_out)):
        path.parent.mkdir(parents=True, exist_ok=True)
        rebase_manifest(part, images_root, path.parent).write(path)
    print(f"split {len(manifest.originals())} originals -> "
          f"{len(train.entries)} train / {len(test.entries)} test entries")
    return 0


def cmd_sweep(args, parser) -> int:
    manifest = DatasetManifest.read(args.manifest)
    sweep = SweepConfig(
        ratios=args.ratios,
        combinations=args.combos,
        seed=_resolve_seed(args.seed),
        fraction=args.fraction,
        split_seed=_resolve_seed(args.split_seed),
    )
    result = run_sweep(
        manifest, sweep, args.trainer, args.out, args.manifest.parent,
        parallel_cells=args.parallel_cells,
    )
    sys.stdout.write(result.render_text())
    print(f"results written under {args.out}")
    return 0


def cmd_score(args, parser) -> int:
    manifest = DatasetManifest.read(args.manifest)
    preds = PredictionSet.read_csv(args.predictions, manifest.classes)
    report = score(preds, mode=args.mode)
    if args.json:
        json.dump(report.to_dict(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(report.render_text())
    return 0


def cmd_stats(args, parser) -> int:
    manifest = DatasetManifest.read(args.manifest)
    info = manifest_stats(manifest)
    if args.json:
        json.dump(info, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return 0
    print(f"entries:   {info['entries']} ({info['originals']} original)")
    print(f"classes:   {', '.join(info['classes'])}")
    print("per class (all / originals):")
    for name in info["classes"]:
        total = info["class_histogram"].get(name, 0)
        orig = info["class_histogram_originals"].get(name, 0)
        print(f"  {name:<24} {total:>6} / {orig}")
    print("lineage:")
    for kind, count in sorted(info["lineage_counts"].items()):
        print(f"  {kind:<24} {count:>6}")
    dims = ", ".join(f"{w}x{h}" for w, h in info["image_dims"])
    print(f"image dims: {dims}")
    return 0


_HANDLERS = {
    "convert": cmd_convert,
    "augment": cmd_augment,
    "split": cmd_split,
    "sweep": cmd_sweep,
    "score": cmd_score,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args, parser)
    except (ValueError, OSError) as exc:
        print(f"binviz: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
