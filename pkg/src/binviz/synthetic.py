"""Synthetic binary corpus with four byte-statistic families.

Real malware corpora cannot ship inside a test suite, so this module
fabricates small executables-shaped blobs whose byte distributions are
distinct enough to separate visually and with simple models:

  padded_text  printable text with zeroed padding blocks (low/mid entropy)
  packed       uniform random payload behind a tiny header (high entropy)
  looped_code  a repeated per-sample motif with sparse jitter (mid entropy)
  sparse_table mostly zeros plus regular 4-byte records (very low entropy)

Everything is deterministic for a given seed. Run as a script to write
a corpus directory plus labels.csv:

  python -m binviz.synthetic --out corpus/ --per-class 50 --seed 7
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .corpus import ClassSet, SampleRecord

FAMILIES = ("looped_code", "packed", "padded_text", "sparse_table")

_LENGTH_RANGES = {
    "padded_text": (4096, 12288),
    "packed": (2048, 8192),
    "looped_code": (3072, 10240),
    "sparse_table": (4096, 16384),
}

# letters a-z plus space/newline/punctuation, heavily skewed like prose
_TEXT_SYMBOLS = np.frombuffer(b"abcdefghijklmnopqrstuvwxyz .,\n", dtype=np.uint8)


def _text_probs() -> np.ndarray:
    ranks = np.arange(1, len(_TEXT_SYMBOLS) + 1, dtype=np.float64)
    p = 1.0 / ranks
    return p / p.sum()


_TEXT_P = _text_probs()


def make_payload(family: str, rng: np.random.Generator) -> bytes:
    """Draw one blob for the family from the given generator."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    lo, hi = _LENGTH_RANGES[family]
    n = int(rng.integers(lo, hi + 1))

    if family == "packed":
        body = rng.integers(0, 256, size=n, dtype=np.int64).astype(np.uint8)
        header = np.zeros(64, dtype=np.uint8)
        header[:4] = np.frombuffer(b"PK\x03\x04", dtype=np.uint8)
        body[: len(header)] = header
        return body.tobytes()

    if family == "padded_text":
        idx = rng.choice(len(_TEXT_SYMBOLS), size=n, p=_TEXT_P)
        body = _TEXT_SYMBOLS[idx]
        # zero out roughly a third of the 256-byte blocks
        blocks = max(n // 256, 1)
        zeroed = rng.random(blocks) < 0.35
        for b in np.flatnonzero(zeroed):
            body[b * 256 : (b + 1) * 256] = 0
        return body.tobytes()

    if family == "looped_code":
        motif = rng.integers(0, 256, size=16, dtype=np.int64).astype(np.uint8)
        reps = n // len(motif) + 1
        body = np.tile(motif, reps)[:n]
        jitter = rng.random(n) < 0.05
        body[jitter] = rng.integers(0, 256, size=int(jitter.sum()), dtype=np.int64).astype(
            np.uint8
        )
        return body.tobytes()

    body = np.zeros(n, dtype=np.uint8)
    starts = np.arange(0, n - 4, 32)
    body[starts] = (starts // 32) & 0xFF
    body[starts + 1] = ((starts // 32) >> 8) & 0xFF
    body[starts + 2] = rng.integers(0, 16, size=len(starts), dtype=np.int64).astype(np.uint8)
    body[starts + 3] = 0xFF
    return body.tobytes()


def generate_records(per_class: int = 200, seed: int = 0) -> tuple[list[SampleRecord], ClassSet]:
    """Build the corpus in memory, sorted by id."""
    if per_class < 1:
        raise ValueError(f"per_class must be >= 1, got {per_class}")
    rng = np.random.default_rng(seed)
    records = []
    for family in FAMILIES:
        for i in range(per_class):
            payload = make_payload(family, rng)
            records.append(
                SampleRecord(
                    id=f"{family}_{i:04d}.bin",
                    payload=payload,
                    label=family,
                    size_bytes=len(payload),
                )
            )
    records.sort(key=lambda r: r.id)
    return records, ClassSet(FAMILIES)


def generate_corpus(out_dir, per_class: int = 200, seed: int = 0) -> Path:
    """Write blobs plus labels.csv under out_dir; returns the labels path."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records, _ = generate_records(per_class=per_class, seed=seed)
    for record in records:
        (out_dir / record.id).write_bytes(record.payload)
    labels_path = out_dir / "labels.csv"
    lines = ["id,label"] + [f"{r.id},{r.label}" for r in records]
    labels_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return labels_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="binviz-synthetic", description=__doc__)
    parser.add_argument("--out", required=True, type=Path)
    parser.add_argument("--per-class", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    try:
        labels = generate_corpus(args.out, per_class=args.per_class, seed=args.seed)
    except (OSError, ValueError) as exc:
        print(f"binviz-synthetic: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(FAMILIES) * args.per_class} blobs under {args.out} ({labels})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
