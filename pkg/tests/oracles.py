"""Reference implementations the suite checks the library against.

Everything here recomputes results from scratch with no shared code:
entropy oracles rebuild each window histogram per position, the metrics
oracle recounts a prediction list with plain dicts. The pure-Python
entropy oracle (math.log2, sequential sums) can disagree with any
numpy-based computation by one output quantum on non-dyadic
distributions, because libm and numpy log2 round differently on some
inputs; the batch oracle shares only np.log2 with the library and is
held to exact equality.
"""

from __future__ import annotations

import math
from collections import Counter

import numpy as np

QUANTUM = 255.0 / 8.0  # exact in binary


def quantize(h: float) -> int:
    return min(int(math.floor(h * QUANTUM + 0.5)), 255)


def entropy_bits_py(window: bytes) -> float:
    """Textbook H = -sum p log2 p over the byte histogram."""
    n = len(window)
    h = 0.0
    for _value, count in sorted(Counter(window).items()):
        p = count / n
        h -= p * math.log2(p)
    return h


def entropy_pixel_py(payload: bytes, j: int, window: int) -> int:
    start = max(0, j - window + 1)
    return quantize(entropy_bits_py(payload[start : j + 1]))


def entropy_pixel_np(payload: bytes, j: int, window: int) -> int:
    """Single-position oracle: fresh bincount over the trailing window."""
    data = np.frombuffer(payload, dtype=np.uint8)
    start = max(0, j - window + 1)
    counts = np.bincount(data[start : j + 1], minlength=256).astype(np.float64)
    p = counts / (j + 1 - start)
    terms = np.where(counts > 0, -p * np.log2(np.where(counts > 0, p, 1.0)), 0.0)
    return int(np.minimum(np.floor(terms.sum() * QUANTUM + 0.5), 255.0))


def entropy_profile_oracle(payload: bytes, window: int) -> np.ndarray:
    """All positions, rebuilding every histogram from the raw window bytes.

    Full windows are re-binned row by row from a sliding view (each row is
    an independent bincount of its own bytes); no running histograms or
    prefix sums anywhere.
    """
    data = np.frombuffer(payload, dtype=np.uint8)
    n = data.size
    out = np.empty(n, dtype=np.uint8)
    for j in range(min(window - 1, n)):
        out[j] = entropy_pixel_np(payload, j, window)
    if n >= window:
        wins = np.lib.stride_tricks.sliding_window_view(data, window)
        for a in range(0, wins.shape[0], 4096):
            b = min(a + 4096, wins.shape[0])
            rows = b - a
            offs = np.arange(rows, dtype=np.int64)[:, None] * 256
            flat = (wins[a:b].astype(np.int64) + offs).ravel()
            counts = (
                np.bincount(flat, minlength=rows * 256)
                .reshape(rows, 256)
                .astype(np.float64)
            )
            p = counts / window
            terms = np.where(counts > 0, -p * np.log2(np.where(counts > 0, p, 1.0)), 0.0)
            h = terms.sum(axis=1)
            out[window - 1 + a : window - 1 + b] = np.minimum(
                np.floor(h * QUANTUM + 0.5), 255.0
            ).astype(np.uint8)
    return out


def metrics_oracle(rows, class_names):
    """Brute-force recount of confusion, per-class metrics, and averages."""
    k = len(class_names)
    idx = {name: i for i, name in enumerate(class_names)}
    confusion = [[0] * k for _ in range(k)]
    for _sid, true, pred in rows:
        confusion[idx[true]][idx[pred]] += 1

    precision, recall, f1, support, flags = [], [], [], [], []
    for i in range(k):
        tp = confusion[i][i]
        col = sum(confusion[r][i] for r in range(k))
        row = sum(confusion[i])
        prec = tp / col if col else 0.0
        rec = tp / row if row else 0.0
        f = 2.0 * prec * rec / (prec + rec) if prec + rec else 0.0
        precision.append(prec)
        recall.append(rec)
        f1.append(f)
        support.append(row)
        flags.append(col == 0 or row == 0 or prec + rec == 0.0)

    total = sum(support)
    acc = sum(confusion[i][i] for i in range(k)) / total if total else None

    def averaged(mode):
        wp = sum(p * s for p, s in zip(precision, support))
        wr = sum(r * s for r, s in zip(recall, support))
        denom = total if mode == "weighted" else k
        ap, ar = wp / denom, wr / denom
        af = 0.0 if ap + ar == 0.0 else 2.0 * ap * ar / (ap + ar)
        return ap, ar, af

    return {
        "confusion": confusion,
        "precision": precision,
        "recall": recall,
        "f1": f1,
        "support": support,
        "flags": flags,
        "accuracy": acc,
        "weighted": averaged("weighted"),
        "paper-literal": averaged("paper-literal"),
    }
