"""Byte stream to 3-channel image conversion.

An executable's bytes are laid out row-major into a fixed-width grid.
Channel 0 holds each byte's decimal value, channel 1 the scaled Shannon
entropy of a trailing window ending at that byte, and channel 2 is zero
(it only ever carries noise added later by the augmentation stage).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Union

import numpy as np
from PIL import Image

if TYPE_CHECKING:
    from .augmentation import AugmentationSpec

ENTROPY_MAX_BITS = 8.0
_SCALE = 255.0 / ENTROPY_MAX_BITS  # 31.875, exact in binary

_RESAMPLING = {
    "bilinear": Image.Resampling.BILINEAR,
    "nearest": Image.Resampling.NEAREST,
    "bicubic": Image.Resampling.BICUBIC,
}

# Positions per vectorized entropy block; bounds transient memory at
# roughly chunk * 256 * 8 bytes.
_CHUNK = 16384


@dataclass(frozen=True)
class ConversionConfig:
    """Knobs for the byte-to-image conversion.

    width is the native image width in pixels; height follows from the
    payload size. entropy_window is the trailing window length W used for
    channel 1. resize_to, when set, rescales the native image to a fixed
    (width, height) for classifier input.
    """

    width: int = 256
    entropy_window: int = 256
    resize_to: tuple[int, int] | None = (256, 256)
    interpolation: str = "bilinear"

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if self.entropy_window < 2:
            raise ValueError(f"entropy_window must be >= 2, got {self.entropy_window}")
        if self.resize_to is not None:
            w, h = self.resize_to
            if w < 8 or h < 8:
                raise ValueError(f"resize dimensions must be >= 8, got {self.resize_to}")
            object.__setattr__(self, "resize_to", (int(w), int(h)))
        if self.interpolation not in _RESAMPLING:
            raise ValueError(
                f"unknown interpolation {self.interpolation!r}; "
                f"choose one of {sorted(_RESAMPLING)}"
            )

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "entropy_window": self.entropy_window,
            "resize_to": list(self.resize_to) if self.resize_to else None,
            "interpolation": self.interpolation,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConversionConfig":
        resize = d.get("resize_to")
        return cls(
            width=int(d.get("width", 256)),
            entropy_window=int(d.get("entropy_window", 256)),
            resize_to=tuple(resize) if resize else None,
            interpolation=d.get("interpolation", "bilinear"),
        )


@dataclass
class MalwareImage:
    """A converted sample: (h, w, 3) uint8 pixel grid plus provenance.

    lineage is the string "original" for freshly converted samples, or the
    AugmentationSpec that produced a noised copy.
    """

    pixels: np.ndarray
    source_id: str
    lineage: Union[str, "AugmentationSpec"] = "original"

    def __post_init__(self) -> None:
        px = np.asarray(self.pixels)
        if px.ndim != 3 or px.shape[2] != 3:
            raise ValueError(f"pixels must have shape (h, w, 3), got {px.shape}")
        if px.dtype != np.uint8:
            raise ValueError(f"pixels must be uint8, got {px.dtype}")
        self.pixels = px

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def is_original(self) -> bool:
        return self.lineage == "original"

    def output_id(self) -> str:
        """Stable identifier used for file naming and deterministic ordering."""
        if self.is_original:
            return f"{self.source_id}__orig"
        return self.lineage.output_id(self.source_id)


def byte_channel(payload: bytes, j: int) -> int:
    """Unsigned decimal value of byte j, the channel-0 intensity."""
    if not 0 <= j < len(payload):
        raise IndexError(f"position {j} out of range for {len(payload)}-byte payload")
    return payload[j]


def _quantize(h):
    """Map entropy in [0, 8] bits to [0, 255], rounding half-up."""
    return np.minimum(np.floor(np.asarray(h) * _SCALE + 0.5), 255.0).astype(np.uint8)


def entropy_channel(payload: bytes, j: int, window: int = 256) -> int:
    """Channel-1 intensity at position j.

    The window is the trailing slice payload[max(0, j-W+1) .. j]; its byte
    histogram gives H = -sum(p * log2 p) in [0, 8] bits, scaled linearly
    to [0, 255] and rounded half-up. Delegates to entropy_profile so both
    entry points share one arithmetic path bit for bit.
    """
    if window < 2:
        raise ValueError(f"window must be >= 2, got {window}")
    if not 0 <= j < len(payload):
        raise IndexError(f"position {j} out of range for {len(payload)}-byte payload")
    start = max(0, j - window + 1)
    return int(entropy_profile(payload[start : j + 1], window)[-1])


def entropy_profile(payload: bytes, window: int = 256) -> np.ndarray:
    """entropy_channel evaluated at every position, as a uint8 array.

    Equivalent to calling entropy_channel at each j, but runs the window
    histograms via chunked prefix sums instead of rebuilding them from
    scratch, which keeps the conversion hot path linear in payload size.
    """
    if window < 2:
        raise ValueError(f"window must be >= 2, got {window}")
    data = np.frombuffer(payload, dtype=np.uint8)
    n = data.size
    out = np.empty(n, dtype=np.uint8)
    if n == 0:
        return out

    # Full-window positions share n = window, so their per-count entropy
    # terms come from one lookup table; shorter leading windows divide by
    # their own size. Both paths compute -(c/n) * log2(c/n) term by term,
    # exactly as the per-position form does.
    table = _term_table(window)

    for a in range(0, n, _CHUNK):
        b = min(a + _CHUNK, n)
        origin = max(0, a - window + 1)
        span = data[origin:b]
        onehot = np.zeros((span.size + 1, 256), dtype=np.int32)
        onehot[np.arange(1, span.size + 1), span] = 1
        prefix = np.cumsum(onehot, axis=0)

        j = np.arange(a, b)
        ends = j - origin + 1
        starts = np.maximum(0, j - window + 1) - origin
        counts = prefix[ends] - prefix[starts]

        sizes = np.minimum(j + 1, window)
        full = sizes == window
        h = np.empty(b - a, dtype=np.float64)
        if full.any():
            h[full] = table[counts[full]].sum(axis=1)
        grow = ~full
        if grow.any():
            c = counts[grow].astype(np.float64)
            p = c / sizes[grow, None]
            terms = np.where(c > 0, -p * np.log2(np.where(c > 0, p, 1.0)), 0.0)
            h[grow] = terms.sum(axis=1)
        out[a:b] = _quantize(h)
    return out


def _term_table(window: int) -> np.ndarray:
    """-(c/W) * log2(c/W) for every count c in 0..W (0 maps to 0)."""
    c = np.arange(window + 1, dtype=np.float64)
    p = c / window
    with np.errstate(divide="ignore", invalid="ignore"):
        t = -p * np.log2(p)
    t[0] = 0.0
    return t


def convert(record, cfg: ConversionConfig = ConversionConfig()) -> MalwareImage:
    """Convert one sample's payload into a 3-channel image.

    The native grid is cfg.width wide and ceil(len/width) tall, filled
    row-major; grid cells past the payload end stay zero in all channels.
    When cfg.resize_to is set the native image is rescaled with the
    configured interpolation (output stays uint8, so values remain in
    [0, 255]).
    """
    payload = record.payload
    if len(payload) == 0:
        raise ValueError(f"record {record.id!r} has an empty payload")
    n = len(payload)
    w = cfg.width
    h = math.ceil(n / w)
    px = np.zeros((h, w, 3), dtype=np.uint8)
    flat = px.reshape(-1, 3)
    flat[:n, 0] = np.frombuffer(payload, dtype=np.uint8)
    flat[:n, 1] = entropy_profile(payload, cfg.entropy_window)
    if cfg.resize_to is not None:
        im = Image.fromarray(px, "RGB").resize(cfg.resize_to, _RESAMPLING[cfg.interpolation])
        px = np.asarray(im)
    return MalwareImage(pixels=px, source_id=record.id, lineage="original")


def encode_png(image: MalwareImage, path) -> None:
    """Write the pixel grid as an 8-bit RGB PNG (lossless round-trip)."""
    path = Path(path)
    try:
        with open(path, "wb") as fp:
            Image.fromarray(image.pixels, "RGB").save(fp, format="PNG")
    except OSError as exc:
        raise OSError(f"failed to write PNG {path}: {exc}") from exc


def decode_png(path) -> np.ndarray:
    """Read a PNG back into an (h, w, 3) uint8 array."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            if im.mode != "RGB":
                im = im.convert("RGB")
            return np.asarray(im).copy()
    except OSError as exc:
        raise OSError(f"failed to read PNG {path}: {exc}") from exc
