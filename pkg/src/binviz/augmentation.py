"""Additive-noise dataset enhancement.

Three noise kinds, each driven by a unitless ratio in [0, 1] that maps to
the distribution's scale parameter as ratio * 255 (the channel maximum):

  gaussian  Z ~ Normal(0, sigma = ratio * 255)
  poisson   K ~ Poisson(lambda = ratio * 255), added raw (nonnegative)
  laplace   Z ~ Laplace(0, b = ratio * 255)

Noise is drawn per pixel per selected channel, added to the intensities,
rounded and clamped back into [0, 255]. Every image gets its own RNG
stream keyed by (seed, source_id), so results do not depend on the order
or the worker count used to process a dataset.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .imaging import MalwareImage

NOISE_KINDS = ("gaussian", "poisson", "laplace")

COMBINATIONS = {
    "gaussian": ("gaussian",),
    "poisson": ("poisson",),
    "laplace": ("laplace",),
    "poisson+gaussian": ("poisson", "gaussian"),
    "poisson+laplace": ("poisson", "laplace"),
    "laplace+gaussian": ("laplace", "gaussian"),
    "all": ("poisson", "gaussian", "laplace"),
}


def format_ratio(ratio: float) -> str:
    """Shortest exact decimal for a ratio, used in file names and tags."""
    return repr(float(ratio))


@dataclass(frozen=True)
class AugmentationSpec:
    """One noise application: kind, ratio, seed, and the channels to hit."""

    kind: str
    ratio: float
    seed: int = 0
    channels: tuple[int, ...] = (0, 1, 2)

    def __post_init__(self) -> None:
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; choose from {NOISE_KINDS}")
        if not 0.0 <= self.ratio <= 1.0:
            raise ValueError(f"ratio must be in [0, 1], got {self.ratio}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        channels = tuple(sorted(set(int(c) for c in self.channels)))
        if not channels:
            raise ValueError("channels must be nonempty")
        if any(c not in (0, 1, 2) for c in channels):
            raise ValueError(f"channels must be a subset of (0, 1, 2), got {self.channels}")
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "ratio", float(self.ratio))

    @property
    def scale(self) -> float:
        """Distribution scale parameter (sigma, lambda, or b)."""
        return self.ratio * 255.0

    def tag(self) -> str:
        return f"{self.kind}_{format_ratio(self.ratio)}_{self.seed}"

    def output_id(self, source_id: str) -> str:
        return f"{source_id}__{self.tag()}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "ratio": self.ratio,
            "seed": self.seed,
            "channels": list(self.channels),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentationSpec":
        return cls(
            kind=d["kind"],
            ratio=float(d["ratio"]),
            seed=int(d.get("seed", 0)),
            channels=tuple(d.get("channels", (0, 1, 2))),
        )


@dataclass(frozen=True)
class AugmentationPlan:
    """An ordered set of specs applied to the same original dataset."""

    specs: tuple[AugmentationSpec, ...]
    include_original: bool = True

    def __post_init__(self) -> None:
        specs = tuple(self.specs)
        if len(specs) < 1:
            raise ValueError("plan needs at least one spec")
        keys = [(s.kind, s.ratio, s.seed) for s in specs]
        if len(set(keys)) != len(keys):
            raise ValueError(f"plan specs must be distinct as (kind, ratio, seed), got {keys}")
        object.__setattr__(self, "specs", specs)

    def __len__(self) -> int:
        return len(self.specs)


def rng_for(seed: int, source_id: str) -> np.random.Generator:
    """Per-image RNG stream derived from (seed, source_id).

    Hashing the id into the seed material makes the stream a pure function
    of the pair, independent of processing order or worker count.
    """
    digest = hashlib.sha256(source_id.encode("utf-8")).digest()
    words = [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]
    return np.random.default_rng(np.random.SeedSequence([seed, *words]))


def sample_gaussian(ratio: float, rng: np.random.Generator, size=None):
    """Zero-mean normal draws with standard deviation ratio * 255."""
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"ratio must be in [0, 1], got {ratio}")
    if ratio == 0.0:
        return 0.0 if size is None else np.zeros(size)
    return rng.normal(0.0, ratio * 255.0, size)


def sample_poisson(ratio: float, rng: np.random.Generator, size=None):
    """Poisson draws with lambda = ratio * 255, applied raw (never negative)."""
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"ratio must be in [0, 1], got {ratio}")
    if ratio == 0.0:
        return 0 if size is None else np.zeros(size, dtype=np.int64)
    return rng.poisson(ratio * 255.0, size)


def sample_laplace(ratio: float, rng: np.random.Generator, size=None):
    """Laplace draws with location 0 and scale b = ratio * 255."""
    if not 0.0 <= ratio <= 1.0:
        raise ValueError(f"ratio must be in [0, 1], got {ratio}")
    if ratio == 0.0:
        return 0.0 if size is None else np.zeros(size)
    return rng.laplace(0.0, ratio * 255.0, size)


_SAMPLERS = {
    "gaussian": sample_gaussian,
    "poisson": sample_poisson,
    "laplace": sample_laplace,
}


def apply_noise(image: MalwareImage, spec: AugmentationSpec) -> MalwareImage:
    """Produce the noised copy of one image.

    Adds an independent draw per pixel on each selected channel, rounds
    half-up, and clamps to [0, 255]. Same (image, spec) in, byte-identical
    pixels out.
    """
    rng = rng_for(spec.seed, image.source_id)
    h, w = image.pixels.shape[:2]
    noise = _SAMPLERS[spec.kind](spec.ratio, rng, (h, w, len(spec.channels)))
    arr = image.pixels.astype(np.float64)
    arr[:, :, list(spec.channels)] += noise
    out = np.clip(np.floor(arr + 0.5), 0.0, 255.0).astype(np.uint8)
    return MalwareImage(pixels=out, source_id=image.source_id, lineage=spec)


def enhance(images, plan: AugmentationPlan) -> list[MalwareImage]:
    """Union of the originals with one noised copy per plan spec.

    Every spec is applied to the original set (not to the accumulating
    output), so the result has exactly (t + 1) * n images when originals
    are included. Labels ride along implicitly: each output keeps its
    source_id, which is what manifests map to a family. Output order is by
    output_id, independent of input order or scheduling.
    """
    images = list(images)
    if not images:
        raise ValueError("enhance needs a nonempty dataset")
    out: list[MalwareImage] = list(images) if plan.include_original else []
    for spec in plan.specs:
        for img in images:
            out.append(apply_noise(img, spec))
    ids = [img.output_id() for img in out]
    if len(set(ids)) != len(ids):
        seen, dupes = set(), set()
        for i in ids:
            (dupes if i in seen else seen).add(i)
        raise ValueError(f"colliding output identifiers: {sorted(dupes)}")
    out.sort(key=lambda img: img.output_id())
    return out
