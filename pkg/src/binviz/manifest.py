"""Dataset manifest: the on-disk ledger of every image in a dataset.

UTF-8 JSON lines. The first line is a meta record carrying the manifest
version, an echo of the conversion config, and the class set; every
following line is one image entry with the fixed fields
path, source_id, label, lineage, width, height. Paths are POSIX-style and
relative to the manifest's own directory. Writing is deterministic, so
write -> read -> write round-trips byte-identically.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .augmentation import AugmentationSpec
from .corpus import ClassSet

MANIFEST_VERSION = "binviz/1"


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    source_id: str
    label: str
    lineage: Union[str, AugmentationSpec]
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.lineage != "original" and not isinstance(self.lineage, AugmentationSpec):
            raise ValueError(
                f"entry {self.path!r}: lineage must be 'original' or an "
                f"AugmentationSpec, got {self.lineage!r}"
            )

    @property
    def is_original(self) -> bool:
        return self.lineage == "original"

    def to_json_line(self) -> str:
        lineage = "original" if self.is_original else self.lineage.to_dict()
        obj = {
            "path": self.path,
            "source_id": self.source_id,
            "label": self.label,
            "lineage": lineage,
            "width": self.width,
            "height": self.height,
        }
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ManifestEntry":
        lineage = obj["lineage"]
        if lineage != "original":
            lineage = AugmentationSpec.from_dict(lineage)
        return cls(
            path=obj["path"],
            source_id=obj["source_id"],
            label=obj["label"],
            lineage=lineage,
            width=int(obj["width"]),
            height=int(obj["height"]),
        )


class DatasetManifest:
    """Ordered image entries plus the metadata needed to interpret them."""

    def __init__(self, classes: ClassSet, entries, conversion: dict | None = None,
                 version: str = MANIFEST_VERSION):
        self.version = version
        self.conversion = dict(conversion) if conversion else {}
        self.classes = classes
        self.entries: list[ManifestEntry] = list(entries)
        paths = [e.path for e in self.entries]
        if len(set(paths)) != len(paths):
            dupes = sorted(p for p, n in Counter(paths).items() if n > 1)
            raise ValueError(f"manifest paths must be unique; duplicates: {dupes}")
        for e in self.entries:
            if e.label not in self.classes:
                raise ValueError(
                    f"entry {e.path!r}: label {e.label!r} not in class set"
                )

    def __len__(self) -> int:
        return len(self.entries)

    def originals(self) -> list[ManifestEntry]:
        return [e for e in self.entries if e.is_original]

    def class_histogram(self, originals_only: bool = False) -> dict[str, int]:
        entries = self.originals() if originals_only else self.entries
        hist = {name: 0 for name in self.classes.names}
        for e in entries:
            hist[e.label] += 1
        return hist

    def write(self, path) -> None:
        path = Path(path)
        meta = {
            "version": self.version,
            "conversion": self.conversion,
            "classes": list(self.classes.names),
        }
        lines = [json.dumps(meta, separators=(",", ":"))]
        lines.extend(e.to_json_line() for e in self.entries)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def read(cls, path) -> "DatasetManifest":
        path = Path(path)
        with open(path, encoding="utf-8") as fp:
            lines = [line for line in fp.read().splitlines() if line.strip()]
        if not lines:
            raise ValueError(f"{path}: empty manifest")
        meta = json.loads(lines[0])
        if "version" not in meta:
            raise ValueError(f"{path}: first line must be the meta record")
        entries = [ManifestEntry.from_json_obj(json.loads(line)) for line in lines[1:]]
        return cls(
            classes=ClassSet(meta["classes"]),
            entries=entries,
            conversion=meta.get("conversion"),
            version=meta["version"],
        )
