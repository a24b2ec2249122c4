"""Corpus ingestion: binaries on disk plus an external label file.

The label file is a plain UTF-8 CSV with a required ``id,label`` header;
ids are file paths relative to the corpus root. Labeling itself (antivirus
scans, sandboxes) happens upstream; this module only ingests the result.
"""

from __future__ import annotations

import csv
import sys
from dataclasses import dataclass
from pathlib import Path

DEFAULT_MAX_SIZE = 32 * 1024 * 1024  # bytes; bounds image dims and memory


@dataclass(frozen=True)
class SampleRecord:
    """One labeled input binary."""

    id: str
    payload: bytes
    label: str
    size_bytes: int

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("record id must be nonempty")
        if len(self.payload) != self.size_bytes:
            raise ValueError(
                f"record {self.id!r}: payload length {len(self.payload)} "
                f"!= size_bytes {self.size_bytes}"
            )
        if self.size_bytes < 1:
            raise ValueError(f"record {self.id!r}: payload must be at least 1 byte")
        if not self.label:
            raise ValueError(f"record {self.id!r}: label must be nonempty")


class ClassSet:
    """Ordered set of family names; the order fixes confusion-matrix axes."""

    def __init__(self, names):
        names = tuple(names)
        if len(names) < 2:
            raise ValueError(f"need at least 2 classes, got {len(names)}")
        if any(not n for n in names):
            raise ValueError("class names must be nonempty")
        if len(set(names)) != len(names):
            raise ValueError(f"class names must be distinct, got {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown class {name!r}; classes are {list(self.names)}") from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassSet) and self.names == other.names

    def __repr__(self) -> str:
        return f"ClassSet({list(self.names)})"


def read_label_file(path) -> dict[str, str]:
    """Parse the id,label CSV; returns id -> label preserving nothing else."""
    path = Path(path)
    labels: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as fp:
        reader = csv.reader(fp)
        header = next(reader, None)
        if header is None or [c.strip().lower() for c in header] != ["id", "label"]:
            raise ValueError(f"{path}: expected header 'id,label', got {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
            sample_id, label = row
            if sample_id in labels:
                raise ValueError(f"{path}:{lineno}: duplicate id {sample_id!r}")
            labels[sample_id] = label
    return labels


def load_corpus(
    root_dir,
    labels,
    *,
    max_size_bytes: int = DEFAULT_MAX_SIZE,
    lenient: bool = False,
) -> tuple[list[SampleRecord], ClassSet]:
    """Load every labeled binary under root_dir into SampleRecords.

    labels may be the CSV path or an already-parsed id -> label mapping.
    Records come back sorted by id, so identical inputs always produce the
    identical corpus regardless of filesystem enumeration order. Files on
    disk that the label file does not mention are skipped and counted in a
    warning on stderr; the label file itself is exempt when it lives under
    root_dir. Per-record violations (missing, empty, oversized,
    unreadable files) raise; with lenient=True they are skipped with a
    warning instead. Duplicate ids in the label file always raise.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise NotADirectoryError(f"corpus root {root} is not a directory")
    if isinstance(labels, dict):
        label_map, label_path = dict(labels), None
    else:
        label_map, label_path = read_label_file(labels), Path(labels).resolve()

    records: list[SampleRecord] = []
    skipped: list[str] = []

    def violation(msg: str) -> None:
        if lenient:
            skipped.append(msg)
        else:
            raise ValueError(msg)

    for sample_id in sorted(label_map):
        path = (root / sample_id).resolve()
        if root.resolve() not in path.parents and path != root.resolve():
            violation(f"record {sample_id!r}: resolves outside the corpus root")
            continue
        if not path.is_file():
            violation(f"record {sample_id!r}: no such file under {root}")
            continue
        try:
            size = path.stat().st_size
            if size > max_size_bytes:
                violation(
                    f"record {sample_id!r}: {size} bytes exceeds the "
                    f"{max_size_bytes}-byte cap"
                )
                continue
            payload = path.read_bytes()
        except OSError as exc:
            violation(f"record {sample_id!r}: unreadable ({exc})")
            continue
        if len(payload) == 0:
            violation(f"record {sample_id!r}: file is empty")
            continue
        records.append(
            SampleRecord(
                id=sample_id,
                payload=payload,
                label=label_map[sample_id],
                size_bytes=len(payload),
            )
        )

    labeled_paths = {str((root / sid)) for sid in label_map}
    unlabeled = [
        p
        for p in root.rglob("*")
        if p.is_file() and str(p) not in labeled_paths and p.resolve() != label_path
    ]
    if unlabeled:
        print(
            f"binviz: skipped {len(unlabeled)} unlabeled file(s) under {root}",
            file=sys.stderr,
        )
    for msg in skipped:
        print(f"binviz: skipped {msg}", file=sys.stderr)
    if skipped:
        print(f"binviz: skipped {len(skipped)} labeled record(s)", file=sys.stderr)

    class_set = ClassSet(sorted({r.label for r in records}))
    return records, class_set
