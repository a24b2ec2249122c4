import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binviz import (
    MANIFEST_VERSION,
    AugmentationSpec,
    ClassSet,
    ConversionConfig,
    DatasetManifest,
    ManifestEntry,
)

CLASSES = ClassSet(["fam_a", "fam_b"])


def entry(path, source_id=None, label="fam_a", lineage="original", w=16, h=16):
    return ManifestEntry(
        path=path,
        source_id=source_id or path.split("__")[0],
        label=label,
        lineage=lineage,
        width=w,
        height=h,
    )


def manifest_with(entries):
    return DatasetManifest(
        classes=CLASSES, entries=entries, conversion=ConversionConfig().to_dict()
    )


def test_entry_json_field_order():
    line = entry("x__orig.png").to_json_line()
    obj = json.loads(line)
    assert list(obj) == ["path", "source_id", "label", "lineage", "width", "height"]
    assert " " not in line  # compact separators


def test_augmented_lineage_round_trips():
    spec = AugmentationSpec(kind="laplace", ratio=0.6, seed=9, channels=(0, 2))
    e = entry("x__laplace_0.6_9.png", source_id="x", lineage=spec)
    assert not e.is_original
    back = ManifestEntry.from_json_obj(json.loads(e.to_json_line()))
    assert back.lineage == spec
    assert back == e


def test_write_read_write_byte_identical(tmp_path):
    spec = AugmentationSpec(kind="gaussian", ratio=0.2, seed=1)
    m = manifest_with(
        [
            entry("a__orig.png"),
            entry("a__gaussian_0.2_1.png", source_id="a", lineage=spec),
            entry("b__orig.png", label="fam_b"),
        ]
    )
    p1 = tmp_path / "m1.jsonl"
    p2 = tmp_path / "m2.jsonl"
    m.write(p1)
    DatasetManifest.read(p1).write(p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_meta_line_first_with_version(tmp_path):
    m = manifest_with([entry("a__orig.png"), entry("b__orig.png", label="fam_b")])
    path = tmp_path / "m.jsonl"
    m.write(path)
    first = json.loads(path.read_text().splitlines()[0])
    assert first["version"] == MANIFEST_VERSION
    assert first["classes"] == ["fam_a", "fam_b"]
    assert first["conversion"]["width"] == 256


def test_duplicate_paths_rejected():
    with pytest.raises(ValueError, match="a__orig.png"):
        manifest_with([entry("a__orig.png"), entry("a__orig.png")])


def test_label_outside_class_set_rejected():
    with pytest.raises(ValueError):
        manifest_with([entry("a__orig.png", label="mystery")])


def test_originals_and_histogram():
    spec = AugmentationSpec(kind="poisson", ratio=0.4, seed=2)
    m = manifest_with(
        [
            entry("a__orig.png"),
            entry("b__orig.png", label="fam_b"),
            entry("a__poisson_0.4_2.png", source_id="a", lineage=spec),
        ]
    )
    assert [e.path for e in m.originals()] == ["a__orig.png", "b__orig.png"]
    assert m.class_histogram() == {"fam_a": 2, "fam_b": 1}
    assert m.class_histogram(originals_only=True) == {"fam_a": 1, "fam_b": 1}


def test_read_rejects_missing_meta(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text(entry("a__orig.png").to_json_line() + "\n")
    with pytest.raises(ValueError, match="meta"):
        DatasetManifest.read(path)


ratio_st = st.sampled_from([0.0, 0.01, 0.2, 0.4, 0.6, 0.8, 1.0])


@given(
    n=st.integers(min_value=1, max_value=12),
    seeds=st.lists(st.integers(min_value=0, max_value=2**63), min_size=1, max_size=3),
    ratio=ratio_st,
    data=st.data(),
)
@settings(max_examples=30, deadline=None)
def test_round_trip_property(tmp_path_factory, n, seeds, ratio, data):
    """write -> read -> write is byte-identical for generated manifests."""
    tmp = tmp_path_factory.mktemp("m")
    entries = []
    for i in range(n):
        entries.append(entry(f"s{i:02d}__orig.png", label="fam_a" if i % 2 else "fam_b"))
        for k, seed in enumerate(seeds):
            kind = ("gaussian", "poisson", "laplace")[k % 3]
            spec = AugmentationSpec(kind=kind, ratio=ratio, seed=seed)
            entries.append(
                entry(
                    f"s{i:02d}__{spec.tag()}.png",
                    source_id=f"s{i:02d}",
                    label="fam_a" if i % 2 else "fam_b",
                    lineage=spec,
                )
            )
    m = manifest_with(entries)
    p1 = tmp / "a.jsonl"
    p2 = tmp / "b.jsonl"
    m.write(p1)
    DatasetManifest.read(p1).write(p2)
    assert p1.read_bytes() == p2.read_bytes()
