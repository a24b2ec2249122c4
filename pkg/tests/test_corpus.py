import pytest

from binviz import ClassSet, SampleRecord, load_corpus, read_label_file
from binviz.corpus import DEFAULT_MAX_SIZE


def test_sample_record_validates_size():
    r = SampleRecord(id="a", payload=b"xyz", label="fam", size_bytes=3)
    assert r.size_bytes == 3
    with pytest.raises(ValueError):
        SampleRecord(id="a", payload=b"xyz", label="fam", size_bytes=4)
    with pytest.raises(ValueError):
        SampleRecord(id="a", payload=b"", label="fam", size_bytes=0)


def test_class_set_requires_two_distinct():
    cs = ClassSet(["b", "a"])
    assert cs.names == ("b", "a")
    assert cs.index("a") == 1
    assert "a" in cs and "z" not in cs
    with pytest.raises(ValueError):
        ClassSet(["only"])
    with pytest.raises(ValueError):
        ClassSet(["a", "a"])


def test_read_label_file_header_and_duplicates(tmp_path):
    f = tmp_path / "labels.csv"
    f.write_text("id,label\nx.bin,fam1\ny.bin,fam2\n")
    assert read_label_file(f) == {"x.bin": "fam1", "y.bin": "fam2"}

    f.write_text("sample,family\nx.bin,fam1\n")
    with pytest.raises(ValueError, match="header"):
        read_label_file(f)

    f.write_text("id,label\nx.bin,fam1\nx.bin,fam2\n")
    with pytest.raises(ValueError, match="duplicate"):
        read_label_file(f)


def test_load_corpus_basic(corpus_dir):
    """3 classes x 3 files load sorted by id with the right class set."""
    root, labels = corpus_dir
    records, classes = load_corpus(root, labels)
    assert len(records) == 9
    assert [r.id for r in records] == sorted(r.id for r in records)
    assert classes == ClassSet(["alpha", "beta", "gamma"])
    for r in records:
        assert r.size_bytes == len(r.payload) > 0


def test_load_corpus_is_deterministic(corpus_dir):
    root, labels = corpus_dir
    a, _ = load_corpus(root, labels)
    b, _ = load_corpus(root, labels)
    assert a == b


def test_missing_file_errors_with_id(tmp_path):
    root = tmp_path / "c"
    root.mkdir()
    (root / "there.bin").write_bytes(b"\x01")
    labels = tmp_path / "l.csv"
    labels.write_text("id,label\nthere.bin,a\ngone.bin,b\n")
    with pytest.raises(ValueError, match="gone.bin"):
        load_corpus(root, labels)


def test_unlabeled_files_skipped_with_warning(tmp_path, capsys):
    root = tmp_path / "c"
    root.mkdir()
    for name in ("a.bin", "b.bin", "extra1.bin", "extra2.bin"):
        (root / name).write_bytes(b"\x01\x02")
    labels = tmp_path / "l.csv"
    labels.write_text("id,label\na.bin,x\nb.bin,y\n")
    records, _ = load_corpus(root, labels)
    assert len(records) == 2
    err = capsys.readouterr().err
    assert "2 unlabeled" in err


def test_label_file_inside_root_not_counted_unlabeled(tmp_path, capsys):
    root = tmp_path / "c"
    root.mkdir()
    (root / "a.bin").write_bytes(b"\x01")
    (root / "b.bin").write_bytes(b"\x02")
    labels = root / "labels.csv"
    labels.write_text("id,label\na.bin,x\nb.bin,y\n")
    records, _ = load_corpus(root, labels)
    assert len(records) == 2
    assert "unlabeled" not in capsys.readouterr().err


def test_empty_file_rejected_strict_skipped_lenient(tmp_path, capsys):
    root = tmp_path / "c"
    root.mkdir()
    (root / "ok.bin").write_bytes(b"\x01")
    (root / "ok2.bin").write_bytes(b"\x02")
    (root / "empty.bin").write_bytes(b"")
    labels = tmp_path / "l.csv"
    labels.write_text("id,label\nok.bin,x\nok2.bin,y\nempty.bin,x\n")
    with pytest.raises(ValueError, match="empty.bin"):
        load_corpus(root, labels)
    records, classes = load_corpus(root, labels, lenient=True)
    assert [r.id for r in records] == ["ok.bin", "ok2.bin"]
    assert "empty.bin" in capsys.readouterr().err


def test_size_cap(tmp_path):
    root = tmp_path / "c"
    root.mkdir()
    (root / "big.bin").write_bytes(b"\x00" * 2048)
    (root / "small.bin").write_bytes(b"\x00" * 10)
    labels = tmp_path / "l.csv"
    labels.write_text("id,label\nbig.bin,x\nsmall.bin,y\n")
    with pytest.raises(ValueError, match="big.bin"):
        load_corpus(root, labels, max_size_bytes=1024)
    assert DEFAULT_MAX_SIZE == 32 * 1024 * 1024


def test_path_escape_rejected(tmp_path):
    root = tmp_path / "c"
    root.mkdir()
    (root / "in.bin").write_bytes(b"\x01")
    (tmp_path / "outside.bin").write_bytes(b"\x02")
    labels = tmp_path / "l.csv"
    labels.write_text("id,label\nin.bin,x\n../outside.bin,y\n")
    with pytest.raises(ValueError, match="outside"):
        load_corpus(root, labels)


def test_single_class_corpus_rejected(tmp_path):
    root = tmp_path / "c"
    root.mkdir()
    (root / "a.bin").write_bytes(b"\x01")
    (root / "b.bin").write_bytes(b"\x02")
    labels = tmp_path / "l.csv"
    labels.write_text("id,label\na.bin,same\nb.bin,same\n")
    with pytest.raises(ValueError):
        load_corpus(root, labels)
