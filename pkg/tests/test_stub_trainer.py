import subprocess
import sys

from binviz import ConversionConfig, PredictionSet, convert_corpus, score, split_manifest
from binviz.stub_trainer import majority_label
from binviz.synthetic import generate_records


def test_majority_fraction_identity(tmp_path):
    """Stub accuracy equals the majority class share of the test set."""
    records, classes = generate_records(per_class=4, seed=8)
    cfg = ConversionConfig(width=16, entropy_window=16, resize_to=None)
    manifest = convert_corpus(records, classes, cfg, tmp_path / "img")
    train, test = split_manifest(manifest, 0.75, seed=0)
    # manifests sit next to the images so entry paths resolve as written
    train_file = tmp_path / "img" / "train.jsonl"
    test_file = tmp_path / "img" / "test.jsonl"
    train.write(train_file)
    test.write(test_file)

    out = tmp_path / "preds.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "binviz.stub_trainer",
         "--train", str(train_file), "--test", str(test_file), "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr

    preds = PredictionSet.read_csv(out, classes)
    assert len(preds) == len(test.entries)
    label = majority_label(train)
    share = sum(1 for e in test.entries if e.label == label) / len(test.entries)
    assert score(preds).accuracy == share


def test_majority_tie_breaks_lexicographically(tmp_path):
    records, classes = generate_records(per_class=2, seed=1)
    cfg = ConversionConfig(width=16, entropy_window=16, resize_to=None)
    manifest = convert_corpus(records, classes, cfg, tmp_path / "img")
    assert majority_label(manifest) == "looped_code"


def test_stub_trainer_bad_manifest_exits_nonzero(tmp_path):
    missing = tmp_path / "none.jsonl"
    proc = subprocess.run(
        [sys.executable, "-m", "binviz.stub_trainer",
         "--train", str(missing), "--test", str(missing), "--out",
         str(tmp_path / "p.csv")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    assert "none.jsonl" in proc.stderr
