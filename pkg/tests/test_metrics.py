import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binviz import (
    ClassSet,
    PerClassMetrics,
    PredictionSet,
    accuracy,
    averaged_metrics,
    confusion_matrix,
    per_class_metrics,
    score,
)
from oracles import metrics_oracle

AB = ClassSet(["a", "b"])
ABC = ClassSet(["a", "b", "c"])


def preds_of(rows, classes):
    return PredictionSet([(f"s{i}", t, p) for i, (t, p) in enumerate(rows)], classes)


# ------------------------------------------------------------- confusion


def test_confusion_perfect_three_class():
    rows = [("a", "a")] * 3 + [("b", "b")] * 3 + [("c", "c")] * 3
    mat = confusion_matrix(preds_of(rows, ABC))
    assert np.array_equal(mat, np.diag([3, 3, 3]))


def test_confusion_single_off_diagonal():
    mat = confusion_matrix(preds_of([("a", "b")], AB))
    assert mat[0, 1] == 1 and mat.sum() == 1


def test_confusion_row_sums_are_supports():
    rng = np.random.default_rng(0)
    names = list(ABC.names)
    rows = [(names[int(t)], names[int(p)]) for t, p in rng.integers(0, 3, (200, 2))]
    mat = confusion_matrix(preds_of(rows, ABC))
    assert mat.sum() == 200
    for i, name in enumerate(names):
        assert mat[i].sum() == sum(1 for t, _ in rows if t == name)


def test_unknown_label_names_offending_row():
    with pytest.raises(ValueError, match="s0"):
        preds_of([("a", "z")], AB)
    with pytest.raises(ValueError, match="s1"):
        preds_of([("a", "a"), ("q", "a")], AB)


def test_duplicate_sample_ids_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        PredictionSet([("x", "a", "a"), ("x", "b", "b")], AB)


# ------------------------------------------------------------- per-class


def test_precision_six_of_ten():
    # TP=6, FP=4 in the first column
    mat = np.array([[6, 0], [4, 6]])
    pc = per_class_metrics(mat)
    assert pc.precision[0] == pytest.approx(0.6)
    assert pc.recall[0] == 1.0
    assert not pc.zero_division[0]


def test_zero_division_row_is_all_zero_with_flag():
    # class b never predicted and never true-positive
    mat = np.array([[5, 0], [5, 0]])
    pc = per_class_metrics(mat)
    assert pc.precision[1] == pc.recall[1] == pc.f1[1] == 0.0
    assert pc.zero_division[1]


def test_perfect_diagonal_all_ones():
    pc = per_class_metrics(np.diag([4, 2, 9]))
    assert (pc.precision == 1.0).all()
    assert (pc.recall == 1.0).all()
    assert (pc.f1 == 1.0).all()
    assert not pc.zero_division.any()


# ------------------------------------------------------------- averages


def test_weighted_average_equal_supports():
    pc = PerClassMetrics(
        precision=np.array([1.0, 0.5]),
        recall=np.array([1.0, 0.5]),
        f1=np.array([1.0, 0.5]),
        support=np.array([10, 10]),
        zero_division=np.zeros(2, dtype=bool),
    )
    ap, ar, f1 = averaged_metrics(pc, "weighted")
    assert ap == pytest.approx(0.75)
    assert ar == pytest.approx(0.75)


def test_literal_average_can_exceed_one():
    pc = PerClassMetrics(
        precision=np.array([1.0, 0.5]),
        recall=np.array([1.0, 0.5]),
        f1=np.array([1.0, 0.5]),
        support=np.array([10, 10]),
        zero_division=np.zeros(2, dtype=bool),
    )
    ap, _, _ = averaged_metrics(pc, "paper-literal")
    assert ap == pytest.approx(7.5)


def test_f1_harmonic_of_equal_averages():
    pc = PerClassMetrics(
        precision=np.array([0.8, 0.8]),
        recall=np.array([0.8, 0.8]),
        f1=np.array([0.8, 0.8]),
        support=np.array([5, 5]),
        zero_division=np.zeros(2, dtype=bool),
    )
    ap, ar, f1 = averaged_metrics(pc, "weighted")
    assert f1 == pytest.approx(0.8)


def test_bad_mode_rejected():
    pc = per_class_metrics(np.diag([1, 1]))
    with pytest.raises(ValueError):
        averaged_metrics(pc, "macro")


# ------------------------------------------------------------- accuracy


def test_accuracy_cases():
    assert accuracy(np.diag([5, 5])) == 1.0
    assert accuracy(np.array([[0, 3], [3, 0]])) == 0.0
    mat = np.array([[83, 17], [0, 0]])
    assert accuracy(mat) == 0.83
    with pytest.raises(ValueError):
        accuracy(np.zeros((2, 2), dtype=int))


# ------------------------------------------------------------- oracle


@given(
    k=st.integers(min_value=2, max_value=5),
    n=st.integers(min_value=1, max_value=120),
    seed=st.integers(min_value=0, max_value=2**31),
)
@settings(max_examples=60, deadline=None)
def test_score_matches_recount_oracle(k, n, seed):
    rng = np.random.default_rng(seed)
    names = [f"c{i}" for i in range(k)]
    rows = [
        (f"s{i}", names[int(t)], names[int(p)])
        for i, (t, p) in enumerate(rng.integers(0, k, (n, 2)))
    ]
    preds = PredictionSet(rows, ClassSet(names))
    want = metrics_oracle(rows, names)

    for mode in ("weighted", "paper-literal"):
        rep = score(preds, mode=mode)
        assert np.array_equal(rep.confusion, np.array(want["confusion"]))
        assert np.allclose(rep.per_class.precision, want["precision"], atol=0, rtol=0)
        assert np.allclose(rep.per_class.recall, want["recall"], atol=0, rtol=0)
        assert np.allclose(rep.per_class.f1, want["f1"], atol=0, rtol=0)
        assert np.array_equal(rep.per_class.zero_division, np.array(want["flags"]))
        assert rep.accuracy == want["accuracy"]
        assert (rep.avg_precision, rep.avg_recall, rep.f1) == want[mode]


@given(
    k=st.integers(min_value=2, max_value=4),
    n=st.integers(min_value=1, max_value=60),
    seed=st.integers(min_value=0, max_value=2**31),
)
@settings(max_examples=40, deadline=None)
def test_weighted_metrics_bounded(k, n, seed):
    rng = np.random.default_rng(seed)
    names = [f"c{i}" for i in range(k)]
    rows = [
        (f"s{i}", names[int(t)], names[int(p)])
        for i, (t, p) in enumerate(rng.integers(0, k, (n, 2)))
    ]
    rep = score(PredictionSet(rows, ClassSet(names)))
    for v in (rep.avg_precision, rep.avg_recall, rep.f1, rep.accuracy):
        assert 0.0 <= v <= 1.0
    # harmonic mean never exceeds either input
    pc = rep.per_class
    assert (pc.f1 <= np.maximum(pc.precision, pc.recall) + 1e-12).all()


# ------------------------------------------------------------- report io


def test_report_render_and_json(tmp_path):
    rows = [("a", "a"), ("a", "b"), ("b", "b"), ("b", "b")]
    rep = score(preds_of(rows, AB))
    text = rep.render_text()
    assert "accuracy" in text and "a" in text
    out = tmp_path / "report.json"
    rep.write_json(out)
    import json

    d = json.loads(out.read_text())
    assert d["accuracy"] == 0.75
    assert d["classes"] == ["a", "b"]
    assert d["averaging_mode"] == "weighted"
    assert set(d["per_class"]["a"]) == {
        "precision", "recall", "f1", "support", "zero_division",
    }


def test_read_csv_validates(tmp_path):
    f = tmp_path / "p.csv"
    f.write_text("sample_id,true_label,predicted_label\ns1,a,b\ns2,b,b\n")
    ps = PredictionSet.read_csv(f, AB)
    assert len(ps) == 2

    f.write_text("id,true,pred\ns1,a,b\n")
    with pytest.raises(ValueError, match="header"):
        PredictionSet.read_csv(f, AB)

    f.write_text("sample_id,true_label,predicted_label\ns1,a\n")
    with pytest.raises(ValueError, match="3 columns"):
        PredictionSet.read_csv(f, AB)
