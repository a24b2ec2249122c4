import numpy as np
import pytest

from binviz import ConversionConfig


@pytest.fixture
def small_cfg():
    """Tiny native-resolution config so pipeline tests stay fast."""
    return ConversionConfig(width=16, entropy_window=16, resize_to=None)


@pytest.fixture
def corpus_dir(tmp_path):
    """Write a 3-class, 9-file corpus; returns (root, labels_path)."""
    rng = np.random.default_rng(7)
    root = tmp_path / "corpus"
    root.mkdir()
    rows = ["id,label"]
    for cls, maker in (
        ("alpha", lambda n: rng.integers(0, 256, n).astype(np.uint8).tobytes()),
        ("beta", lambda n: bytes([7] * n)),
        ("gamma", lambda n: bytes(range(256))[: n % 256 or 1] * (n // 256 + 1)),
    ):
        for i in range(3):
            name = f"{cls}_{i}.bin"
            (root / name).write_bytes(maker(64 + 32 * i))
            rows.append(f"{name},{cls}")
    labels = tmp_path / "labels.csv"
    labels.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return root, labels
