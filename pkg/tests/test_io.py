import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from jmd import io
from jmd.config import Signal


@given(arrays(float, st.tuples(st.integers(1, 20), st.integers(1, 4)),
              elements=st.floats(allow_nan=False, allow_infinity=False, width=64)))
def test_table_round_trip_exact(tmp_path_factory, data):
    p = tmp_path_factory.mktemp("t") / "x.csv"
    io.write_table(p, data, [f"c{i}" for i in range(data.shape[1])])
    header, back = io.read_table(p)
    assert header == [f"c{i}" for i in range(data.shape[1])]
    np.testing.assert_array_equal(back, data)


def test_signal_with_time_header(tmp_path):
    sig = Signal(np.random.default_rng(0).standard_normal((2, 50)), 250.0, ("a", "b"))
    io.write_signal(tmp_path / "s.csv", sig)
    back = io.read_signal(tmp_path / "s.csv")
    assert back.labels == ("a", "b")
    assert back.sample_rate == pytest.approx(250.0)
    np.testing.assert_array_equal(back.samples, sig.samples)


def test_headerless_time_detection(tmp_path):
    t = np.arange(20) * 0.01
    x = np.sin(t)
    np.savetxt(tmp_path / "a.csv", np.column_stack([t, x]), delimiter=",")
    sig = io.read_signal(tmp_path / "a.csv")
    assert sig.n_channels == 1 and sig.sample_rate == pytest.approx(100.0)
    np.savetxt(tmp_path / "b.csv", np.column_stack([x, x[::-1]]), delimiter=",")
    sig = io.read_signal(tmp_path / "b.csv")
    assert sig.n_channels == 2 and sig.sample_rate == 20.0


def test_single_column_defaults_to_unit_duration(tmp_path):
    np.savetxt(tmp_path / "a.csv", np.arange(8.0))
    sig = io.read_signal(tmp_path / "a.csv")
    assert sig.n_channels == 1 and sig.sample_rate == 8.0
    assert io.read_signal(tmp_path / "a.csv", sample_rate=3.0).sample_rate == 3.0


@pytest.mark.parametrize("text", ["a,b\n1,2\n3\n", "a\n1\nx\n", ""])
def test_malformed(tmp_path, text):
    p = tmp_path / "bad.csv"
    p.write_text(text)
    with pytest.raises(io.FileFormatError):
        io.read_signal(p)


def test_missing_file(tmp_path):
    with pytest.raises(io.FileFormatError, match="nope.csv"):
        io.read_signal(tmp_path / "nope.csv")


def test_keyvalue_round_trip(tmp_path):
    items = {"k": 3, "alpha": 5000.0, "seed": None, "flag": True, "name": "x y"}
    io.write_keyvalue(tmp_path / "m.txt", items)
    back = io.read_keyvalue(tmp_path / "m.txt")
    assert back == {"k": "3", "alpha": "5000.0", "seed": "", "flag": "true", "name": "x y"}
    (tmp_path / "c.txt").write_text("# comment\n\nbeta = 0.1\n")
    assert io.read_keyvalue(tmp_path / "c.txt") == {"beta": "0.1"}
    (tmp_path / "bad.txt").write_text("novalue\n")
    with pytest.raises(io.FileFormatError):
        io.read_keyvalue(tmp_path / "bad.txt")
