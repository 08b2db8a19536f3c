import datetime as dt
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from trendhedge.series import (DAILY, PriceSeries, SeriesFormatError, SplitMix64, SynthSpec,
                               generate, load_csv, read_table, write_csv, write_table)


def splitmix_oracle(seed, n, s0, drift, vol, jumps, dt_years=DAILY):
    """Vectorized restatement of the generator recurrence (independent code path)."""
    with np.errstate(over="ignore"):
        k = np.arange(1, 2 * n + 1, dtype=np.uint64)
        z = np.uint64(seed) + k * np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    u = ((z >> np.uint64(11)).astype(np.float64) + 1) * 2.0**-53
    rho = np.sqrt(-2 * np.log(u[0::2]))
    theta = 2 * np.pi * u[1::2]
    normals = np.empty(n * 2)
    normals[0::2] = rho * np.cos(theta)
    normals[1::2] = rho * np.sin(theta)
    mult = np.exp((drift - vol**2 / 2) * dt_years + vol * math.sqrt(dt_years) * normals[:n - 1])
    for i, size in jumps:
        mult[i - 1] *= 1 + size
    return s0 * np.concatenate([[1.0], np.cumprod(mult)])


def test_splitmix_reference_vector():
    rng = SplitMix64(1234567)
    assert [rng.next_u64() for _ in range(5)] == [
        6457827717110365317, 3203168211198807973, 9817491932198370423,
        4593380528125082431, 16408922859458223821]


def test_generate_constant():
    s = generate(SynthSpec(n=50, s0=3500.0, seed=3))
    assert np.all(s.values == 3500.0)


def test_generate_deterministic_exponential():
    s = generate(SynthSpec(n=300, s0=100.0, drift=0.05, seed=9))
    k = np.arange(300)
    np.testing.assert_allclose(s.values, 100.0 * np.exp(0.05 * k * DAILY), rtol=1e-12)


def test_generate_jump_matches_oracle():
    spec = SynthSpec(n=100, s0=3500.0, drift=0.05, vol=0.2, jumps=((50, 0.1),), seed=42)
    s = generate(spec)
    expected = splitmix_oracle(42, 100, 3500.0, 0.05, 0.2, [(50, 0.1)])
    np.testing.assert_allclose(s.values, expected, rtol=1e-12)
    # frozen from the oracle
    assert s.values[50] / s.values[49] == pytest.approx(1.097035987772047, rel=1e-12)
    assert s.values[50] == pytest.approx(3777.4483168853926, rel=1e-12)
    assert s.values[99] == pytest.approx(3515.171443255269, rel=1e-12)


def test_generate_is_deterministic():
    spec = SynthSpec(n=80, s0=10.0, drift=0.1, vol=0.4, jumps=((5, -0.3),), seed=11)
    assert np.array_equal(generate(spec).values, generate(spec).values)


@pytest.mark.parametrize("kwargs", [
    dict(n=1, s0=1.0),
    dict(n=10, s0=0.0),
    dict(n=10, s0=1.0, vol=-0.1),
    dict(n=10, s0=1.0, jumps=((0, 0.1),)),
    dict(n=10, s0=1.0, jumps=((10, 0.1),)),
    dict(n=10, s0=1.0, jumps=((3, -1.0),)),
])
def test_synthspec_rejects(kwargs):
    with pytest.raises(ValueError):
        SynthSpec(**kwargs)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 120), vol=st.floats(0, 2), drift=st.floats(-2, 2),
       seed=st.integers(0, 2**64 - 1), size=st.floats(-0.99, 3))
def test_generate_positive(n, vol, drift, seed, size):
    jumps = ((n - 1, size),)
    s = generate(SynthSpec(n=n, s0=50.0, drift=drift, vol=vol, jumps=jumps, seed=seed))
    assert len(s) == n and s.values[0] == 50.0
    assert np.all(s.values > 0)


def test_load_csv_basic(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("date,value\n2009-01-02,3500.0\n2009-01-05,3520.5\n")
    s = load_csv(p)
    assert len(s) == 2
    assert list(s.values) == [3500.0, 3520.5]
    assert s.t0 == dt.date(2009, 1, 2)
    assert s.dt_years == DAILY
    assert s.label == "s"


def test_load_csv_reads_header_comments(tmp_path):
    p = tmp_path / "s.csv"
    p.write_text("# label=CAC\n# dt_years=0.01\ndate,value\n2009-01-02,1.5\n")
    s = load_csv(p)
    assert s.label == "CAC" and s.dt_years == 0.01
    assert load_csv(p, dt_years=0.5).dt_years == 0.5


@pytest.mark.parametrize("body, match", [
    ("date,value\n", "empty series"),
    ("date,value\n2009-01-02,-5\n", "line 2"),
    ("date,value\n2009-01-02,0\n", "line 2"),
    ("date,value\n2009-01-02,1\n2009-01-05,x\n", "line 3"),
    ("date,value\n2009-01-05,1\n2009-01-02,2\n", "line 3"),
    ("date,value\n2009-01-02;1\n", "line 2"),
    ("when,price\n2009-01-02,1\n", "header"),
])
def test_load_csv_errors(tmp_path, body, match):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(SeriesFormatError, match=match):
        load_csv(p)


def test_load_csv_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_csv(tmp_path / "nope.csv")


def test_round_trip(tmp_path):
    s = generate(SynthSpec(n=120, s0=3500.0, drift=0.02, vol=0.3, seed=5, label="CAC-like",
                           dt_years=1 / 365))
    p = tmp_path / "s.csv"
    write_csv(s, p)
    back = load_csv(p)
    np.testing.assert_allclose(back.values, s.values, rtol=1e-12)
    assert back.label == "CAC-like"
    assert back.dt_years == s.dt_years
    raw = p.read_bytes()
    assert b"\r\n" not in raw
    assert raw.splitlines()[2] == b"date,value"


def test_round_trip_then_garbage(tmp_path):
    s = generate(SynthSpec(n=10, s0=1.0, seed=1))
    p = tmp_path / "s.csv"
    write_csv(s, p)
    with p.open("a") as fh:
        fh.write("garbage\n")
    with pytest.raises(SeriesFormatError, match="line 14"):
        load_csv(p)


def test_price_series_invariants():
    with pytest.raises(ValueError):
        PriceSeries("x", dt.date(2009, 1, 2), np.array([]))
    with pytest.raises(ValueError):
        PriceSeries("x", dt.date(2009, 1, 2), np.array([1.0, -1.0]))
    with pytest.raises(ValueError):
        PriceSeries("x", dt.date(2009, 1, 2), np.array([1.0]), dt_years=0.0)
    s = PriceSeries("x", dt.date(2009, 1, 2), [1.0, 2.0])
    with pytest.raises(ValueError):
        s.values[0] = 3.0


def test_dates_skip_weekends():
    s = PriceSeries("x", dt.date(2009, 1, 2), np.ones(3))
    assert s.dates() == [dt.date(2009, 1, 2), dt.date(2009, 1, 5), dt.date(2009, 1, 6)]


def test_table_round_trip(tmp_path):
    p = tmp_path / "t.csv"
    write_table(p, {"index": [0, 1], "direction": ["up", "down"], "score": [3.5, 1 / 3]})
    t = read_table(p)
    assert list(t) == ["index", "direction", "score"]
    assert t["index"].tolist() == [0, 1]
    assert t["direction"].tolist() == ["up", "down"]
    assert t["score"][1] == 1 / 3
    with pytest.raises(ValueError):
        write_table(p, {"a": [1], "b": [1, 2]})
