import math
import random

import numpy as np
import pytest

from trendhedge.rates import RatePath
from trendhedge.series import DAILY, PriceSeries, SynthSpec, generate


def smooth_underlying(n=300, s0=100.0, drift=0.1, seed=None):
    """Noiseless exponential underlying (vol = 0)."""
    return generate(SynthSpec(n=n, s0=s0, drift=drift, vol=0.0, seed=seed or 0))


def constructed_pair(n=300, rate=0.03, a=0.4, b=30.0, drift=0.1):
    """Underlying S and an option built as V = a*S + b*growth, so delta = a."""
    s = smooth_underlying(n, drift=drift)
    r = RatePath.constant(rate, n)
    v = PriceSeries("constructed", s.t0, a * s.values + b * r.growth(), s.dt_years)
    return s, v, r


def random_triple(seed, n=200):
    """Random noisy (V, S, r) triple with a time-varying rate path."""
    rng = random.Random(seed)
    s = generate(SynthSpec(n=n, s0=rng.uniform(20, 5000), drift=rng.uniform(-0.3, 0.5),
                           vol=rng.uniform(0.05, 0.5), seed=seed))
    v = generate(SynthSpec(n=n, s0=rng.uniform(1, 300), drift=rng.uniform(-0.5, 0.5),
                           vol=rng.uniform(0.1, 0.8), seed=seed + 10_000))
    base = rng.uniform(-0.01, 0.06)
    rates = base + 0.01 * np.sin(np.arange(n) / rng.uniform(10, 60))
    return v, s, RatePath(rates, DAILY)


def jump_case(seed, vol=0.1, n=300):
    """Noisy underlying with one +/-10% jump at a seeded index >= 50."""
    rng = random.Random(seed)
    idx = rng.randint(50, n - 51)
    size = 0.1 if rng.random() < 0.5 else -0.1
    s = generate(SynthSpec(n=n, s0=3500.0, drift=0.05, vol=vol, jumps=((idx, size),), seed=seed))
    return s, idx, size


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def rel(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b)))


def closeness(a, b):
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)


ACCEPTANCE: list[tuple[str, bool, str]] = []


def record(name, ok, detail):
    """Log one acceptance line; printed again in the terminal summary."""
    ACCEPTANCE.append((name, bool(ok), detail))
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
