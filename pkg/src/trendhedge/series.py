"""Price series container, CSV I/O and a seeded synthetic generator.

The generator is deliberately self-contained so that its output does not
depend on the numpy version: uniforms come from SplitMix64 and normals from
the Box-Muller transform.

SplitMix64 (state ``s``, all arithmetic mod 2**64)::

    s += 0x9E3779B97F4A7C15
    z = s
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

A uniform in (0, 1] is ``((x >> 11) + 1) * 2**-53``.  Normals are drawn in
pairs: with uniforms ``u1, u2`` (in that order), ``rho = sqrt(-2 ln u1)``
and ``theta = 2 pi u2`` give ``rho cos(theta)`` then ``rho sin(theta)``.
"""

from __future__ import annotations

import datetime as dt
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DAILY = 1.0 / 252.0

_MASK64 = (1 << 64) - 1
_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


class SeriesFormatError(ValueError):
    """Raised when a CSV file does not follow the ``date,value`` schema."""


@dataclass(frozen=True)
class PriceSeries:
    """Uniformly sampled, strictly positive observations of one instrument."""

    label: str
    t0: dt.date
    values: np.ndarray
    dt_years: float = DAILY

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("empty series")
        if not np.all(np.isfinite(values)) or np.any(values <= 0):
            raise ValueError("prices must be finite and strictly positive")
        if not (self.dt_years > 0):
            raise ValueError("dt_years must be positive")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    def dates(self) -> list[dt.date]:
        """Nominal sample dates (weekdays after ``t0``); metadata only."""
        out = [self.t0]
        d = self.t0
        while len(out) < len(self):
            d += dt.timedelta(days=1)
            if d.weekday() < 5:
                out.append(d)
        return out

    def scaled(self, c: float) -> "PriceSeries":
        return PriceSeries(self.label, self.t0, self.values * c, self.dt_years)


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of a seeded geometric Brownian path with multiplicative jumps.

    ``jumps`` holds ``(index, relative_size)`` pairs: at ``index`` the price
    is additionally multiplied by ``1 + relative_size``.
    """

    n: int
    s0: float
    drift: float = 0.0
    vol: float = 0.0
    jumps: tuple[tuple[int, float], ...] = field(default_factory=tuple)
    seed: int = 0
    dt_years: float = DAILY
    label: str = "synthetic"
    t0: dt.date = dt.date(2009, 1, 2)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not (self.s0 > 0):
            raise ValueError("s0 must be positive")
        if not (self.vol >= 0):
            raise ValueError("vol must be non-negative")
        if not (self.dt_years > 0):
            raise ValueError("dt_years must be positive")
        jumps = tuple((int(i), float(size)) for i, size in self.jumps)
        for i, size in jumps:
            if not 1 <= i <= self.n - 1:
                raise ValueError(f"jump index {i} outside [1, {self.n - 1}]")
            if not size > -1:
                raise ValueError(f"jump size {size} would make the price non-positive")
        object.__setattr__(self, "jumps", jumps)


class SplitMix64:
    """Minimal SplitMix64 stream with Box-Muller normals."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64
        self._spare = None

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        # (0, 1]: safe for log()
        return ((self.next_u64() >> 11) + 1) * 2.0**-53

    def normal(self) -> float:
        if self._spare is not None:
            z, self._spare = self._spare, None
            return z
        u1 = self.uniform()
        u2 = self.uniform()
        rho = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare = rho * math.sin(theta)
        return rho * math.cos(theta)


def generate(spec: SynthSpec) -> PriceSeries:
    """Simulate ``spec`` and return the resulting series.

    Step ``k`` (1 <= k < n) multiplies the previous price by
    ``exp((drift - vol**2/2) dt + vol sqrt(dt) z_k)``, with ``z_k`` the k-th
    normal of the seeded stream, and by ``1 + size`` when ``k`` is a jump
    index.  One normal is consumed per step even when ``vol == 0``.
    """
    rng = SplitMix64(spec.seed)
    jumps: dict[int, float] = {}
    for i, size in spec.jumps:
        jumps[i] = jumps.get(i, 1.0) * (1.0 + size)
    mu = (spec.drift - 0.5 * spec.vol**2) * spec.dt_years
    sd = spec.vol * math.sqrt(spec.dt_years)
    values = [float(spec.s0)]
    s = float(spec.s0)
    for k in range(1, spec.n):
        s = s * math.exp(mu + sd * rng.normal())
        if k in jumps:
            s = s * jumps[k]
        values.append(s)
    return PriceSeries(spec.label, spec.t0, np.array(values), spec.dt_years)


def _fmt(x: float) -> str:
    return repr(float(x))


def write_csv(series: PriceSeries, path) -> None:
    """Write ``series`` with its ``# label=`` / ``# dt_years=`` header comments."""
    lines = [
        f"# label={series.label}",
        f"# dt_years={_fmt(series.dt_years)}",
        "date,value",
    ]
    for d, v in zip(series.dates(), series.values):
        lines.append(f"{d.isoformat()},{_fmt(v)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def load_csv(path, dt_years: float | None = None, label: str | None = None) -> PriceSeries:
    """Read a ``date,value`` CSV.

    ``dt_years`` and ``label`` override the header comments; without either
    source the sampling step defaults to one trading day and the label to
    the file stem.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"no such file: {path}")
    meta: dict[str, str] = {}
    header_seen = False
    dates: list[dt.date] = []
    values: list[float] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not header_seen:
                if line.startswith("#"):
                    key, sep, val = line[1:].strip().partition("=")
                    if sep:
                        meta[key.strip()] = val.strip()
                    continue
                if line.strip() == "":
                    continue
                if line.strip() != "date,value":
                    raise SeriesFormatError(f"line {lineno}: expected header 'date,value'")
                header_seen = True
                continue
            if line.strip() == "":
                continue
            parts = line.split(",")
            if len(parts) != 2 or not _DATE_RE.match(parts[0].strip()):
                raise SeriesFormatError(f"line {lineno}: malformed row {line!r}")
            try:
                d = dt.date.fromisoformat(parts[0].strip())
                v = float(parts[1])
            except ValueError:
                raise SeriesFormatError(f"line {lineno}: malformed row {line!r}") from None
            if not math.isfinite(v) or v <= 0:
                raise SeriesFormatError(f"line {lineno}: non-positive price {parts[1].strip()}")
            if dates and d <= dates[-1]:
                raise SeriesFormatError(f"line {lineno}: dates are not increasing")
            dates.append(d)
            values.append(v)
    if not header_seen:
        raise SeriesFormatError(f"{path}: missing 'date,value' header")
    if not values:
        raise SeriesFormatError("empty series")
    if dt_years is None:
        dt_years = float(meta["dt_years"]) if "dt_years" in meta else DAILY
    if label is None:
        label = meta.get("label", path.stem)
    return PriceSeries(label, dates[0], np.array(values), dt_years)


def write_table(path, columns: dict[str, object]) -> None:
    """Write equal-length columns as a headed CSV (LF endings, repr floats)."""
    names = list(columns)
    cols = [list(columns[name]) for name in names]
    lengths = {len(c) for c in cols}
    if len(lengths) > 1:
        raise ValueError(f"column lengths differ: {sorted(lengths)}")
    lines = [",".join(names)]
    for row in zip(*cols):
        lines.append(",".join(_cell(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return _fmt(x)
    return str(x)


def read_table(path) -> dict[str, np.ndarray]:
    """Load a CSV written by :func:`write_table`.

    Numeric columns come back as float arrays (``index`` as int); anything
    else stays as an array of strings.
    """
    text = Path(path).read_text(encoding="utf-8")
    rows = [line.split(",") for line in text.splitlines() if line and not line.startswith("#")]
    if not rows:
        raise SeriesFormatError(f"{path}: missing header")
    names = rows[0]
    body = rows[1:]
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(names):
            raise SeriesFormatError(f"line {lineno}: expected {len(names)} fields, got {len(row)}")
    out: dict[str, np.ndarray] = {}
    for j, name in enumerate(names):
        cells = [row[j] for row in body]
        try:
            arr = np.array([float(c) for c in cells], dtype=float)
            if name == "index":
                arr = arr.astype(int)
        except ValueError:
            arr = np.array(cells, dtype=str)
        out[name] = arr
    return out
