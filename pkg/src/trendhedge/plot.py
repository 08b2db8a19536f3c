"""Dependency-free SVG line charts (one polyline per column)."""

from __future__ import annotations

from html import escape
from pathlib import Path

import numpy as np

WIDTH, HEIGHT = 800, 400
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 30, 40
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")
DASHES = ("", "6,4", "2,3", "8,3,2,3")


def _nice_range(lo: float, hi: float) -> tuple[float, float]:
    if not np.isfinite(lo) or not np.isfinite(hi):
        return 0.0, 1.0
    if hi - lo <= 1e-12 * max(1.0, abs(lo), abs(hi)):
        pad = max(abs(lo) * 0.05, 0.5)
        return lo - pad, hi + pad
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def line_chart(series: dict[str, np.ndarray], title: str = "",
               markers: list[int] | None = None) -> str:
    """Render ``series`` against the sample index.

    ``markers`` draws thin vertical lines at the given sample indices
    (used for flagged abrupt changes).
    """
    if not series:
        raise ValueError("nothing to plot")
    arrays = {name: np.asarray(v, dtype=float) for name, v in series.items()}
    n = max(a.size for a in arrays.values())
    finite = np.concatenate([a[np.isfinite(a)] for a in arrays.values()] or [np.zeros(1)])
    ylo, yhi = _nice_range(float(finite.min()) if finite.size else 0.0,
                           float(finite.max()) if finite.size else 1.0)
    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def px(i):
        return MARGIN_L + plot_w * (i / max(n - 1, 1))

    def py(y):
        return MARGIN_T + plot_h * (1.0 - (y - ylo) / (yhi - ylo))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#444"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" '
                   f'font-size="13">{escape(title)}</text>')
    for j in range(5):
        y = ylo + (yhi - ylo) * j / 4
        out.append(f'<text x="{MARGIN_L - 6}" y="{py(y) + 4:.1f}" text-anchor="end">{y:.4g}</text>')
        out.append(f'<line x1="{MARGIN_L}" x2="{MARGIN_L + plot_w}" y1="{py(y):.1f}" '
                   f'y2="{py(y):.1f}" stroke="#ddd"/>')
    for j in range(5):
        i = (n - 1) * j / 4
        out.append(f'<text x="{px(i):.1f}" y="{HEIGHT - MARGIN_B + 16}" '
                   f'text-anchor="middle">{i:.0f}</text>')
    for k in markers or ():
        out.append(f'<line x1="{px(k):.1f}" x2="{px(k):.1f}" y1="{MARGIN_T}" '
                   f'y2="{MARGIN_T + plot_h}" stroke="#999" stroke-width="0.8"/>')

    for j, (name, a) in enumerate(arrays.items()):
        color = PALETTE[j % len(PALETTE)]
        dash = DASHES[j % len(DASHES)]
        pts = " ".join(f"{px(i):.2f},{py(v):.2f}" for i, v in enumerate(a) if np.isfinite(v))
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2"{dash_attr} '
                   f'points="{pts}"><title>{escape(name)}</title></polyline>')
        ly = MARGIN_T + 14 + 14 * j
        lx = MARGIN_L + 10
        out.append(f'<line x1="{lx}" x2="{lx + 20}" y1="{ly - 4}" y2="{ly - 4}" '
                   f'stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{lx + 26}" y="{ly}">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, series: dict[str, np.ndarray], title: str = "",
              markers: list[int] | None = None) -> None:
    Path(path).write_text(line_chart(series, title, markers), encoding="utf-8", newline="\n")
