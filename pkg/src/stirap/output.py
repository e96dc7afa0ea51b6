"""CSV and SVG writers with byte-stable output."""

from __future__ import annotations

import csv
import io
import math
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

import numpy as np

TRAJECTORY_COLUMNS = (
    "t", "re_psi_a", "im_psi_a", "re_psi_e", "im_psi_e", "re_psi_g", "im_psi_g",
    "pop_a", "pop_e", "pop_g", "transfer",
)


def format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        # repr is the shortest string that round-trips
        return repr(float(value))
    return "" if value is None else str(value)


def parse_cell(text: str):
    try:
        return float(text)
    except ValueError:
        return text


def dumps_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_cell(v) for v in row])
    return buf.getvalue()


def loads_csv(text: str) -> tuple[list[str], list[list]]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return header, [[parse_cell(c) for c in row] for row in reader]


def trajectory_rows(traj) -> list[list[float]]:
    s = traj.states
    pops = np.abs(s) ** 2
    tr = traj.transfer
    rows = []
    for i in range(len(traj.t)):
        rows.append([
            traj.t[i], s[i, 0].real, s[i, 0].imag, s[i, 1].real, s[i, 1].imag,
            s[i, 2].real, s[i, 2].imag, pops[i, 0], pops[i, 1], pops[i, 2], tr[i],
        ])
    return rows


def trajectory_csv(traj) -> str:
    return dumps_csv(TRAJECTORY_COLUMNS, trajectory_rows(traj))


# --- SVG -------------------------------------------------------------------

WIDTH, HEIGHT = 800, 500
MARGIN = dict(left=80, right=170, top=45, bottom=60)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / max(target - 1, 1)
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(round(v, 12))
        v += step
    return ticks


def _fmt_tick(v: float) -> str:
    return f"{v:.6g}"


def line_chart(series: dict[str, tuple[Sequence[float], Sequence[float]]], title: str = "",
               xlabel: str = "t", ylabel: str = "", logy: bool = False,
               dashed: Sequence[str] = ()) -> str:
    """
    Render ``{label: (x, y)}`` as a standalone 800x500 SVG line chart.

    With ``logy`` non-positive points are dropped and decades are ticked.
    """
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    clean = {}
    for label, (x, y) in series.items():
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        keep = np.isfinite(x) & np.isfinite(y)
        if logy:
            keep &= y > 0
            y = np.where(keep, np.log10(np.where(keep, y, 1.0)), np.nan)
        clean[label] = (x[keep], y[keep])

    xs = np.concatenate([c[0] for c in clean.values()]) if clean else np.array([0.0, 1.0])
    ys = np.concatenate([c[1] for c in clean.values()]) if clean else np.array([0.0, 1.0])
    if xs.size == 0:
        xs, ys = np.array([0.0, 1.0]), np.array([0.0, 1.0])
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if logy:
        y0, y1 = math.floor(y0), math.ceil(y1)
    if x1 <= x0:
        x1 = x0 + 1.0
    if y1 <= y0:
        y0, y1 = y0 - 0.5, y1 + 0.5

    def sx(v):
        return MARGIN["left"] + (v - x0) / (x1 - x0) * pw

    def sy(v):
        return MARGIN["top"] + (1.0 - (v - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="25" text-anchor="middle" font-size="15">{escape(title)}</text>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="black"/>',
    ]
    for v in nice_ticks(x0, x1):
        px = sx(v)
        out.append(f'<line x1="{px:.2f}" y1="{MARGIN["top"] + ph}" x2="{px:.2f}" '
                   f'y2="{MARGIN["top"] + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{MARGIN["top"] + ph + 20}" '
                   f'text-anchor="middle">{_fmt_tick(v)}</text>')
    yt = [float(v) for v in range(int(y0), int(y1) + 1)] if logy else nice_ticks(y0, y1)
    for v in yt:
        py = sy(v)
        label = f"1e{int(v)}" if logy else _fmt_tick(v)
        out.append(f'<line x1="{MARGIN["left"] - 5}" y1="{py:.2f}" x2="{MARGIN["left"]}" '
                   f'y2="{py:.2f}" stroke="black"/>')
        out.append(f'<line x1="{MARGIN["left"]}" y1="{py:.2f}" x2="{MARGIN["left"] + pw}" '
                   f'y2="{py:.2f}" stroke="#dddddd"/>')
        out.append(f'<text x="{MARGIN["left"] - 8}" y="{py + 4:.2f}" text-anchor="end">{label}</text>')
    out.append(f'<text x="{MARGIN["left"] + pw / 2:.1f}" y="{HEIGHT - 15}" '
               f'text-anchor="middle">{escape(xlabel)}</text>')
    out.append(f'<text x="20" y="{MARGIN["top"] + ph / 2:.1f}" text-anchor="middle" '
               f'transform="rotate(-90 20 {MARGIN["top"] + ph / 2:.1f})">{escape(ylabel)}</text>')

    for k, (label, (x, y)) in enumerate(clean.items()):
        color = PALETTE[k % len(PALETTE)]
        dash = ' stroke-dasharray="6 4"' if label in dashed else ""
        if len(x):
            pts = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(x, y))
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>')
        ly = MARGIN["top"] + 15 + 20 * k
        lx = MARGIN["left"] + pw + 12
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="2"{dash}/>')
        out.append(f'<text x="{lx + 30}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def thin(n: int, max_points: int = 2000) -> slice:
    """Stride that keeps at most about ``max_points`` of ``n`` samples for plotting."""
    return slice(None, None, max(1, math.ceil(n / max_points)))
