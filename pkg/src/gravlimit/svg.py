"""Minimal SVG line plots (at most two series, linear or log axes)."""
from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

COLORS = ("#1f77b4", "#d62728")


def _transform(values, log):
    values = np.asarray(values, dtype=float)
    if log:
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(values > 0, np.log10(values), np.nan)
    return values


def line_plot(series, log_x=False, log_y=False, width=640, height=420,
              title="", xlabel="", ylabel=""):
    """Render ``[(x, y, label), ...]`` as an SVG document string."""
    if not 1 <= len(series) <= 2:
        raise ValueError("line_plot draws one or two series")
    margin = 60
    xs = [_transform(s[0], log_x) for s in series]
    ys = [_transform(s[1], log_y) for s in series]
    finite_x = np.concatenate([x[np.isfinite(x)] for x in xs])
    finite_y = np.concatenate([y[np.isfinite(y)] for y in ys])
    if finite_x.size == 0 or finite_y.size == 0:
        raise ValueError("nothing finite to plot")
    x0, x1 = float(finite_x.min()), float(finite_x.max())
    y0, y1 = float(finite_y.min()), float(finite_y.max())
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def px(v):
        return margin + (v - x0) / (x1 - x0) * (width - 2 * margin)

    def py(v):
        return height - margin - (v - y0) / (y1 - y0) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="black"/>',
    ]
    for n, (x, y, spec) in enumerate(zip(xs, ys, series)):
        color = COLORS[n]
        ok = np.isfinite(x) & np.isfinite(y)
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x[ok], y[ok]))
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        parts.append(f'<text x="{width - margin - 150}" y="{margin + 18 + 16 * n}" '
                     f'fill="{color}" font-size="12">{escape(str(spec[2]))}</text>')

    def tick(v, log):
        return f"1e{v:.3g}" if log else f"{v:.3g}"

    parts.append(f'<text x="{margin}" y="{height - margin + 18}" font-size="11">{tick(x0, log_x)}</text>')
    parts.append(f'<text x="{width - margin - 40}" y="{height - margin + 18}" '
                 f'font-size="11">{tick(x1, log_x)}</text>')
    parts.append(f'<text x="4" y="{height - margin}" font-size="11">{tick(y0, log_y)}</text>')
    parts.append(f'<text x="4" y="{margin + 4}" font-size="11">{tick(y1, log_y)}</text>')
    parts.append(f'<text x="{width / 2}" y="{height - 15}" font-size="13" '
                 f'text-anchor="middle">{escape(xlabel)}</text>')
    parts.append(f'<text x="15" y="{height / 2}" font-size="13" text-anchor="middle" '
                 f'transform="rotate(-90 15 {height / 2})">{escape(ylabel)}</text>')
    if title:
        parts.append(f'<text x="{width / 2}" y="30" font-size="15" '
                     f'text-anchor="middle">{escape(title)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write(path, svg_text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(svg_text)


__all__ = ["line_plot", "write"]
