"""Minimal SVG output for curve plots. No drawing dependencies.

Curves are lists of (x, y) arrays in data coordinates; the document scales
them into a fixed canvas with equal margins and emits plain polylines.
"""

from __future__ import annotations

import numpy as np

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f")


def _fmt(x):
    return f"{x:.6g}"


def svg_document(curves, width: int = 720, height: int = 540,
                 title: str = "") -> str:
    """Render curves (sequences of (x, y) point pairs) into an SVG string."""
    margin = 36.0
    xs = np.concatenate([np.asarray(c)[:, 0] for c in curves]) if curves else np.zeros(1)
    ys = np.concatenate([np.asarray(c)[:, 1] for c in curves]) if curves else np.zeros(1)
    x0, x1 = float(xs.min()), float(xs.max())
    y0, y1 = float(ys.min()), float(ys.max())
    if x1 - x0 < 1e-30:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 - y0 < 1e-30:
        y0, y1 = y0 - 0.5, y1 + 0.5
    sx = (width - 2 * margin) / (x1 - x0)
    sy = (height - 2 * margin) / (y1 - y0)

    def to_px(pt):
        # y axis points up in data space, down in SVG
        return (margin + (pt[0] - x0) * sx,
                height - margin - (pt[1] - y0) * sy)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
             f'height="{height}" viewBox="0 0 {width} {height}">']
    if title:
        parts.append(f'<title>{title}</title>')
    parts.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    for i, curve in enumerate(curves):
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}"
                       for px, py in (to_px(p) for p in np.asarray(curve)))
        color = _PALETTE[i % len(_PALETTE)]
        parts.append(f'<polyline points="{pts}" fill="none" '
                     f'stroke="{color}" stroke-width="1.2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
