"""Minimal hand-written SVG plots: one or more polylines plus axes."""

from __future__ import annotations

import numpy as np

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"]


def polylines_svg(lines, classes=None, size: int = 600, margin: int = 20, axes: bool = True) -> str:
    """SVG document with each array of (x, y) rows drawn as a polyline.

    ``classes`` gives an optional CSS class per polyline (e.g. per quiver edge),
    which also selects its colour.
    """
    lines = [np.asarray(p, float) for p in lines]
    allp = np.vstack(lines)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    scale = (size - 2 * margin) / span

    def tx(p):
        x = margin + (p[:, 0] - lo[0]) * scale
        y = size - margin - (p[:, 1] - lo[1]) * scale
        return x, y

    classes = classes or [f"c{i}" for i in range(len(lines))]
    styles = sorted(set(classes))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        "<style>",
    ]
    for i, cls in enumerate(styles):
        out.append(f".{cls} {{ fill: none; stroke: {PALETTE[i % len(PALETTE)]}; stroke-width: 1.2; }}")
    out.append(".axis { stroke: #999; stroke-width: 0.6; }")
    out.append("</style>")
    if axes:
        zx, zy = tx(np.zeros((1, 2)))
        if lo[1] <= 0 <= hi[1]:
            out.append(f'<line class="axis" x1="{margin}" y1="{zy[0]:.3f}" x2="{size - margin}" y2="{zy[0]:.3f}"/>')
        if lo[0] <= 0 <= hi[0]:
            out.append(f'<line class="axis" x1="{zx[0]:.3f}" y1="{margin}" x2="{zx[0]:.3f}" y2="{size - margin}"/>')
    for p, cls in zip(lines, classes):
        x, y = tx(p)
        pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(x, y))
        out.append(f'<polyline class="{cls}" points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
