"""Deterministic SVG charts: variance pareto and PC scatter.

Plain string assembly, no plotting library: identical inputs must
yield byte-identical documents so chart artifacts can be diffed and
hashed in tests. Data glyphs carry class="pt" (one per row), which
keeps them countable independently of legend decorations.
"""

from __future__ import annotations

import numpy as np

from enosepca.cluster import AssignedCluster, ClusterAssignment, class_centroids
from enosepca.errors import InsufficientComponents
from enosepca.pca import ProjectedData

_W, _H = 640, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 30, 30, 55

_COLORS = {
    AssignedCluster.KW1: "#1f77b4",
    AssignedCluster.KW2: "#d62728",
    AssignedCluster.KW3: "#2ca02c",
    AssignedCluster.NEW_CLUSTER: "#9467bd",
}


def _f(v: float) -> str:
    return f"{v:.2f}"


def _svg_open(width: int = _W, height: int = _H) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]


def _axis_frame(x0: float, y0: float, x1: float, y1: float) -> str:
    # y0 = bottom, y1 = top in pixel coords
    return (
        f'<polyline points="{_f(x0)},{_f(y1)} {_f(x0)},{_f(y0)} {_f(x1)},{_f(y0)}" '
        'fill="none" stroke="black" stroke-width="1"/>'
    )


def render_pareto(variance_explained) -> str:
    """Bar-plus-cumulative-line chart of per-component variance share."""
    fractions = [float(v) for v in variance_explained]
    if not fractions:
        raise ValueError("need at least one component")
    for v in fractions:
        if not 0.0 <= v <= 1.0 + 1e-12:
            raise ValueError("variance fractions must lie in [0, 1]")

    x0, x1 = _MARGIN_L, _W - _MARGIN_R
    y0, y1 = _H - _MARGIN_B, _MARGIN_T
    span_x = x1 - x0
    span_y = y0 - y1

    def ypix(percent: float) -> float:
        return y0 - span_y * percent / 100.0

    n = len(fractions)
    slot = span_x / n
    bar_w = slot * 0.6

    parts = _svg_open()
    parts.append(_axis_frame(x0, y0, x1, y1))
    for tick in (0, 25, 50, 75, 100):
        ty = ypix(tick)
        parts.append(
            f'<line x1="{_f(x0 - 4)}" y1="{_f(ty)}" x2="{_f(x0)}" y2="{_f(ty)}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{_f(x0 - 8)}" y="{_f(ty + 4)}" text-anchor="end">{tick}</text>'
        )
    parts.append(
        f'<text x="{_f(x0 - 45)}" y="{_f((y0 + y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 {_f(x0 - 45)} {_f((y0 + y1) / 2)})">variance explained (%)</text>'
    )

    cumulative = 0.0
    cum_points = []
    for i, frac in enumerate(fractions):
        percent = 100.0 * frac
        cumulative += percent
        cx = x0 + slot * (i + 0.5)
        bar_x = cx - bar_w / 2
        bar_y = ypix(percent)
        parts.append(
            f'<rect class="bar" x="{_f(bar_x)}" y="{_f(bar_y)}" width="{_f(bar_w)}" '
            f'height="{_f(y0 - bar_y)}" fill="#1f77b4"/>'
        )
        parts.append(
            f'<text x="{_f(cx)}" y="{_f(bar_y - 6)}" text-anchor="middle">{percent:.1f}</text>'
        )
        parts.append(
            f'<text x="{_f(cx)}" y="{_f(y0 + 16)}" text-anchor="middle">PC{i + 1}</text>'
        )
        cum_points.append((cx, ypix(min(cumulative, 100.0)), cumulative))

    polyline = " ".join(f"{_f(px)},{_f(py)}" for px, py, _ in cum_points)
    parts.append(
        f'<polyline points="{polyline}" fill="none" stroke="#d62728" stroke-width="1.5"/>'
    )
    for px, py, cum in cum_points:
        parts.append(f'<circle class="cum" cx="{_f(px)}" cy="{_f(py)}" r="3" fill="#d62728"/>')
        parts.append(
            f'<text x="{_f(px)}" y="{_f(py - 8)}" text-anchor="middle" fill="#d62728">{cum:.1f}</text>'
        )
    parts.append(
        f'<text x="{_f((x0 + x1) / 2)}" y="{_f(_H - 12)}" text-anchor="middle">principal component</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _glyph(cluster: AssignedCluster, x: float, y: float, css: str) -> str:
    color = _COLORS[cluster]
    if cluster is AssignedCluster.KW1:
        return f'<circle class="{css}" cx="{_f(x)}" cy="{_f(y)}" r="4" fill="{color}"/>'
    if cluster is AssignedCluster.KW2:
        return (
            f'<rect class="{css}" x="{_f(x - 3.5)}" y="{_f(y - 3.5)}" width="7" height="7" '
            f'fill="{color}"/>'
        )
    if cluster is AssignedCluster.KW3:
        pts = f"{_f(x)},{_f(y - 4.5)} {_f(x - 4)},{_f(y + 3.5)} {_f(x + 4)},{_f(y + 3.5)}"
        return f'<polygon class="{css}" points="{pts}" fill="{color}"/>'
    pts = f"{_f(x)},{_f(y - 5)} {_f(x - 5)},{_f(y)} {_f(x)},{_f(y + 5)} {_f(x + 5)},{_f(y)}"
    return f'<polygon class="{css}" points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'


def render_scatter(P: ProjectedData, assignments: list[ClusterAssignment]) -> str:
    """First-two-PC scatter with per-cluster glyphs and centroid crosses.

    Axis labels carry each component's variance share. Class centroids
    are recomputed from the true labels, mirroring the assignment step.
    """
    if P.k < 2:
        raise InsufficientComponents("scatter needs at least 2 components")
    if len(assignments) != P.scores.shape[0]:
        raise ValueError("one assignment per score row required")

    xs = P.scores[:, 0]
    ys = P.scores[:, 1]
    centroids = class_centroids(P, [a.true_label for a in assignments])
    cent_pts = [(v[0], v[1]) for v in centroids.values()]
    all_x = np.concatenate([xs, [p[0] for p in cent_pts]])
    all_y = np.concatenate([ys, [p[1] for p in cent_pts]])

    def bounds(v: np.ndarray) -> tuple[float, float]:
        lo, hi = float(v.min()), float(v.max())
        span = hi - lo
        if span == 0.0:
            span = 1.0
        return lo - 0.07 * span, hi + 0.07 * span

    lo_x, hi_x = bounds(all_x)
    lo_y, hi_y = bounds(all_y)
    x0, x1 = _MARGIN_L, _W - _MARGIN_R
    y0, y1 = _H - _MARGIN_B, _MARGIN_T

    def px(v: float) -> float:
        return x0 + (v - lo_x) / (hi_x - lo_x) * (x1 - x0)

    def py(v: float) -> float:
        return y0 - (v - lo_y) / (hi_y - lo_y) * (y0 - y1)

    parts = _svg_open()
    parts.append(_axis_frame(x0, y0, x1, y1))
    pc1 = 100.0 * float(P.variance_explained[0])
    pc2 = 100.0 * float(P.variance_explained[1])
    parts.append(
        f'<text x="{_f((x0 + x1) / 2)}" y="{_f(_H - 12)}" text-anchor="middle">'
        f"PC1 ({pc1:.1f}%)</text>"
    )
    parts.append(
        f'<text x="{_f(x0 - 45)}" y="{_f((y0 + y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 {_f(x0 - 45)} {_f((y0 + y1) / 2)})">PC2 ({pc2:.1f}%)</text>'
    )

    for i, a in enumerate(assignments):
        parts.append(_glyph(a.assigned, px(float(xs[i])), py(float(ys[i])), "pt"))

    for label, c in centroids.items():
        cx, cy = px(float(c[0])), py(float(c[1]))
        parts.append(
            f'<g class="centroid"><line x1="{_f(cx - 6)}" y1="{_f(cy)}" x2="{_f(cx + 6)}" '
            f'y2="{_f(cy)}" stroke="black" stroke-width="1.5"/>'
            f'<line x1="{_f(cx)}" y1="{_f(cy - 6)}" x2="{_f(cx)}" y2="{_f(cy + 6)}" '
            f'stroke="black" stroke-width="1.5"/>'
            f'<text x="{_f(cx + 8)}" y="{_f(cy - 8)}">{label.value}</text></g>'
        )

    present = []
    for cluster in AssignedCluster:
        if any(a.assigned is cluster for a in assignments):
            present.append(cluster)
    ly = _MARGIN_T + 6
    for cluster in present:
        lx = _W - _MARGIN_R - 120
        parts.append(_glyph(cluster, lx, ly, "legend"))
        parts.append(f'<text x="{_f(lx + 10)}" y="{_f(ly + 4)}">{cluster.value}</text>')
        ly += 18
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
