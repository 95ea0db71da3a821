"""Antialiased drawing primitives on grayscale numpy canvases.

Everything works on uint8 arrays (255 = white background, 0 = ink) and
composites with `minimum`, so draw order never changes the result for
same-colored ink.  Coverage is computed from exact point-to-shape distances
over the primitive's bounding box only.
"""

from __future__ import annotations

import math

import numpy as np


def new_canvas(width: int, height: int) -> np.ndarray:
    return np.full((height, width), 255, dtype=np.uint8)


def _region(canvas: np.ndarray, x_min: float, y_min: float, x_max: float,
            y_max: float) -> tuple[slice, slice] | None:
    h, w = canvas.shape
    x0 = max(0, int(math.floor(x_min)))
    y0 = max(0, int(math.floor(y_min)))
    x1 = min(w, int(math.ceil(x_max)) + 1)
    y1 = min(h, int(math.ceil(y_max)) + 1)
    if x0 >= x1 or y0 >= y1:
        return None
    return slice(y0, y1), slice(x0, x1)


def _composite(canvas: np.ndarray, ys: slice, xs: slice, coverage: np.ndarray) -> None:
    ink = np.clip(255.0 * (1.0 - coverage), 0, 255).astype(np.uint8)
    patch = canvas[ys, xs]
    np.minimum(patch, ink, out=patch)


def _grid(ys: slice, xs: slice) -> tuple[np.ndarray, np.ndarray]:
    yy, xx = np.mgrid[ys, xs]
    # sample at pixel centers
    return xx + 0.5, yy + 0.5


def _segment_distance(px: np.ndarray, py: np.ndarray, x0: float, y0: float,
                      x1: float, y1: float) -> np.ndarray:
    dx, dy = x1 - x0, y1 - y0
    length_sq = dx * dx + dy * dy
    if length_sq <= 1e-12:
        return np.hypot(px - x0, py - y0)
    t = np.clip(((px - x0) * dx + (py - y0) * dy) / length_sq, 0.0, 1.0)
    return np.hypot(px - (x0 + t * dx), py - (y0 + t * dy))


def draw_segment(canvas: np.ndarray, p0: tuple[float, float], p1: tuple[float, float],
                 width: float) -> None:
    half = width / 2.0
    pad = half + 1.5
    reg = _region(canvas, min(p0[0], p1[0]) - pad, min(p0[1], p1[1]) - pad,
                  max(p0[0], p1[0]) + pad, max(p0[1], p1[1]) + pad)
    if reg is None:
        return
    ys, xs = reg
    px, py = _grid(ys, xs)
    dist = _segment_distance(px, py, p0[0], p0[1], p1[0], p1[1])
    coverage = np.clip(half + 0.5 - dist, 0.0, 1.0)
    _composite(canvas, ys, xs, coverage)


def draw_polyline(canvas: np.ndarray, points: list[tuple[float, float]],
                  width: float) -> None:
    for a, b in zip(points, points[1:]):
        draw_segment(canvas, a, b, width)


def draw_triangle(canvas: np.ndarray, a: tuple[float, float], b: tuple[float, float],
                  c: tuple[float, float]) -> None:
    """Filled triangle with soft edges."""
    xs_all = (a[0], b[0], c[0])
    ys_all = (a[1], b[1], c[1])
    reg = _region(canvas, min(xs_all) - 2, min(ys_all) - 2,
                  max(xs_all) + 2, max(ys_all) + 2)
    if reg is None:
        return
    ys, xs = reg
    px, py = _grid(ys, xs)

    # signed distance to each edge, positive on the triangle's inner side
    area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if abs(area) < 1e-12:
        draw_segment(canvas, a, c, 1.0)
        return
    sign = 1.0 if area > 0 else -1.0
    inner = None
    for p, q in ((a, b), (b, c), (c, a)):
        ex, ey = q[0] - p[0], q[1] - p[1]
        norm = math.hypot(ex, ey)
        if norm < 1e-12:
            continue
        d = sign * ((px - p[0]) * ey - (py - p[1]) * ex) / norm
        inner = d if inner is None else np.minimum(inner, d)
    coverage = np.clip(inner + 0.5, 0.0, 1.0)
    _composite(canvas, ys, xs, coverage)


def draw_hash_bond(canvas: np.ndarray, narrow: tuple[float, float],
                   wide: tuple[float, float], width: float, max_half: float) -> None:
    """Hashed (dashed receding) bond: rungs perpendicular to the axis that
    widen from the narrow end."""
    dx, dy = wide[0] - narrow[0], wide[1] - narrow[1]
    length = math.hypot(dx, dy)
    if length < 1e-9:
        return
    ux, uy = dx / length, dy / length
    nx, ny = -uy, ux
    spacing = max(3.0, width * 2.5)
    count = max(3, int(length / spacing))
    for i in range(count + 1):
        t = i / count
        cx = narrow[0] + dx * t
        cy = narrow[1] + dy * t
        half = max(width * 0.6, max_half * t)
        draw_segment(canvas, (cx - nx * half, cy - ny * half),
                     (cx + nx * half, cy + ny * half), width)


def draw_wavy_bond(canvas: np.ndarray, p0: tuple[float, float],
                   p1: tuple[float, float], width: float, amplitude: float) -> None:
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    length = math.hypot(dx, dy)
    if length < 1e-9:
        return
    ux, uy = dx / length, dy / length
    nx, ny = -uy, ux
    waves = max(3, int(round(length / max(4.0, amplitude * 2.5))))
    steps = waves * 8
    points = []
    for i in range(steps + 1):
        t = i / steps
        offset = amplitude * math.sin(t * waves * 2.0 * math.pi)
        points.append((p0[0] + dx * t + nx * offset, p0[1] + dy * t + ny * offset))
    draw_polyline(canvas, points, width)


def clear_rect(canvas: np.ndarray, x0: float, y0: float, x1: float, y1: float) -> None:
    reg = _region(canvas, x0, y0, x1 - 1, y1 - 1)
    if reg is None:
        return
    ys, xs = reg
    canvas[ys, xs] = 255
