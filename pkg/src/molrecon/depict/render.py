"""Rasterize a molecular graph into an annotated grayscale depiction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from molrecon.chemgraph import BondKind, MolGraph
from molrecon.depict import glyphs, raster
from molrecon.depict.layout import Point

DEFAULT_MAX_DIM = 8000

_NOISE_KINDS = ("none", "gaussian", "salt-pepper")


class DepictionError(ValueError):
    pass


@dataclass(frozen=True)
class NoiseSpec:
    kind: str = "none"
    level: float = 0.0

    def __post_init__(self):
        if self.kind not in _NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; "
                             f"expected one of {_NOISE_KINDS}")
        if not 0.0 <= self.level <= 1.0:
            raise ValueError(f"noise level {self.level} outside [0, 1]")


@dataclass(frozen=True)
class StyleParams:
    image_scale: float = 40.0       # pixels per unit bond length
    stroke_width_px: int = 2
    font_scale: float = 1.0
    rotation_deg: float = 0.0
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    superatom_collapse_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.image_scale <= 0:
            raise ValueError(f"image_scale must be positive, got {self.image_scale}")
        if int(self.stroke_width_px) != self.stroke_width_px or self.stroke_width_px < 1:
            raise ValueError(f"stroke_width_px must be an integer >= 1, "
                             f"got {self.stroke_width_px}")
        if self.font_scale <= 0:
            raise ValueError(f"font_scale must be positive, got {self.font_scale}")
        if not 0.0 <= self.superatom_collapse_prob <= 1.0:
            raise ValueError(f"superatom_collapse_prob {self.superatom_collapse_prob} "
                             f"outside [0, 1]")


@dataclass(frozen=True)
class Annotation:
    """One labeled box in a depiction: an atom, a text group, or a bond."""

    class_name: str
    bbox: tuple[float, float, float, float]
    endpoints: tuple[Point, Point] | None = None
    text: str | None = None
    source_atom_ids: tuple[int, ...] = ()
    source_bond_id: int | None = None


@dataclass(frozen=True)
class Depiction:
    image: np.ndarray               # uint8, shape (height, width)
    annotations: tuple[Annotation, ...]
    style: StyleParams
    crossings: tuple[tuple[int, int], ...] = ()

    @property
    def width(self) -> int:
        return int(self.image.shape[1])

    @property
    def height(self) -> int:
        return int(self.image.shape[0])


def atom_label_text(element: str, charge: int, explicit_h: int | None) -> str:
    """Label string for an atom that cannot be shown as a bare symbol."""
    text = element
    if explicit_h is not None:
        text += "H" + (str(explicit_h) if explicit_h != 1 else "")
    if charge:
        mag = abs(charge)
        sign = "+" if charge > 0 else "-"
        text += sign if mag == 1 else f"{mag}{sign}"
    return text


def _bond_half_extent(kind: BondKind, style: StyleParams) -> float:
    s = float(style.stroke_width_px)
    scale = style.image_scale
    if kind is BondKind.DOUBLE:
        return _parallel_offset(scale) + s / 2
    if kind is BondKind.TRIPLE:
        return _parallel_offset(scale) + s / 2
    if kind in (BondKind.WEDGE_UP, BondKind.WEDGE_DOWN):
        return _wedge_half_width(scale)
    if kind is BondKind.WAVY:
        return _wavy_amplitude(scale) + s / 2
    return s / 2


def _parallel_offset(scale: float) -> float:
    return max(1.5, 0.09 * scale)


def _wedge_half_width(scale: float) -> float:
    return max(2.5, 0.13 * scale)


def _wavy_amplitude(scale: float) -> float:
    return max(2.0, 0.12 * scale)


def render_depiction(graph: MolGraph, coords: list[Point], style: StyleParams,
                     text_labels: dict[int, tuple[str, tuple[int, ...]]] | None = None,
                     source_atom_ids: dict[int, int] | None = None,
                     crossings: tuple[tuple[int, int], ...] = (),
                     max_dim: int = DEFAULT_MAX_DIM) -> Depiction:
    """Draw the graph at the given unit-bond coordinates.

    `text_labels` maps display node index to (label text, source atom ids)
    for collapsed groups; `source_atom_ids` remaps surviving node indices to
    the pre-collapse graph.  Rotation happens in coordinate space before any
    pixel is placed; noise is stamped on afterwards and never moves a box.
    """
    if len(coords) != graph.n_atoms:
        raise DepictionError(f"got {len(coords)} coordinates for "
                             f"{graph.n_atoms} atoms")
    if graph.n_atoms == 0:
        raise DepictionError("cannot render an empty graph")
    text_labels = text_labels or {}
    source_atom_ids = source_atom_ids or {}

    theta = math.radians(style.rotation_deg)
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cx = sum(p[0] for p in coords) / len(coords)
    cy = sum(p[1] for p in coords) / len(coords)
    scale = style.image_scale
    pts = []
    for x, y in coords:
        rx = (x - cx) * cos_t - (y - cy) * sin_t
        ry = (x - cx) * sin_t + (y - cy) * cos_t
        pts.append((rx * scale, -ry * scale))  # raster y grows downward

    stroke = float(style.stroke_width_px)
    cell_px = max(1, round(scale * 0.05 * style.font_scale))
    clear_pad = cell_px + 2.0

    # per-atom glyph text: collapsed groups and decorated atoms become "Text"
    labels: dict[int, tuple[str, str]] = {}  # index -> (class, text)
    for i, atom in enumerate(graph.atoms):
        if i in text_labels:
            labels[i] = ("Text", text_labels[i][0])
        elif atom.element == "*":
            labels[i] = ("Text", "*")
        elif atom.charge != 0 or atom.explicit_h is not None:
            labels[i] = ("Text", atom_label_text(atom.element, atom.charge,
                                                 atom.explicit_h))
        elif atom.element != "C":
            labels[i] = (atom.element, atom.element)

    bond_pad = max((_bond_half_extent(b.kind, style) for b in graph.bonds),
                   default=stroke / 2) + 1.0
    half_w: dict[int, float] = {}
    half_h: dict[int, float] = {}
    for i in range(graph.n_atoms):
        if i in labels:
            tw, th = glyphs.text_pixel_size(labels[i][1], cell_px)
            half_w[i] = tw / 2 + clear_pad
            half_h[i] = th / 2 + clear_pad
        else:
            half_w[i] = half_h[i] = stroke * 1.5
    margin = 3.0
    min_x = min(p[0] - max(half_w[i], bond_pad) for i, p in enumerate(pts)) - margin
    max_x = max(p[0] + max(half_w[i], bond_pad) for i, p in enumerate(pts)) + margin
    min_y = min(p[1] - max(half_h[i], bond_pad) for i, p in enumerate(pts)) - margin
    max_y = max(p[1] + max(half_h[i], bond_pad) for i, p in enumerate(pts)) + margin

    width = int(math.ceil(max_x - min_x)) + 1
    height = int(math.ceil(max_y - min_y)) + 1
    if width > max_dim or height > max_dim:
        raise DepictionError(f"image {width}x{height} exceeds the "
                             f"{max_dim}x{max_dim} cap")
    pts = [(x - min_x, y - min_y) for x, y in pts]

    canvas = raster.new_canvas(width, height)
    annotations: list[Annotation] = []

    def clamp_box(x0: float, y0: float, x1: float, y1: float):
        return (max(0.0, min(x0, x1)), max(0.0, min(y0, y1)),
                min(float(width), max(x0, x1)), min(float(height), max(y0, y1)))

    for bi, bond in enumerate(graph.bonds):
        p0, p1 = pts[bond.a], pts[bond.b]
        _draw_bond(canvas, p0, p1, bond.kind, style)
        half = _bond_half_extent(bond.kind, style) + 0.5
        bbox = clamp_box(min(p0[0], p1[0]) - half - 2, min(p0[1], p1[1]) - half - 2,
                         max(p0[0], p1[0]) + half + 2, max(p0[1], p1[1]) + half + 2)
        annotations.append(Annotation(bond.kind.value, bbox,
                                      endpoints=(p0, p1), source_bond_id=bi))

    # whitespace margins first so overlapping clears cannot eat glyph ink
    boxes: dict[int, tuple[float, float, float, float]] = {}
    for i, (x, y) in enumerate(pts):
        if i not in labels:
            continue
        tw, th = glyphs.text_pixel_size(labels[i][1], cell_px)
        boxes[i] = (x - tw / 2, y - th / 2, x + tw / 2, y + th / 2)
        raster.clear_rect(canvas, boxes[i][0] - clear_pad, boxes[i][1] - clear_pad,
                          boxes[i][2] + clear_pad, boxes[i][3] + clear_pad)
    for i, box in boxes.items():
        glyphs.render_text(canvas, labels[i][1], int(round(box[0])),
                           int(round(box[1])), cell_px)

    for i, (x, y) in enumerate(pts):
        src = source_atom_ids.get(i, i)
        if i in labels:
            cls, text = labels[i]
            x0, y0, x1, y1 = boxes[i]
            bbox = clamp_box(x0 - 2, y0 - 2, x1 + 2, y1 + 2)
            ids = text_labels[i][1] if i in text_labels else (src,)
            annotations.append(Annotation(cls, bbox,
                                          text=text if cls == "Text" else None,
                                          source_atom_ids=tuple(ids)))
        else:
            half = stroke * 1.5
            bbox = clamp_box(x - half, y - half, x + half, y + half)
            annotations.append(Annotation("C", bbox, source_atom_ids=(src,)))

    _apply_noise(canvas, style)
    return Depiction(canvas, tuple(annotations), style, crossings)


def _draw_bond(canvas: np.ndarray, p0: Point, p1: Point, kind: BondKind,
               style: StyleParams) -> None:
    stroke = float(style.stroke_width_px)
    scale = style.image_scale
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    length = math.hypot(dx, dy)
    if length < 1e-9:
        return
    nx, ny = -dy / length, dx / length

    if kind is BondKind.SINGLE:
        raster.draw_segment(canvas, p0, p1, stroke)
    elif kind is BondKind.DOUBLE:
        o = _parallel_offset(scale)
        for s in (-1.0, 1.0):
            raster.draw_segment(canvas, (p0[0] + nx * o * s, p0[1] + ny * o * s),
                                (p1[0] + nx * o * s, p1[1] + ny * o * s), stroke)
    elif kind is BondKind.TRIPLE:
        o = _parallel_offset(scale)
        raster.draw_segment(canvas, p0, p1, stroke)
        for s in (-1.0, 1.0):
            raster.draw_segment(canvas, (p0[0] + nx * o * s, p0[1] + ny * o * s),
                                (p1[0] + nx * o * s, p1[1] + ny * o * s), stroke)
    elif kind is BondKind.WEDGE_UP:
        w = _wedge_half_width(scale)
        raster.draw_triangle(canvas, p0, (p1[0] + nx * w, p1[1] + ny * w),
                             (p1[0] - nx * w, p1[1] - ny * w))
    elif kind is BondKind.WEDGE_DOWN:
        raster.draw_hash_bond(canvas, p0, p1, stroke, _wedge_half_width(scale))
    elif kind is BondKind.WAVY:
        raster.draw_wavy_bond(canvas, p0, p1, stroke, _wavy_amplitude(scale))


def _apply_noise(canvas: np.ndarray, style: StyleParams) -> None:
    noise = style.noise
    if noise.kind == "none" or noise.level <= 0.0:
        return
    rng = np.random.default_rng(style.seed)
    if noise.kind == "gaussian":
        sigma = noise.level * 128.0
        jittered = canvas.astype(np.float64) + rng.normal(0.0, sigma, canvas.shape)
        canvas[:] = np.clip(jittered, 0, 255).astype(np.uint8)
    else:  # salt-pepper
        flip = rng.random(canvas.shape) < noise.level
        values = rng.integers(0, 2, canvas.shape).astype(np.uint8) * 255
        canvas[flip] = values[flip]


def depiction_to_annotation_dict(dep: Depiction) -> dict:
    """The JSON wire form shared with detection ingestion."""
    objects = []
    for ann in dep.annotations:
        obj: dict = {"class": ann.class_name,
                     "bbox": [round(v, 2) for v in ann.bbox]}
        if ann.endpoints is not None:
            obj["endpoints"] = [[round(ann.endpoints[0][0], 2),
                                 round(ann.endpoints[0][1], 2)],
                                [round(ann.endpoints[1][0], 2),
                                 round(ann.endpoints[1][1], 2)]]
        if ann.text is not None:
            obj["text"] = ann.text
        if ann.source_bond_id is not None:
            obj["truth_ids"] = [ann.source_bond_id]
        else:
            obj["truth_ids"] = list(ann.source_atom_ids)
        objects.append(obj)
    return {"image": {"w": dep.width, "h": dep.height}, "objects": objects}


def png_bytes(dep: Depiction) -> bytes:
    from PIL import Image
    import io
    buf = io.BytesIO()
    Image.fromarray(dep.image, mode="L").save(buf, format="PNG")
    return buf.getvalue()


def pgm_bytes(dep: Depiction) -> bytes:
    header = f"P5\n{dep.width} {dep.height}\n255\n".encode("ascii")
    return header + dep.image.tobytes()
