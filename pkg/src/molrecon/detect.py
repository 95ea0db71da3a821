"""Detection data model and providers.

Three ways to obtain detections: the oracle (straight from depiction
annotations), the perturbed oracle (seeded corruption for robustness
testing), and ingestion of external detector output through the shared
JSON contract.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from molrecon.depict.render import Depiction

ATOM_CLASSES = ("Si", "N", "Br", "S", "I", "Cl", "H", "P", "O", "C", "B", "F",
                "Text")
BOND_CLASSES = ("Single", "Double", "Triple", "Wedge", "Dash", "Wavy")
ALL_CLASSES = frozenset(ATOM_CLASSES) | frozenset(BOND_CLASSES)

Point = tuple[float, float]


class DetectionError(ValueError):
    pass


def _check_class(name: str) -> None:
    if name not in ALL_CLASSES:
        valid = ", ".join(sorted(ALL_CLASSES))
        raise DetectionError(f"unknown detection class {name!r}; "
                             f"valid classes: {valid}")


@dataclass(frozen=True)
class Detection:
    """One classed box, optionally with bond endpoints or label text."""

    class_name: str
    bbox: tuple[float, float, float, float]
    confidence: float = 1.0
    endpoints: tuple[Point, Point] | None = None
    text: str | None = None

    def __post_init__(self):
        _check_class(self.class_name)
        x0, y0, x1, y1 = self.bbox
        if (x1 - x0) * (y1 - y0) <= 0:
            raise DetectionError(f"degenerate bbox {self.bbox}: area must be "
                                 f"positive")
        if not 0.0 <= self.confidence <= 1.0:
            raise DetectionError(f"confidence {self.confidence} outside [0, 1]")

    @property
    def center(self) -> Point:
        x0, y0, x1, y1 = self.bbox
        return ((x0 + x1) / 2.0, (y0 + y1) / 2.0)

    @property
    def is_bond(self) -> bool:
        return self.class_name in BOND_CLASSES


@dataclass(frozen=True)
class DetectionSet:
    width: int
    height: int
    items: tuple[Detection, ...]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


@dataclass(frozen=True)
class PerturbationParams:
    jitter_sigma: float = 0.0      # pixels, rigid per-box Gaussian shift
    drop_prob: float = 0.0
    relabel_prob: float = 0.0
    strip_endpoints: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.jitter_sigma < 0:
            raise ValueError(f"jitter_sigma must be >= 0, got {self.jitter_sigma}")
        for name in ("drop_prob", "relabel_prob"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} {v} outside [0, 1]")


def oracle_detect(depiction: Depiction) -> DetectionSet:
    """Perfect detections: one per annotation, confidence 1.0."""
    items = tuple(
        Detection(ann.class_name, ann.bbox, confidence=1.0,
                  endpoints=ann.endpoints, text=ann.text)
        for ann in depiction.annotations)
    return DetectionSet(depiction.width, depiction.height, items)


def perturb(detections: DetectionSet, p: PerturbationParams) -> DetectionSet:
    """Seeded corruption: rigid box jitter, drops, in-category relabels."""
    rng = random.Random(p.seed)
    out = []
    for det in detections.items:
        dx = rng.gauss(0.0, p.jitter_sigma)
        dy = rng.gauss(0.0, p.jitter_sigma)
        if rng.random() < p.drop_prob:
            continue
        cls = det.class_name
        if rng.random() < p.relabel_prob:
            pool = ATOM_CLASSES if cls in ATOM_CLASSES else BOND_CLASSES
            cls = rng.choice([c for c in pool if c != det.class_name])

        x0, y0, x1, y1 = det.bbox
        bbox = (x0 + dx, y0 + dy, x1 + dx, y1 + dy)
        endpoints = det.endpoints
        if endpoints is not None and (dx or dy):
            endpoints = ((endpoints[0][0] + dx, endpoints[0][1] + dy),
                         (endpoints[1][0] + dx, endpoints[1][1] + dy))
        if p.strip_endpoints:
            endpoints = None
        text = det.text if cls == "Text" else None
        out.append(Detection(cls, bbox, det.confidence, endpoints, text))
    return DetectionSet(detections.width, detections.height, tuple(out))


@lru_cache(maxsize=1)
def _schema() -> dict:
    raw = resources.files("molrecon.data").joinpath(
        "detections.schema.v1.json").read_text()
    return json.loads(raw)


def load_detections(path: str | Path) -> DetectionSet:
    """Read a detection document, validating against the v1 schema."""
    path = Path(path)
    try:
        document = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise DetectionError(f"{path}: not valid JSON: {exc}") from exc
    return parse_detection_document(document, source=str(path))


def parse_detection_document(document: dict, source: str = "<memory>") -> DetectionSet:
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
    if errors:
        err = errors[0]
        raise DetectionError(f"{source}: {err.json_path}: {err.message}")

    items = []
    for k, obj in enumerate(document["objects"]):
        cls = obj["class"]
        try:
            _check_class(cls)
            det = Detection(
                cls, tuple(obj["bbox"]),
                confidence=obj.get("confidence", 1.0),
                endpoints=tuple((pt[0], pt[1]) for pt in obj["endpoints"])
                if "endpoints" in obj else None,
                text=obj.get("text"))
        except DetectionError as exc:
            raise DetectionError(f"{source}: $.objects[{k}]: {exc}") from exc
        items.append(det)
    return DetectionSet(document["image"]["w"], document["image"]["h"],
                        tuple(items))


def box_iou(a: tuple[float, float, float, float],
            b: tuple[float, float, float, float]) -> float:
    ix0, iy0 = max(a[0], b[0]), max(a[1], b[1])
    ix1, iy1 = min(a[2], b[2]), min(a[3], b[3])
    if ix0 >= ix1 or iy0 >= iy1:
        return 0.0
    inter = (ix1 - ix0) * (iy1 - iy0)
    area_a = (a[2] - a[0]) * (a[3] - a[1])
    area_b = (b[2] - b[0]) * (b[3] - b[1])
    return inter / (area_a + area_b - inter)


def dedupe(detections: DetectionSet, iou_threshold: float) -> DetectionSet:
    """Class-aware greedy non-maximum suppression."""
    if not 0.0 < iou_threshold < 1.0:
        raise ValueError(f"iou_threshold must be in (0, 1), got {iou_threshold}")
    order = sorted(detections.items,
                   key=lambda d: (-d.confidence, d.bbox, d.class_name))
    kept: list[Detection] = []
    for det in order:
        if all(box_iou(det.bbox, k.bbox) <= iou_threshold
               for k in kept if k.class_name == det.class_name):
            kept.append(det)
    return DetectionSet(detections.width, detections.height, tuple(kept))


def detection_set_to_dict(detections: DetectionSet) -> dict:
    """Wire form, mirroring the depiction annotation document."""
    objects = []
    for det in detections.items:
        obj: dict = {"class": det.class_name, "bbox": list(det.bbox),
                     "confidence": det.confidence}
        if det.endpoints is not None:
            obj["endpoints"] = [list(det.endpoints[0]), list(det.endpoints[1])]
        if det.text is not None:
            obj["text"] = det.text
        objects.append(obj)
    return {"image": {"w": detections.width, "h": detections.height},
            "objects": objects}
