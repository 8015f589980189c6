"""Layout bundle: the flat shape list shared by all three depictions.

A bundle is what a layout module hands to the SVG renderer or the browser
client: a list of rectangles, circles, text runs and polylines with absolute
geometry, fills, and optional element ids for hit-testing. Field names of the
JSON form are fixed in docs/formats.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Union

BUNDLE_FORMAT = "layout-bundle/1"


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    w: float
    h: float
    fill: str | None = None
    stroke: str | None = None
    stroke_width: float | None = None
    element: str | None = None
    role: str = ""


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float
    fill: str | None = None
    stroke: str | None = None
    stroke_width: float | None = None
    element: str | None = None
    role: str = ""


@dataclass(frozen=True)
class TextShape:
    x: float
    y: float
    text: str
    size: float
    fill: str = "#000000"
    anchor: str = "middle"
    element: str | None = None
    role: str = ""
    label_for: str | None = None


@dataclass(frozen=True)
class Polyline:
    points: tuple[tuple[float, float], ...]
    stroke: str
    stroke_width: float
    element: str | None = None
    role: str = ""
    cls: str = "normal"


Shape = Union[Rect, Circle, TextShape, Polyline]


@dataclass(frozen=True)
class Bounds:
    width: float
    height: float


def shape_bbox(shape: Shape) -> tuple[float, float, float, float]:
    """Axis-aligned (x0, y0, x1, y1) box of a shape."""
    if isinstance(shape, Rect):
        return (shape.x, shape.y, shape.x + shape.w, shape.y + shape.h)
    if isinstance(shape, Circle):
        return (shape.cx - shape.r, shape.cy - shape.r, shape.cx + shape.r, shape.cy + shape.r)
    if isinstance(shape, TextShape):
        # A text run has no layout-independent extent; treat it as its anchor point.
        return (shape.x, shape.y, shape.x, shape.y)
    xs = [p[0] for p in shape.points]
    ys = [p[1] for p in shape.points]
    return (min(xs), min(ys), max(xs), max(ys))


def rects_overlap(a: tuple[float, float, float, float], b: tuple[float, float, float, float]) -> bool:
    """Strict interior overlap of two (x0, y0, x1, y1) boxes."""
    return a[0] < b[2] and b[0] < a[2] and a[1] < b[3] and b[1] < a[3]


@dataclass
class LayoutBundle:
    depiction: str
    bounds: Bounds
    shapes: tuple[Shape, ...]
    style: dict[str, Any] = field(default_factory=dict)
    markers: dict[str, str] = field(default_factory=dict)

    def element_index(self) -> dict[str, Shape]:
        """Map element id -> its unique carrying shape."""
        index: dict[str, Shape] = {}
        for shape in self.shapes:
            if shape.element is not None:
                if shape.element in index:
                    raise ValueError(f"element {shape.element} carried by more than one shape")
                index[shape.element] = shape
        return index

    def labels_for(self, element: str) -> list[TextShape]:
        return [s for s in self.shapes if isinstance(s, TextShape) and s.label_for == element]

    def to_json(self) -> str:
        doc = {
            "format": BUNDLE_FORMAT,
            "depiction": self.depiction,
            "bounds": {"width": _num(self.bounds.width), "height": _num(self.bounds.height)},
            "style": self.style,
            "markers": self.markers,
            "shapes": [_shape_to_dict(s) for s in self.shapes],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "LayoutBundle":
        doc = json.loads(text)
        if doc.get("format") != BUNDLE_FORMAT:
            raise ValueError(f"unsupported bundle format {doc.get('format')!r}")
        return LayoutBundle(
            depiction=doc["depiction"],
            bounds=Bounds(doc["bounds"]["width"], doc["bounds"]["height"]),
            shapes=tuple(_shape_from_dict(d) for d in doc["shapes"]),
            style=doc.get("style", {}),
            markers=doc.get("markers", {}),
        )


def _num(v: float) -> float:
    """Round coordinates for a canonical JSON form (byte-stable output)."""
    return round(v + 0.0, 4)


def _shape_to_dict(shape: Shape) -> dict[str, Any]:
    if isinstance(shape, Rect):
        return {
            "kind": "rect",
            "x": _num(shape.x),
            "y": _num(shape.y),
            "w": _num(shape.w),
            "h": _num(shape.h),
            "fill": shape.fill,
            "stroke": shape.stroke,
            "strokeWidth": None if shape.stroke_width is None else _num(shape.stroke_width),
            "element": shape.element,
            "role": shape.role,
        }
    if isinstance(shape, Circle):
        return {
            "kind": "circle",
            "cx": _num(shape.cx),
            "cy": _num(shape.cy),
            "r": _num(shape.r),
            "fill": shape.fill,
            "stroke": shape.stroke,
            "strokeWidth": None if shape.stroke_width is None else _num(shape.stroke_width),
            "element": shape.element,
            "role": shape.role,
        }
    if isinstance(shape, TextShape):
        return {
            "kind": "text",
            "x": _num(shape.x),
            "y": _num(shape.y),
            "text": shape.text,
            "size": _num(shape.size),
            "fill": shape.fill,
            "anchor": shape.anchor,
            "element": shape.element,
            "role": shape.role,
            "labelFor": shape.label_for,
        }
    return {
        "kind": "polyline",
        "points": [[_num(x), _num(y)] for x, y in shape.points],
        "stroke": shape.stroke,
        "strokeWidth": _num(shape.stroke_width),
        "element": shape.element,
        "role": shape.role,
        "cls": shape.cls,
    }


def _shape_from_dict(d: dict[str, Any]) -> Shape:
    kind = d["kind"]
    if kind == "rect":
        return Rect(d["x"], d["y"], d["w"], d["h"], d.get("fill"), d.get("stroke"),
                    d.get("strokeWidth"), d.get("element"), d.get("role", ""))
    if kind == "circle":
        return Circle(d["cx"], d["cy"], d["r"], d.get("fill"), d.get("stroke"),
                      d.get("strokeWidth"), d.get("element"), d.get("role", ""))
    if kind == "text":
        return TextShape(d["x"], d["y"], d["text"], d["size"], d.get("fill", "#000000"),
                         d.get("anchor", "middle"), d.get("element"), d.get("role", ""), d.get("labelFor"))
    if kind == "polyline":
        return Polyline(tuple((p[0], p[1]) for p in d["points"]), d["stroke"], d["strokeWidth"],
                        d.get("element"), d.get("role", ""), d.get("cls", "normal"))
    raise ValueError(f"unknown shape kind {kind!r}")
