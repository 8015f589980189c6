"""Deterministic SVG emission for layout bundles.

Output is a fixed SVG 1.1 subset (rect, circle, polyline, text, group) with
three groups: ``base`` (the depiction, independent of any interaction),
``overlay`` (red restyling of highlighted elements), and ``markers`` (source
and destination indicators in the style of the bundle's depiction). All
coordinates are formatted with two fixed decimal places so identical inputs
produce byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

from .bundle import Circle, LayoutBundle, Polyline, Rect, Shape, TextShape, shape_bbox

HIGHLIGHT = "#ff0000"
EPS = 1e-6


class ShapeOutOfBounds(ValueError):
    """A bundle shape extends beyond the render canvas."""


@dataclass(frozen=True)
class RenderOptions:
    highlight: frozenset[str] = field(default_factory=frozenset)
    source: str | None = None  # element id; defaults to the bundle marker
    destination: str | None = None
    canvas: tuple[float, float] | None = None


def _f(v: float) -> str:
    return f"{v + 0.0:.2f}"


def _attrs(**kv: str | None) -> str:
    return "".join(f' {k.replace("_", "-")}="{v}"' for k, v in kv.items() if v is not None)


def _shape_svg(shape: Shape, svg_id: str | None = None, fill_override: str | None = None,
               stroke_override: str | None = None) -> str:
    ident = svg_id if svg_id is not None else shape.element
    data = shape.element
    if isinstance(shape, Rect):
        fill = fill_override or shape.fill or "none"
        stroke = stroke_override or shape.stroke
        return "<rect{}/>".format(_attrs(
            id=ident, data_element=data, x=_f(shape.x), y=_f(shape.y),
            width=_f(shape.w), height=_f(shape.h), fill=fill, stroke=stroke,
            stroke_width=None if shape.stroke_width is None else _f(shape.stroke_width)))
    if isinstance(shape, Circle):
        fill = fill_override or shape.fill or "none"
        stroke = stroke_override or shape.stroke
        return "<circle{}/>".format(_attrs(
            id=ident, data_element=data, cx=_f(shape.cx), cy=_f(shape.cy), r=_f(shape.r),
            fill=fill, stroke=stroke,
            stroke_width=None if shape.stroke_width is None else _f(shape.stroke_width)))
    if isinstance(shape, TextShape):
        fill = fill_override or shape.fill
        body = escape(shape.text)
        return "<text{}>{}</text>".format(_attrs(
            id=ident, data_element=data, x=_f(shape.x), y=_f(shape.y),
            font_size=_f(shape.size), font_family="Helvetica, Arial, sans-serif",
            text_anchor=shape.anchor, fill=fill), body)
    points = " ".join(f"{_f(x)},{_f(y)}" for x, y in shape.points)
    return "<polyline{}/>".format(_attrs(
        id=ident, data_element=data, **{"class": shape.cls},
        points=points, fill="none", stroke=stroke_override or shape.stroke,
        stroke_width=_f(shape.stroke_width)))


def _highlight_svg(shape: Shape, element: str) -> str:
    if isinstance(shape, Polyline):
        return _shape_svg(shape, svg_id=f"hl-{element}", stroke_override=HIGHLIGHT)
    return _shape_svg(shape, svg_id=f"hl-{element}", fill_override=HIGHLIGHT)


def _marker_svg(bundle: LayoutBundle, element: str, kind: str, lines: list[str]) -> None:
    """Append marker shapes for the source or destination node.

    Quilt markers follow the skip scheme: a white dot for color-only, the
    node's label in white for mixed, in red for text-only. Matrix and
    node-link depictions get a red (source) or black (destination) box plus
    the node's number in white.
    """
    index = bundle.element_index()
    if element not in index:
        raise ValueError(f"marker element {element} not in bundle")
    shape = index[element]
    x0, y0, x1, y1 = shape_bbox(shape)
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    depiction = bundle.depiction
    labels = bundle.labels_for(element)

    if depiction == "quilt-color":
        r = 0.18 * min(x1 - x0, y1 - y0)
        lines.append("<circle{}/>".format(_attrs(
            id=f"mk-{kind}", cx=_f(cx), cy=_f(cy), r=_f(r), fill="#ffffff")))
        return
    if depiction in ("quilt-mixed", "quilt-text"):
        color = "#ffffff" if depiction == "quilt-mixed" else HIGHLIGHT
        for i, label in enumerate(labels):
            lines.append(_shape_svg(
                TextShape(label.x, label.y, label.text, label.size, fill=color, anchor=label.anchor),
                svg_id=f"mk-{kind}-{i}"))
        return
    # matrix / nodelink: red box for the source, black for the destination,
    # white number on both.
    box = HIGHLIGHT if kind == "source" else "#000000"
    pad = 0.15 * max(x1 - x0, y1 - y0)
    lines.append("<rect{}/>".format(_attrs(
        id=f"mk-{kind}", x=_f(x0 - pad), y=_f(y0 - pad),
        width=_f(x1 - x0 + 2 * pad), height=_f(y1 - y0 + 2 * pad),
        fill="none", stroke=box, stroke_width=_f(pad * 0.6 + 1.0))))
    number = labels[0].text if labels else ""
    lines.append(_shape_svg(
        TextShape(cx, cy + 0.3 * (y1 - y0 or 10.0) * 0.5, number, (y1 - y0 or 14.0) * 0.55,
                  fill="#ffffff", anchor="middle"),
        svg_id=f"mk-{kind}-label"))


def render(bundle: LayoutBundle, opts: RenderOptions | None = None) -> str:
    """Render a bundle to an SVG document string.

    Raises :class:`ShapeOutOfBounds` when a shape exceeds the canvas (the
    bundle bounds unless overridden in the options).
    """
    opts = opts or RenderOptions()
    canvas = opts.canvas or (bundle.bounds.width, bundle.bounds.height)
    cw, ch = canvas

    for shape in bundle.shapes:
        if isinstance(shape, TextShape):
            continue  # text extent is font-dependent; anchors are checked below
        x0, y0, x1, y1 = shape_bbox(shape)
        if x0 < -EPS or y0 < -EPS or x1 > cw + EPS or y1 > ch + EPS:
            raise ShapeOutOfBounds(f"{type(shape).__name__} spans ({x0}, {y0})..({x1}, {y1})")
    for shape in bundle.shapes:
        if isinstance(shape, TextShape) and not (-EPS <= shape.x <= cw + EPS and -EPS <= shape.y <= ch + EPS):
            raise ShapeOutOfBounds(f"text anchor at ({shape.x}, {shape.y})")

    lines: list[str] = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(cw)}" height="{_f(ch)}" viewBox="0 0 {_f(cw)} {_f(ch)}">'
    )
    lines.append(f'<rect x="0.00" y="0.00" width="{_f(cw)}" height="{_f(ch)}" fill="#ffffff"/>')

    lines.append('<g id="base">')
    for shape in bundle.shapes:
        lines.append(_shape_svg(shape))
    lines.append("</g>")

    lines.append('<g id="overlay">')
    index = bundle.element_index()
    for element in sorted(opts.highlight):
        shape = index.get(element)
        if shape is None:
            continue
        lines.append(_highlight_svg(shape, element))
        for i, label in enumerate(bundle.labels_for(element)):
            lines.append(_shape_svg(
                TextShape(label.x, label.y, label.text, label.size, fill="#ffffff", anchor=label.anchor),
                svg_id=f"hll-{element}-{i}"))
    lines.append("</g>")

    lines.append('<g id="markers">')
    source = opts.source or bundle.markers.get("source")
    destination = opts.destination or bundle.markers.get("destination")
    if source:
        _marker_svg(bundle, source, "source", lines)
    if destination:
        _marker_svg(bundle, destination, "destination", lines)
    lines.append("</g>")

    lines.append("</svg>")
    return "\n".join(lines) + "\n"
