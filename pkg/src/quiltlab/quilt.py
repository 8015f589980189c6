"""Quilt layout: a staircase cascade of proper-link submatrices.

Odd layers run as horizontal strips, even layers as vertical strips. The
submatrix M_k for links from layer k to k+1 sits at the intersection of the
two strips' extents, so each submatrix claims a unique range of either
horizontal or vertical space and the whole depiction stays roughly half the
width and height of the corresponding full adjacency matrix.

Skip links cannot be drawn inside the submatrices. Each one gets a cell in a
*skip band* aligned with its source node's strip run: below the source's
column for odd layers, right of the source's row for even layers, stacked
outward one slot per additional skip from the same node. The cell shows the
destination's encoding (color, color+number, or letter+number depending on
the scheme), which is how a viewer follows the link.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundle import Bounds, Circle, LayoutBundle, Rect, Shape, TextShape
from .colors import ColorMap, SkipDepiction, assign_colors
from .model import (
    DegenerateGraph,
    LayeredGraph,
    Link,
    LinkClass,
    classify_link,
    link_element,
    node_element,
    validate,
)

STRIP_STROKE = "#4a4a4a"
GRID_STROKE = "#c9c9c9"
BAND_FILL = "#f6f6f6"
GLYPH_RADIUS = 0.34  # fraction of the cell size
LABEL_SIZE = 0.48  # fraction of the cell size


@dataclass(frozen=True)
class StripPlacement:
    layer: int
    orientation: str  # "h" or "v"
    x: float
    y: float
    nodes: tuple[int, ...]


@dataclass(frozen=True)
class SubmatrixPlacement:
    index: int  # links from layer index to index+1
    x: float
    y: float
    w: float
    h: float


@dataclass(frozen=True)
class SkipCellPlacement:
    link: Link
    x: float
    y: float


@dataclass
class QuiltLayout:
    style: SkipDepiction
    cell_size: float
    strips: tuple[StripPlacement, ...]
    submatrices: tuple[SubmatrixPlacement, ...]
    skip_cells: tuple[SkipCellPlacement, ...]
    bounds: Bounds
    shapes: tuple[Shape, ...]

    def to_bundle(self, markers: dict[str, str] | None = None) -> LayoutBundle:
        return LayoutBundle(
            depiction=self.style.value,
            bounds=self.bounds,
            shapes=self.shapes,
            style={"cellSize": self.cell_size},
            markers=dict(markers or {}),
        )


def _check_layers(g: LayeredGraph) -> None:
    if g.node_count == 0:
        raise DegenerateGraph("graph has no nodes")
    for v in validate(g):
        if v.code in ("EmptyLayer", "LayerOutOfRange", "LayerCountMismatch"):
            raise DegenerateGraph(v.detail)


def layout_quilt(g: LayeredGraph, style: SkipDepiction, cell_size: float) -> QuiltLayout:
    """Lay a graph out as a quilt. Deterministic; fails on empty layers."""
    _check_layers(g)
    colors = assign_colors(g, style)
    c = cell_size
    sizes = g.layer_sizes()
    L = g.layer_count

    # Strip and submatrix origins in cell units, walking the staircase.
    strip_at: list[tuple[float, float]] = [(0.0, 0.0)]  # origin of layer k+1's strip
    matrix_at: list[tuple[float, float]] = []  # origin of M_(k+1)
    for k in range(1, L):  # placing M_k and layer k+1's strip
        sx, sy = strip_at[k - 1]
        if k % 2 == 1:  # horizontal strip above, matrix below
            matrix_at.append((sx, sy + 1))
            strip_at.append((sx + sizes[k - 1], sy + 1))
        else:  # vertical strip at left, matrix to its right
            matrix_at.append((sx + 1, sy))
            strip_at.append((sx + 1, sy + sizes[k - 1]))

    def orientation(layer: int) -> str:
        return "h" if layer % 2 == 1 else "v"

    def strip_cell(node: int) -> tuple[float, float]:
        layer = g.layer_of[node]
        sx, sy = strip_at[layer - 1]
        i = g.index_in_layer[node]
        return (sx + i, sy) if orientation(layer) == "h" else (sx, sy + i)

    strips = tuple(
        StripPlacement(k, orientation(k), strip_at[k - 1][0] * c, strip_at[k - 1][1] * c, g.layers[k - 1])
        for k in range(1, L + 1)
    )
    submatrices = tuple(
        SubmatrixPlacement(
            k,
            matrix_at[k - 1][0] * c,
            matrix_at[k - 1][1] * c,
            (sizes[k] if k % 2 == 0 else sizes[k - 1]) * c,
            (sizes[k - 1] if k % 2 == 0 else sizes[k]) * c,
        )
        for k in range(1, L)
    )

    proper_links: list[Link] = []
    skips_by_layer: dict[int, list[Link]] = {}
    for link in sorted(g.links):
        if classify_link(g, link) is LinkClass.PROPER:
            proper_links.append(link)
        else:
            skips_by_layer.setdefault(g.layer_of[link[0]], []).append(link)

    # Skip cells stack outward from the end of the source's strip run: below
    # the matrix column for odd layers, right of the matrix row for even ones.
    skip_cells: list[SkipCellPlacement] = []
    for layer in sorted(skips_by_layer):
        sx, sy = strip_at[layer - 1]
        if orientation(layer) == "h":
            base_y = matrix_at[layer - 1][1] + sizes[layer] if layer < L else sy + 1
        else:
            base_x = matrix_at[layer - 1][0] + sizes[layer] if layer < L else sx + 1
        slots: dict[int, int] = {}
        for link in skips_by_layer[layer]:
            src = link[0]
            slot = slots.get(src, 0)
            slots[src] = slot + 1
            cx_cell, cy_cell = strip_cell(src)
            if orientation(layer) == "h":
                skip_cells.append(SkipCellPlacement(link, cx_cell * c, (base_y + slot) * c))
            else:
                skip_cells.append(SkipCellPlacement(link, (base_x + slot) * c, cy_cell * c))

    shapes = _emit_shapes(g, colors, c, strips, submatrices, skip_cells, proper_links, matrix_at)

    max_x = 0.0
    max_y = 0.0
    for strip in strips:
        n = len(strip.nodes)
        w, h = (n * c, c) if strip.orientation == "h" else (c, n * c)
        max_x = max(max_x, strip.x + w)
        max_y = max(max_y, strip.y + h)
    for m in submatrices:
        max_x = max(max_x, m.x + m.w)
        max_y = max(max_y, m.y + m.h)
    for cell in skip_cells:
        max_x = max(max_x, cell.x + c)
        max_y = max(max_y, cell.y + c)

    return QuiltLayout(
        style=style,
        cell_size=c,
        strips=strips,
        submatrices=submatrices,
        skip_cells=tuple(skip_cells),
        bounds=Bounds(max_x, max_y),
        shapes=shapes,
    )


def _emit_shapes(
    g: LayeredGraph,
    colors: ColorMap,
    c: float,
    strips: tuple[StripPlacement, ...],
    submatrices: tuple[SubmatrixPlacement, ...],
    skip_cells: list[SkipCellPlacement],
    proper_links: list[Link],
    matrix_at: list[tuple[float, float]],
) -> tuple[Shape, ...]:
    shapes: list[Shape] = []

    for m in submatrices:
        shapes.append(Rect(m.x, m.y, m.w, m.h, fill="#ffffff", stroke=GRID_STROKE, stroke_width=c * 0.05,
                           role="submatrix"))

    for strip in strips:
        for i, node in enumerate(strip.nodes):
            x = strip.x + (i * c if strip.orientation == "h" else 0.0)
            y = strip.y + (i * c if strip.orientation == "v" else 0.0)
            layer = strip.layer
            element = node_element(node)
            shapes.append(Rect(x, y, c, c, fill=colors.cell_fill(layer, i), stroke=STRIP_STROKE,
                               stroke_width=c * 0.06, element=element, role="node"))
            label = colors.node_label(layer, i)
            if label is not None:
                shapes.append(TextShape(x + c / 2, y + c * 0.68, label, size=c * LABEL_SIZE,
                                        fill="#000000", role="node-label", label_for=element))

    for link in proper_links:
        src, dst = link
        k = g.layer_of[src]
        mx, my = matrix_at[k - 1]
        iu = g.index_in_layer[src]
        iv = g.index_in_layer[dst]
        col, row = (iu, iv) if k % 2 == 1 else (iv, iu)
        shapes.append(Circle((mx + col + 0.5) * c, (my + row + 0.5) * c, c * GLYPH_RADIUS,
                             fill="#000000", element=link_element(link), role="link"))

    for cell in skip_cells:
        src, dst = cell.link
        dst_layer = g.layer_of[dst]
        dst_index = g.index_in_layer[dst]
        shapes.append(Rect(cell.x, cell.y, c, c, fill=BAND_FILL, stroke=GRID_STROKE,
                           stroke_width=c * 0.05, role="skip-cell"))
        element = link_element(cell.link)
        shapes.append(Circle(cell.x + c / 2, cell.y + c / 2, c * GLYPH_RADIUS,
                             fill=colors.cell_fill(dst_layer, dst_index), stroke=STRIP_STROKE,
                             stroke_width=c * 0.04, element=element, role="link"))
        label = colors.node_label(dst_layer, dst_index)
        if label is not None:
            shapes.append(TextShape(cell.x + c / 2, cell.y + c * 0.68, label, size=c * LABEL_SIZE,
                                    fill="#000000", role="skip-label", label_for=element))

    return tuple(shapes)


def fits_display(layout: QuiltLayout, bounds: tuple[float, float]) -> bool:
    """True iff the layout's bounding box fits inside (width, height)."""
    return layout.bounds.width <= bounds[0] and layout.bounds.height <= bounds[1]
