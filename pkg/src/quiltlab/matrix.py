"""Centered-matrix layout: nodes along the diagonal, links as off-diagonal cells.

Nodes are ordered along the diagonal by (layer, node id), so layers form
contiguous diagonal blocks, forward links land above the diagonal and
backward links below it. The cell size is fixed per session so that the
largest graphs fill the display height and smaller graphs simply occupy less
of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bundle import Bounds, LayoutBundle, Rect, Shape, TextShape
from .colors import assign_colors, blend_toward_white
from .colors import SkipDepiction
from .model import DegenerateGraph, LayeredGraph, link_element, node_element, validate

BLOCK_TINT = 0.82  # how far layer block fills are blended toward white
LABEL_SIZE = 0.48


@dataclass(frozen=True)
class LayerBlock:
    layer: int
    start: int  # first diagonal index
    end: int  # one past the last diagonal index


@dataclass
class CenteredMatrixLayout:
    cell_size: float
    diagonal_index: tuple[int, ...]  # node id -> diagonal position
    blocks: tuple[LayerBlock, ...]
    bounds: Bounds
    shapes: tuple[Shape, ...]

    def to_bundle(self, markers: dict[str, str] | None = None) -> LayoutBundle:
        return LayoutBundle(
            depiction="matrix",
            bounds=self.bounds,
            shapes=self.shapes,
            style={"cellSize": self.cell_size},
            markers=dict(markers or {}),
        )


def matrix_cell_size(display_height: float, max_nodes: int) -> float:
    """Session-wide cell size: the largest graph fills the vertical extent."""
    if max_nodes <= 0:
        raise ValueError("max_nodes must be positive")
    return display_height / max_nodes


def layout_centered_matrix(g: LayeredGraph, cell_size: float) -> CenteredMatrixLayout:
    if g.node_count == 0:
        raise DegenerateGraph("graph has no nodes")
    for v in validate(g):
        if v.code in ("EmptyLayer", "LayerOutOfRange", "LayerCountMismatch"):
            raise DegenerateGraph(v.detail)

    c = cell_size
    order = sorted(range(g.node_count), key=lambda n: (g.layer_of[n], n))
    diag = [0] * g.node_count
    for pos, node in enumerate(order):
        diag[node] = pos

    blocks: list[LayerBlock] = []
    start = 0
    for layer, layer_nodes in enumerate(g.layers, start=1):
        blocks.append(LayerBlock(layer, start, start + len(layer_nodes)))
        start += len(layer_nodes)

    colors = assign_colors(g, SkipDepiction.MIXED)
    shapes: list[Shape] = []

    for block in blocks:
        extent = (block.end - block.start) * c
        shapes.append(
            Rect(block.start * c, block.start * c, extent, extent,
                 fill=blend_toward_white(colors.layer_fill(block.layer), BLOCK_TINT),
                 stroke="#b0b0b0", stroke_width=c * 0.05, role="layer-block")
        )

    for node in order:
        pos = diag[node]
        layer = g.layer_of[node]
        idx = g.index_in_layer[node]
        element = node_element(node)
        shapes.append(Rect(pos * c, pos * c, c, c, fill=colors.cell_fill(layer, idx),
                           stroke="#4a4a4a", stroke_width=c * 0.06, element=element, role="node"))
        shapes.append(TextShape((pos + 0.5) * c, (pos + 0.68) * c, str(idx + 1), size=c * LABEL_SIZE,
                                fill="#000000", role="node-label", label_for=element))

    for link in sorted(g.links):
        src, dst = link
        row, col = diag[src], diag[dst]
        shapes.append(Rect(col * c, row * c, c, c, fill="#1a1a1a",
                           element=link_element(link), role="link"))

    extent = g.node_count * c
    return CenteredMatrixLayout(
        cell_size=c,
        diagonal_index=tuple(diag),
        blocks=tuple(blocks),
        bounds=Bounds(extent, extent),
        shapes=tuple(shapes),
    )
