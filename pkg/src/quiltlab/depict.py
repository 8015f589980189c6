"""Dispatch from a depiction name to a layout bundle.

All depictions of one session share a display budget: quilts and matrices use
the same cell size (display height / 200 by default), node-link diagrams
spread their layer rows over the full display height.
"""

from __future__ import annotations

from .bundle import LayoutBundle
from .colors import SkipDepiction
from .generate import DisplayBounds
from .matrix import layout_centered_matrix
from .model import LayeredGraph, node_element
from .nodelink import NodeLinkParams, layout_node_link
from .quilt import layout_quilt

DEPICTION_CHOICES = ("quilt-color", "quilt-mixed", "quilt-text", "matrix", "nodelink")


def make_bundle(
    g: LayeredGraph,
    depiction: str,
    bounds: DisplayBounds,
    source: int | None = None,
    destination: int | None = None,
) -> LayoutBundle:
    markers: dict[str, str] = {}
    if source is not None:
        markers["source"] = node_element(source)
    if destination is not None:
        markers["destination"] = node_element(destination)

    if depiction in ("quilt-color", "quilt-mixed", "quilt-text"):
        return layout_quilt(g, SkipDepiction(depiction), bounds.cell_size).to_bundle(markers)
    if depiction == "matrix":
        return layout_centered_matrix(g, bounds.cell_size).to_bundle(markers)
    if depiction == "nodelink":
        params = NodeLinkParams(width=bounds.width, height=bounds.height)
        return layout_node_link(g, params).to_bundle(markers)
    raise ValueError(f"unknown depiction {depiction!r}; choose from {DEPICTION_CHOICES}")
