"""Layered node-link layout with fixed layer assignment.

Links spanning more than one layer are subdivided with dummy nodes so every
drawn segment crosses exactly one layer gap, then per-layer orderings are
improved with alternating barycentric sweeps that keep the best ordering seen
by total crossing count. The geometric pass places layer rows top to bottom
with an inter-layer gap chosen by the layer count (fewer layers, larger gap)
and a fixed within-layer pitch shared by real and dummy nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .bundle import Bounds, Circle, LayoutBundle, Polyline, Shape, TextShape
from .colors import SkipDepiction, assign_colors
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


@dataclass(frozen=True)
class ExpandedGraph:
    """A layered graph plus the dummy vertices routing its multi-layer links.

    Vertices 0..graph.node_count-1 are the real nodes; higher ids are dummies.
    ``chains[link]`` is the full vertex chain a link is drawn through
    (endpoints included); ``segments`` are unit-span (upper, lower) vertex
    pairs, where "upper" is the smaller layer number. Same-layer links have a
    two-vertex chain and no segments.
    """

    graph: LayeredGraph
    layer_of: tuple[int, ...]  # for all vertices, dummies included
    dummy_parent: dict[int, Link]
    chains: dict[Link, tuple[int, ...]]
    segments: tuple[tuple[int, int], ...]
    orders: tuple[tuple[int, ...], ...]  # per-layer vertex order

    @property
    def total_vertices(self) -> int:
        return len(self.layer_of)

    def is_dummy(self, v: int) -> bool:
        return v >= self.graph.node_count

    def positions(self) -> dict[int, int]:
        pos: dict[int, int] = {}
        for layer_order in self.orders:
            for i, v in enumerate(layer_order):
                pos[v] = i
        return pos

    def with_orders(self, orders: list[list[int]]) -> "ExpandedGraph":
        return replace(self, orders=tuple(tuple(o) for o in orders))


def insert_dummy_nodes(g: LayeredGraph) -> ExpandedGraph:
    """Expand multi-layer links into unit-span chains through dummy vertices.

    A forward link from layer a to layer b > a+1 gets dummies in a+1..b-1; a
    backward link from a to b < a gets them in a-1..b+1; proper and
    same-layer links get none.
    """
    layer_of = list(g.layer_of)
    dummy_parent: dict[int, Link] = {}
    chains: dict[Link, tuple[int, ...]] = {}
    segments: list[tuple[int, int]] = []
    next_id = g.node_count

    for link in sorted(g.links):
        src, dst = link
        a, b = g.layer_of[src], g.layer_of[dst]
        if a == b:
            chains[link] = (src, dst)
            continue
        step = 1 if b > a else -1
        chain = [src]
        for layer in range(a + step, b, step):
            dummy_parent[next_id] = link
            layer_of.append(layer)
            chain.append(next_id)
            next_id += 1
        chain.append(dst)
        chains[link] = tuple(chain)
        for u, v in zip(chain, chain[1:]):
            upper, lower = (u, v) if step == 1 else (v, u)
            segments.append((upper, lower))

    orders: list[list[int]] = [[] for _ in range(g.layer_count)]
    for node in range(g.node_count):
        orders[g.layer_of[node] - 1].append(node)
    for dummy in range(g.node_count, next_id):
        orders[layer_of[dummy] - 1].append(dummy)

    return ExpandedGraph(
        graph=g,
        layer_of=tuple(layer_of),
        dummy_parent=dummy_parent,
        chains=chains,
        segments=tuple(segments),
        orders=tuple(tuple(o) for o in orders),
    )


def _segments_by_gap(e: ExpandedGraph) -> list[list[tuple[int, int]]]:
    gaps: list[list[tuple[int, int]]] = [[] for _ in range(e.graph.layer_count - 1)] if e.graph.layer_count > 1 else []
    for upper, lower in e.segments:
        gaps[e.layer_of[upper] - 1].append((upper, lower))
    return gaps


def _inversions(values: list[int]) -> int:
    """Strict inversion count via merge sort."""
    if len(values) < 2:
        return 0
    mid = len(values) // 2
    left, right = values[:mid], values[mid:]
    count = _inversions(left) + _inversions(right)
    left.sort()
    right.sort()
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            i += 1
        else:
            count += len(left) - i
            j += 1
    return count


def count_crossings(e: ExpandedGraph) -> int:
    """Total crossings over all adjacent layer pairs.

    Two segments in a gap cross when their endpoint orders swap sides, i.e.
    (pos(a1)-pos(a2)) * (pos(b1)-pos(b2)) < 0; segments sharing an endpoint
    never cross. Counted as strict inversions of the lower endpoints after
    sorting by (upper, lower), which matches the pairwise definition.
    """
    pos = e.positions()
    total = 0
    for gap in _segments_by_gap(e):
        keyed = sorted((pos[upper], pos[lower]) for upper, lower in gap)
        total += _inversions([lower for _, lower in keyed])
    return total


def barycentric_sweep(e: ExpandedGraph, max_sweeps: int = 10) -> ExpandedGraph:
    """Reduce crossings with alternating top-down/bottom-up barycenter passes.

    Each pass reorders one layer by the mean position of its neighbors in the
    fixed adjacent layer (ties keep the previous order, then node id). The
    best ordering seen is kept, so the result is never worse than the input;
    sweeping stops after a full down+up cycle without improvement.
    """
    result, _ = barycentric_sweep_trace(e, max_sweeps)
    return result


def barycentric_sweep_trace(e: ExpandedGraph, max_sweeps: int = 10) -> tuple[ExpandedGraph, list[int]]:
    """Like :func:`barycentric_sweep` but also returns best-seen crossing counts
    recorded after every half-sweep (useful for convergence checks)."""
    if max_sweeps < 1:
        raise ValueError("max_sweeps must be >= 1")
    L = e.graph.layer_count
    ups: dict[int, list[int]] = {}
    downs: dict[int, list[int]] = {}
    for upper, lower in e.segments:
        downs.setdefault(upper, []).append(lower)
        ups.setdefault(lower, []).append(upper)

    orders = [list(layer) for layer in e.orders]
    best_orders = [list(layer) for layer in orders]
    best = count_crossings(e)
    trace = [best]

    def reorder(layer_idx: int, neighbors: dict[int, list[int]], fixed_idx: int) -> None:
        fixed_pos = {v: i for i, v in enumerate(orders[fixed_idx])}
        current_pos = {v: i for i, v in enumerate(orders[layer_idx])}

        def key(v: int) -> tuple[float, int, int]:
            nbrs = neighbors.get(v, [])
            positions = [fixed_pos[n] for n in nbrs if n in fixed_pos]
            bc = sum(positions) / len(positions) if positions else float(current_pos[v])
            return (bc, current_pos[v], v)

        orders[layer_idx].sort(key=key)

    def snapshot_if_better() -> bool:
        nonlocal best, best_orders
        crossings = count_crossings(e.with_orders(orders))
        trace.append(min(best, crossings))
        if crossings < best:
            best = crossings
            best_orders = [list(layer) for layer in orders]
            return True
        return False

    for _ in range(max_sweeps):
        improved = False
        for layer_idx in range(1, L):
            reorder(layer_idx, ups, layer_idx - 1)
        improved |= snapshot_if_better()
        for layer_idx in range(L - 2, -1, -1):
            reorder(layer_idx, downs, layer_idx + 1)
        improved |= snapshot_if_better()
        if not improved or best == 0:
            break

    return e.with_orders(best_orders), trace


@dataclass(frozen=True)
class NodeLinkParams:
    """Display geometry. Node size and pitch are constant across graphs;
    the inter-layer gap varies with the layer count only."""

    width: float = 2560.0
    height: float = 1600.0
    margin: float = 60.0
    node_radius: float = 7.0
    pitch: float = 24.0
    max_sweeps: int = 10


BACKWARD_STROKE = "#0000ff"
NORMAL_STROKE = "#2a2a2a"
SAME_LAYER_DIP = 0.35  # fraction of the inter-layer gap an arc dips below its row


@dataclass
class NodeLinkLayout:
    params: NodeLinkParams
    expanded: ExpandedGraph
    positions: dict[int, tuple[float, float]]  # all vertices, dummies included
    polylines: dict[Link, tuple[tuple[tuple[float, float], ...], str]]
    bounds: Bounds
    shapes: tuple[Shape, ...]

    def to_bundle(self, markers: dict[str, str] | None = None) -> LayoutBundle:
        return LayoutBundle(
            depiction="nodelink",
            bounds=self.bounds,
            shapes=self.shapes,
            style={"nodeRadius": self.params.node_radius, "pitch": self.params.pitch},
            markers=dict(markers or {}),
        )


def _link_style(g: LayeredGraph, link: Link) -> str:
    cls = classify_link(g, link)
    if cls is LinkClass.BACKWARD_SKIP:
        return "backward"
    if cls is LinkClass.SAME_LAYER_SKIP:
        return "same-layer"
    return "normal"


def layout_node_link(g: LayeredGraph, params: NodeLinkParams | None = None) -> NodeLinkLayout:
    if g.node_count == 0:
        raise DegenerateGraph("graph has no nodes")
    for v in validate(g):
        if v.code in ("EmptyLayer", "LayerOutOfRange", "LayerCountMismatch"):
            raise DegenerateGraph(v.detail)
    params = params or NodeLinkParams()

    expanded = barycentric_sweep(insert_dummy_nodes(g), params.max_sweeps)
    L = g.layer_count
    gap = (params.height - 2 * params.margin) / (L - 1) if L > 1 else 0.0

    def row_y(layer: int) -> float:
        return params.margin + (layer - 1) * gap if L > 1 else params.height / 2

    raw: dict[int, tuple[float, float]] = {}
    for layer_idx, layer_order in enumerate(expanded.orders, start=1):
        y = row_y(layer_idx)
        offset = (len(layer_order) - 1) / 2
        for i, vertex in enumerate(layer_order):
            raw[vertex] = (params.width / 2 + (i - offset) * params.pitch, y)

    min_x = min(x for x, _ in raw.values())
    shift = params.margin - min_x if min_x < params.margin else 0.0
    positions = {v: (x + shift, y) for v, (x, y) in raw.items()}

    polylines: dict[Link, tuple[tuple[tuple[float, float], ...], str]] = {}
    for link in sorted(g.links):
        style = _link_style(g, link)
        if style == "same-layer":
            # Arc swinging past the right end of the two endpoints' span,
            # dipping slightly off-row so the route is visible.
            (x1, y1) = positions[link[0]]
            (x2, _) = positions[link[1]]
            dip = y1 + max(gap, params.pitch) * SAME_LAYER_DIP
            out_x = max(x1, x2) + params.pitch * 0.75
            points = ((x1, y1), (out_x, dip), (x2, y1))
        else:
            points = tuple(positions[v] for v in expanded.chains[link])
        polylines[link] = (points, style)

    shapes: list[Shape] = []
    widths = {"normal": 1.4, "backward": 1.8, "same-layer": 1.4}
    for link in sorted(g.links):
        points, style = polylines[link]
        stroke = BACKWARD_STROKE if style == "backward" else NORMAL_STROKE
        shapes.append(Polyline(points, stroke=stroke, stroke_width=widths[style],
                               element=link_element(link), role="link", cls=style))

    colors = assign_colors(g, SkipDepiction.MIXED)
    for node in range(g.node_count):
        x, y = positions[node]
        layer = g.layer_of[node]
        idx = g.index_in_layer[node]
        element = node_element(node)
        shapes.append(Circle(x, y, params.node_radius, fill=colors.cell_fill(layer, idx),
                             stroke="#2a2a2a", stroke_width=1.0, element=element, role="node"))
        shapes.append(TextShape(x, y - params.node_radius * 1.6, str(idx + 1),
                                size=params.node_radius * 1.3, fill="#555555",
                                role="node-label", label_for=element))

    xs = [p[0] for p in positions.values()]
    ys = [p[1] for p in positions.values()]
    for points, _ in polylines.values():  # same-layer arcs can poke past the rows
        xs.extend(p[0] for p in points)
        ys.extend(p[1] for p in points)
    pad = params.pitch
    bounds = Bounds(max(params.width, max(xs) + pad), max(params.height, max(ys) + pad))

    return NodeLinkLayout(
        params=params,
        expanded=expanded,
        positions=positions,
        polylines=polylines,
        bounds=bounds,
        shapes=tuple(shapes),
    )
