"""Layered-graph data model shared by the generator, layouts, and trial harness.

A layered graph assigns every node to a discrete layer 1..L. Links from layer
k to layer k+1 are *proper*; everything else (forward jumps of two or more
layers, same-layer links, backward links) is a *skip* link.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Any

Link = tuple[int, int]


class InvalidLink(ValueError):
    """A link references a node id outside the graph."""


class DegenerateGraph(ValueError):
    """A layout was asked for a graph with an empty layer or no nodes."""


class LinkClass(Enum):
    """Classification of a directed link relative to the layer assignment."""

    PROPER = "proper"
    FORWARD_SKIP = "forward-skip"
    SAME_LAYER_SKIP = "same-layer-skip"
    BACKWARD_SKIP = "backward-skip"

    @property
    def is_skip(self) -> bool:
        return self is not LinkClass.PROPER


@dataclass(frozen=True)
class LayeredGraph:
    """Directed graph with a fixed layer assignment.

    Node ids are dense integers 0..node_count-1; ``layer_of[n]`` is the
    1-based layer of node n. ``links`` is an ordered collection of unique
    directed (src, dst) pairs without self-loops. Instances are immutable
    after construction and safe to share across threads; use :func:`validate`
    to check well-formedness.
    """

    node_count: int
    layer_count: int
    layer_of: tuple[int, ...]
    links: tuple[Link, ...]

    @cached_property
    def layers(self) -> tuple[tuple[int, ...], ...]:
        """Nodes of each layer in node-id order; ``layers[k-1]`` is layer k."""
        buckets: list[list[int]] = [[] for _ in range(self.layer_count)]
        for node, layer in enumerate(self.layer_of):
            if 1 <= layer <= self.layer_count:
                buckets[layer - 1].append(node)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def index_in_layer(self) -> tuple[int, ...]:
        """0-based position of each node within its layer (node-id order)."""
        index = [0] * self.node_count
        for layer_nodes in self.layers:
            for i, node in enumerate(layer_nodes):
                index[node] = i
        return tuple(index)

    @cached_property
    def link_set(self) -> frozenset[Link]:
        return frozenset(self.links)

    @cached_property
    def out_links(self) -> tuple[tuple[Link, ...], ...]:
        """Outgoing links per node, sorted by destination id."""
        adj: list[list[Link]] = [[] for _ in range(self.node_count)]
        for src, dst in self.links:
            adj[src].append((src, dst))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def in_links(self) -> tuple[tuple[Link, ...], ...]:
        """Incoming links per node, sorted by source id."""
        adj: list[list[Link]] = [[] for _ in range(self.node_count)]
        for src, dst in self.links:
            adj[dst].append((src, dst))
        return tuple(tuple(sorted(a)) for a in adj)

    def layer(self, node: int) -> int:
        if not 0 <= node < self.node_count:
            raise InvalidLink(f"unknown node id {node}")
        return self.layer_of[node]

    def layer_sizes(self) -> tuple[int, ...]:
        return tuple(len(nodes) for nodes in self.layers)


def classify_link(g: LayeredGraph, link: Link) -> LinkClass:
    """Classify a (src, dst) pair against g's layer assignment.

    Works for any node pair, whether or not the link is present in g.links;
    raises :class:`InvalidLink` for unknown node ids.
    """
    src, dst = link
    delta = g.layer(dst) - g.layer(src)
    if delta == 1:
        return LinkClass.PROPER
    if delta > 1:
        return LinkClass.FORWARD_SKIP
    if delta == 0:
        return LinkClass.SAME_LAYER_SKIP
    return LinkClass.BACKWARD_SKIP


def possible_proper_links(g: LayeredGraph) -> int:
    """Number of ordered node pairs spanning exactly one layer downward.

    Equals sum over k of |layer k| * |layer k+1|.
    """
    sizes = g.layer_sizes()
    return sum(sizes[k] * sizes[k + 1] for k in range(len(sizes) - 1))


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str


def validate(g: LayeredGraph) -> list[Violation]:
    """Check structural invariants; an empty list means the graph is valid.

    Reported codes: LayerCountMismatch, LayerOutOfRange, EmptyLayer,
    InvalidLink, SelfLoop, DuplicateLink.
    """
    violations: list[Violation] = []
    if len(g.layer_of) != g.node_count:
        violations.append(
            Violation("LayerCountMismatch", f"layer_of has {len(g.layer_of)} entries for {g.node_count} nodes")
        )
    for node, layer in enumerate(g.layer_of):
        if not 1 <= layer <= g.layer_count:
            violations.append(Violation("LayerOutOfRange", f"node {node} in layer {layer} of {g.layer_count}"))
    for k, nodes in enumerate(g.layers, start=1):
        if not nodes:
            violations.append(Violation("EmptyLayer", f"layer {k} has no nodes"))
    seen: set[Link] = set()
    for src, dst in g.links:
        if not (0 <= src < g.node_count and 0 <= dst < g.node_count):
            violations.append(Violation("InvalidLink", f"link ({src}, {dst}) references an unknown node"))
            continue
        if src == dst:
            violations.append(Violation("SelfLoop", f"self-loop on node {src}"))
        if (src, dst) in seen:
            violations.append(Violation("DuplicateLink", f"duplicate link ({src}, {dst})"))
        seen.add((src, dst))
    return violations


# --- element ids -------------------------------------------------------------
#
# Every clickable thing in a depiction carries one of these ids; the layouts,
# renderer, path engine, HTTP API and browser client all share the namespace.
# Nodes: "n<id>".  Links: "e<src>-<dst>".


def node_element(node: int) -> str:
    return f"n{node}"


def link_element(link: Link) -> str:
    return f"e{link[0]}-{link[1]}"


def parse_element(element: str) -> tuple[str, Any] | None:
    """Parse an element id into ("node", id) or ("link", (src, dst)).

    Returns None for strings outside the namespace.
    """
    if element.startswith("n"):
        try:
            return ("node", int(element[1:]))
        except ValueError:
            return None
    if element.startswith("e"):
        parts = element[1:].split("-")
        if len(parts) != 2:
            return None
        try:
            return ("link", (int(parts[0]), int(parts[1])))
        except ValueError:
            return None
    return None


# --- graph interchange file ---------------------------------------------------
#
# Field names are fixed in docs/formats.md. Serialization is canonical
# (sorted keys, fixed separators, trailing newline) so identical inputs give
# byte-identical files.

GRAPH_FORMAT = "layered-graph/1"


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def graph_to_json(g: LayeredGraph, provenance: dict[str, Any] | None = None) -> str:
    doc: dict[str, Any] = {
        "format": GRAPH_FORMAT,
        "nodeCount": g.node_count,
        "layerCount": g.layer_count,
        "layerOf": list(g.layer_of),
        "links": [[src, dst] for src, dst in g.links],
    }
    if provenance:
        doc.update(provenance)
    return canonical_json(doc)


def graph_from_json(text: str) -> tuple[LayeredGraph, dict[str, Any]]:
    """Parse an interchange document; returns (graph, provenance fields)."""
    doc = json.loads(text)
    if doc.get("format") != GRAPH_FORMAT:
        raise ValueError(f"unsupported graph format {doc.get('format')!r}")
    g = LayeredGraph(
        node_count=doc["nodeCount"],
        layer_count=doc["layerCount"],
        layer_of=tuple(doc["layerOf"]),
        links=tuple((src, dst) for src, dst in doc["links"]),
    )
    provenance = {
        k: v for k, v in doc.items() if k not in ("format", "nodeCount", "layerCount", "layerOf", "links")
    }
    return g, provenance


def write_graph_file(path: str | Path, g: LayeredGraph, provenance: dict[str, Any] | None = None) -> None:
    Path(path).write_text(graph_to_json(g, provenance), encoding="utf-8")


def read_graph_file(path: str | Path) -> tuple[LayeredGraph, dict[str, Any]]:
    return graph_from_json(Path(path).read_text(encoding="utf-8"))
