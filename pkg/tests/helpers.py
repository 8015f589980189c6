"""Builders and independent oracles shared across the test suite.

The oracles here deliberately avoid the library's own code paths: path
enumeration goes through networkx, crossing counts through a geometric
orientation test, and counting through brute force over all node pairs.
"""

from __future__ import annotations

import itertools
from random import Random

import networkx as nx

from quiltlab.generate import PathConstraints
from quiltlab.model import LayeredGraph, Link


def make_graph(layer_of: list[int], links: list[tuple[int, int]]) -> LayeredGraph:
    return LayeredGraph(len(layer_of), max(layer_of), tuple(layer_of), tuple(links))


def random_layered_graph(rng: Random, max_nodes: int = 12, max_layers: int = 4,
                         link_prob: float = 0.35) -> LayeredGraph:
    """Small random layered graph with every layer populated."""
    layers = rng.randint(2, max_layers)
    n = rng.randint(layers, max_nodes)
    layer_of = list(range(1, layers + 1)) + [rng.randint(1, layers) for _ in range(n - layers)]
    rng.shuffle(layer_of)
    links = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < link_prob
    ]
    return make_graph(layer_of, links)


def to_nx(g: LayeredGraph) -> nx.DiGraph:
    dg = nx.DiGraph()
    dg.add_nodes_from(range(g.node_count))
    dg.add_edges_from(g.links)
    return dg


def oracle_good_paths(g: LayeredGraph, c: PathConstraints) -> set[tuple[Link, ...]]:
    """All good paths by brute-force simple-path enumeration (networkx)."""
    dg = to_nx(g)
    if c.source not in dg or c.destination not in dg:
        return set()
    found: set[tuple[Link, ...]] = set()
    for node_path in nx.all_simple_paths(dg, c.source, c.destination, cutoff=c.max_links):
        links = tuple(zip(node_path, node_path[1:]))
        if not c.min_links <= len(links) <= c.max_links:
            continue
        if c.require_skip and not any(g.layer_of[b] != g.layer_of[a] + 1 for a, b in links):
            continue
        found.add(links)
    return found


def oracle_possible_proper(g: LayeredGraph) -> int:
    return sum(
        1
        for u in range(g.node_count)
        for v in range(g.node_count)
        if g.layer_of[v] == g.layer_of[u] + 1
    )


def _orient(p, q, r) -> int:
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def _segments_properly_cross(a, b) -> bool:
    """Strict interior crossing of two segments; shared endpoints never cross."""
    p1, p2 = a
    q1, q2 = b
    if p1 in (q1, q2) or p2 in (q1, q2):
        return False
    return (
        _orient(p1, p2, q1) * _orient(p1, p2, q2) < 0
        and _orient(q1, q2, p1) * _orient(q1, q2, p2) < 0
    )


def oracle_crossings(expanded) -> int:
    """Geometric crossing count: draw each segment between its rows and test
    every pair for proper intersection."""
    pos = expanded.positions()
    total = 0
    segments = [
        ((pos[upper], float(expanded.layer_of[upper])), (pos[lower], float(expanded.layer_of[lower])))
        for upper, lower in expanded.segments
    ]
    for a, b in itertools.combinations(segments, 2):
        if a[0][1] != b[0][1]:  # different gaps never cross
            continue
        if _segments_properly_cross(a, b):
            total += 1
    return total

