"""Centered matrix: diagonal placement, link cells, blocks, scaling."""

from __future__ import annotations

from random import Random

import pytest

from quiltlab.bundle import Rect
from quiltlab.matrix import layout_centered_matrix, matrix_cell_size
from quiltlab.model import DegenerateGraph, LayeredGraph, link_element

from helpers import make_graph, random_layered_graph


class TestDiagonalOrder:
    def test_three_node_chain(self):
        g = make_graph([1, 2, 3], [(0, 1), (1, 2)])
        layout = layout_centered_matrix(g, 10.0)
        assert layout.diagonal_index == (0, 1, 2)
        cells = {s.element: s for s in layout.shapes if isinstance(s, Rect) and s.role == "node"}
        assert (cells["n0"].x, cells["n0"].y) == (0.0, 0.0)
        assert (cells["n1"].x, cells["n1"].y) == (10.0, 10.0)
        assert (cells["n2"].x, cells["n2"].y) == (20.0, 20.0)
        links = {s.element: s for s in layout.shapes if isinstance(s, Rect) and s.role == "link"}
        # (0,1): row 0, col 1 -> above the diagonal; (1,2): row 1, col 2.
        assert (links["e0-1"].x, links["e0-1"].y) == (10.0, 0.0)
        assert (links["e1-2"].x, links["e1-2"].y) == (20.0, 10.0)

    def test_diagonal_sorted_by_layer_then_id(self):
        g = make_graph([2, 1, 2, 1], [])
        layout = layout_centered_matrix(g, 1.0)
        # layer-1 nodes 1, 3 come first, then layer-2 nodes 0, 2
        assert layout.diagonal_index == (2, 0, 3, 1)

    def test_backward_link_below_diagonal(self):
        g = make_graph([1, 2, 3], [(2, 0)])
        layout = layout_centered_matrix(g, 10.0)
        cell = next(s for s in layout.shapes if s.element == link_element((2, 0)))
        assert cell.x < cell.y  # column before row: below the diagonal

    def test_forward_links_above_diagonal(self):
        rng = Random(2)
        for _ in range(10):
            g = random_layered_graph(rng, max_nodes=15, max_layers=4)
            layout = layout_centered_matrix(g, 4.0)
            diag = layout.diagonal_index
            for s in layout.shapes:
                if isinstance(s, Rect) and s.role == "link":
                    src, dst = next(l for l in g.links if link_element(l) == s.element)
                    if g.layer_of[dst] > g.layer_of[src]:
                        assert diag[dst] > diag[src] and s.x > s.y

    def test_bijection_links_to_cells(self):
        rng = Random(4)
        g = random_layered_graph(rng, max_nodes=20, max_layers=5)
        layout = layout_centered_matrix(g, 4.0)
        ids = [s.element for s in layout.shapes if isinstance(s, Rect) and s.role == "link"]
        assert sorted(ids) == sorted(link_element(l) for l in g.links)
        assert len(ids) == len(set(ids))

    def test_blocks_contiguous_and_cover_all_nodes(self):
        g = make_graph([1, 1, 2, 3, 3, 3], [])
        layout = layout_centered_matrix(g, 2.0)
        spans = [(b.start, b.end) for b in layout.blocks]
        assert spans == [(0, 2), (2, 3), (3, 6)]

    def test_path_cells_share_intermediate_diagonal_index(self):
        # For path a->b->c the two link cells sit in b's column and b's row.
        g = make_graph([1, 2, 3], [(0, 1), (1, 2)])
        layout = layout_centered_matrix(g, 1.0)
        ab = next(s for s in layout.shapes if s.element == "e0-1")
        bc = next(s for s in layout.shapes if s.element == "e1-2")
        b = layout.diagonal_index[1]
        assert ab.x == b * 1.0 and bc.y == b * 1.0

    def test_degenerate_graph(self):
        with pytest.raises(DegenerateGraph):
            layout_centered_matrix(LayeredGraph(1, 2, (1,), ()), 1.0)


class TestScaling:
    def test_cell_size_from_display_budget(self):
        assert matrix_cell_size(1600.0, 200) == 8.0

    def test_bounding_boxes_at_shared_cell_size(self):
        cell = matrix_cell_size(1600.0, 200)
        large = make_graph([1] * 100 + [2] * 100, [])
        small = make_graph([1] * 25 + [2] * 25, [])
        assert layout_centered_matrix(large, cell).bounds.height == 1600.0
        assert layout_centered_matrix(small, cell).bounds.height == 400.0

    def test_zero_max_nodes_rejected(self):
        with pytest.raises(ValueError):
            matrix_cell_size(1600.0, 0)
