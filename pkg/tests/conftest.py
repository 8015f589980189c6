"""Pytest fixtures; the shared oracles live in helpers.py."""

import pytest

from helpers import make_graph


@pytest.fixture
def chain_graph():
    """Three-node chain a->b->c across three layers."""
    return make_graph([1, 2, 3], [(0, 1), (1, 2)])
