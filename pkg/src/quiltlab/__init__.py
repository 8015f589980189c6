"""quiltlab: layered-graph depictions and a path-finding trial harness."""

from .colors import SkipDepiction, assign_colors
from .generate import (
    Experiment,
    PathConstraints,
    TreatmentSpec,
    generate,
    generate_until_valid,
    good_paths,
    required_link_counts,
    test_constraints,
    treatment_grid,
)
from .matrix import layout_centered_matrix, matrix_cell_size
from .model import LayeredGraph, LinkClass, classify_link, possible_proper_links, validate
from .nodelink import barycentric_sweep, count_crossings, insert_dummy_nodes, layout_node_link
from .pathtrace import PathState, click, is_good_path, tick
from .quilt import fits_display, layout_quilt
from .render import RenderOptions, render
from .schedule import Schedule, build_schedule
from .summary import TrialRecord, summarize

__version__ = "0.1.0"

__all__ = [
    "Experiment",
    "LayeredGraph",
    "LinkClass",
    "PathConstraints",
    "PathState",
    "RenderOptions",
    "Schedule",
    "SkipDepiction",
    "TreatmentSpec",
    "TrialRecord",
    "assign_colors",
    "barycentric_sweep",
    "build_schedule",
    "classify_link",
    "click",
    "count_crossings",
    "fits_display",
    "generate",
    "generate_until_valid",
    "good_paths",
    "insert_dummy_nodes",
    "is_good_path",
    "layout_centered_matrix",
    "layout_node_link",
    "layout_quilt",
    "matrix_cell_size",
    "possible_proper_links",
    "render",
    "required_link_counts",
    "summarize",
    "test_constraints",
    "tick",
    "treatment_grid",
    "validate",
]
