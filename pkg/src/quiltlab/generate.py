"""Constrained random layered-graph generation.

Generation runs in two stages. The *generate* stage assigns every node a
uniform random layer (re-rolling until no layer is empty), then places an
exact number of proper links and skip links, both sampled uniformly without
replacement. The *test* stage draws a source in the first layer and a
destination in the last, and accepts the graph only if a "good" path exists
under the experiment regime's constraints and the quilt depiction fits the
display. Rejected graphs are regenerated with a derived sub-seed until
accepted or the attempt budget runs out.

Everything here is a pure function of (spec, seed): the sampling primitives
are written out explicitly (partial Fisher-Yates over a sorted candidate
list) so results are reproducible regardless of stdlib sampling internals.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from enum import Enum
from random import Random
from typing import Sequence, TypeVar

from .model import LayeredGraph, Link, classify_link, possible_proper_links

T = TypeVar("T")


class GenerationError(Exception):
    pass


class NoProperLinksPossible(GenerationError):
    """Fewer than two layers: no layer pair can carry proper links."""


class InfeasibleCounts(GenerationError):
    """Requested link counts exceed the available candidate pairs."""


class ExhaustedAttempts(GenerationError):
    """No generated graph met the test-stage constraints within the budget."""


class Experiment(str, Enum):
    EXP1 = "exp1"
    EXP2 = "exp2"


@dataclass(frozen=True)
class TreatmentSpec:
    """One cell of the experimental factor grid.

    ``link_density`` is the fraction of all possible proper links that are
    placed; ``skip_density`` is the skip-link count as a fraction of the
    placed proper-link count.
    """

    nodes: int
    layers: int
    link_density: float
    skip_density: float
    experiment: Experiment = Experiment.EXP1

    def as_dict(self) -> dict:
        return {
            "experiment": self.experiment.value,
            "nodes": self.nodes,
            "layers": self.layers,
            "linkDensity": self.link_density,
            "skipDensity": self.skip_density,
        }

    @staticmethod
    def from_dict(d: dict) -> "TreatmentSpec":
        return TreatmentSpec(
            nodes=d["nodes"],
            layers=d["layers"],
            link_density=d["linkDensity"],
            skip_density=d["skipDensity"],
            experiment=Experiment(d["experiment"]),
        )


NODE_LEVELS = (50, 100, 200)
LINK_LEVELS = (0.25, 0.50)
SKIP_LEVELS = {Experiment.EXP1: (0.25, 0.50), Experiment.EXP2: (0.0, 0.25)}
LAYER_LEVELS = {Experiment.EXP1: (5, 10, 15), Experiment.EXP2: (5, 15)}


def treatment_grid(experiment: Experiment) -> list[TreatmentSpec]:
    """Full factor grid: 36 treatments for exp1, 24 for exp2."""
    return [
        TreatmentSpec(n, layers, d_link, d_skip, experiment)
        for n in NODE_LEVELS
        for d_link in LINK_LEVELS
        for d_skip in SKIP_LEVELS[experiment]
        for layers in LAYER_LEVELS[experiment]
    ]


@dataclass(frozen=True)
class PathConstraints:
    """Rules a source-to-destination path must satisfy to count as good."""

    min_links: int
    max_links: int
    require_skip: bool
    source: int
    destination: int

    def __post_init__(self) -> None:
        if not 0 < self.min_links <= self.max_links:
            raise ValueError(f"need 0 < min_links <= max_links, got {self.min_links}..{self.max_links}")


def regime_constraints(experiment: Experiment, layers: int, source: int, destination: int) -> PathConstraints:
    """Good-path rules per experiment regime.

    exp1: 3..layers-2 links, at least one skip (a skip is forced anyway since
    layers-2 proper links cannot reach the last layer). exp2: 3..floor(1.5 *
    layers) links, skips optional.
    """
    if experiment is Experiment.EXP1:
        return PathConstraints(3, layers - 2, True, source, destination)
    return PathConstraints(3, math.floor(1.5 * layers), False, source, destination)


# --- seeded sampling primitives ------------------------------------------------


def derive_seed(master: int, *parts: object) -> int:
    """Stable 63-bit sub-seed from a master seed and a label path."""
    label = ":".join([str(master), *[str(p) for p in parts]])
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def sample_without_replacement(items: Sequence[T], k: int, rng: Random) -> list[T]:
    """Uniform k-subset via partial Fisher-Yates, in selection order."""
    if k > len(items):
        raise ValueError(f"cannot sample {k} of {len(items)}")
    pool = list(items)
    for i in range(k):
        j = rng.randrange(i, len(pool))
        pool[i], pool[j] = pool[j], pool[i]
    return pool[:k]


def round_half_away(x: float) -> int:
    """Round with halves away from zero (0.5 -> 1, -0.5 -> -1)."""
    if x >= 0:
        return math.floor(x + 0.5)
    return math.ceil(x - 0.5)


def required_link_counts(spec: TreatmentSpec, possible: int) -> tuple[int, int]:
    """Exact proper/skip link counts for a treatment given the possible-proper count."""
    proper_count = round_half_away(spec.link_density * possible)
    skip_count = round_half_away(spec.skip_density * proper_count)
    return proper_count, skip_count


# --- generate stage -------------------------------------------------------------


def generate(spec: TreatmentSpec, seed: int) -> LayeredGraph:
    """Generate one random layered graph with exact link counts.

    Layers are assigned uniformly at random and re-rolled until every layer
    is populated. Proper links are sampled uniformly from the proper
    positions, skip links uniformly from the remaining non-proper, non-self
    ordered pairs. Deterministic for a given (spec, seed).
    """
    n, layers = spec.nodes, spec.layers
    if layers < 2:
        raise NoProperLinksPossible(f"{layers} layer(s) admit no proper links")
    if n < layers:
        raise InfeasibleCounts(f"{n} nodes cannot populate {layers} layers")
    rng = Random(seed)

    while True:
        layer_of = tuple(rng.randrange(1, layers + 1) for _ in range(n))
        if len(set(layer_of)) == layers:
            break

    g_empty = LayeredGraph(n, layers, layer_of, ())
    possible = possible_proper_links(g_empty)
    proper_count, skip_count = required_link_counts(spec, possible)

    proper_positions = sorted(
        (src, dst)
        for src in range(n)
        for dst in range(n)
        if layer_of[dst] == layer_of[src] + 1
    )
    if proper_count > len(proper_positions):
        raise InfeasibleCounts(f"{proper_count} proper links requested, {len(proper_positions)} possible")

    skip_positions = sorted(
        (src, dst)
        for src in range(n)
        for dst in range(n)
        if src != dst and layer_of[dst] != layer_of[src] + 1
    )
    if skip_count > len(skip_positions):
        raise InfeasibleCounts(f"{skip_count} skip links requested, {len(skip_positions)} available")

    proper_links = sample_without_replacement(proper_positions, proper_count, rng)
    skip_links = sample_without_replacement(skip_positions, skip_count, rng)
    links = tuple(sorted(proper_links) + sorted(skip_links))
    return LayeredGraph(n, layers, layer_of, links)


# --- good-path search -----------------------------------------------------------


def _distance_to(g: LayeredGraph, target: int) -> list[float]:
    """Minimum link count from each node to target (BFS on reversed links)."""
    dist = [math.inf] * g.node_count
    dist[target] = 0
    frontier = [target]
    while frontier:
        nxt: list[int] = []
        for node in frontier:
            for src, _ in g.in_links[node]:
                if math.isinf(dist[src]):
                    dist[src] = dist[node] + 1
                    nxt.append(src)
        frontier = nxt
    return dist


def good_paths(g: LayeredGraph, c: PathConstraints, limit: int) -> list[tuple[Link, ...]]:
    """Up to ``limit`` good paths, found by exhaustive bounded DFS.

    Paths are simple (per-path visited set), directed, and returned as link
    tuples in a deterministic order. Branches that cannot reach the
    destination within the remaining link budget are pruned using exact
    reverse-BFS distances, which never excludes a feasible path.
    """
    if limit <= 0:
        return []
    dist = _distance_to(g, c.destination)
    if dist[c.source] > c.max_links:
        return []

    found: list[tuple[Link, ...]] = []
    path: list[Link] = []
    visited = {c.source}

    def extend(node: int, skips: int) -> bool:
        if node == c.destination:
            if len(path) >= c.min_links and (skips > 0 or not c.require_skip):
                found.append(tuple(path))
                if len(found) >= limit:
                    return True
            return False
        if len(path) >= c.max_links:
            return False
        for link in g.out_links[node]:
            dst = link[1]
            if dst in visited:
                continue
            if len(path) + 1 + dist[dst] > c.max_links:
                continue
            visited.add(dst)
            path.append(link)
            stop = extend(dst, skips + (1 if classify_link(g, link).is_skip else 0))
            path.pop()
            visited.remove(dst)
            if stop:
                return True
        return False

    extend(c.source, 0)
    return found


# --- test stage -----------------------------------------------------------------


@dataclass(frozen=True)
class DisplayBounds:
    """Display budget the quilt depiction must fit, at a session cell size."""

    width: float
    height: float
    cell_size: float


EXP1_DISPLAY = DisplayBounds(1920.0, 1200.0, 1200.0 / 200.0)
EXP2_DISPLAY = DisplayBounds(2560.0, 1600.0, 1600.0 / 200.0)
DEFAULT_DISPLAY = {Experiment.EXP1: EXP1_DISPLAY, Experiment.EXP2: EXP2_DISPLAY}


@dataclass(frozen=True)
class Accepted:
    source: int
    destination: int


@dataclass(frozen=True)
class Rejected:
    reason: str


def path_reject_reason(g: LayeredGraph, c: PathConstraints) -> str | None:
    """Why no good path satisfies c, or None when one exists.

    Distinguishes NoPath, PathTooLong, PathTooShort and NoSkipInPath by
    progressively relaxing the constraints.
    """
    if good_paths(g, c, 1):
        return None
    relaxed_any = PathConstraints(1, g.node_count - 1, False, c.source, c.destination)
    if not good_paths(g, relaxed_any, 1):
        return "NoPath"
    if not good_paths(g, PathConstraints(1, c.max_links, False, c.source, c.destination), 1):
        return "PathTooLong"
    if not good_paths(g, PathConstraints(c.min_links, c.max_links, False, c.source, c.destination), 1):
        return "PathTooShort"
    return "NoSkipInPath"


def test_constraints(
    g: LayeredGraph,
    spec: TreatmentSpec,
    seed: int,
    fit: DisplayBounds | None = None,
) -> Accepted | Rejected:
    """Test-stage check: draw endpoints, require a good path and display fit.

    A uniform random source in layer 1 and destination in the last layer are
    drawn from ``seed``. Path failures are classified by
    :func:`path_reject_reason`; an accepted path can still be rejected as
    DoesNotFit when the quilt depiction exceeds the display bounds.
    """
    from .quilt import SkipDepiction, fits_display, layout_quilt

    fit = fit or DEFAULT_DISPLAY[spec.experiment]
    rng = Random(derive_seed(seed, "endpoints"))
    first = g.layers[0]
    last = g.layers[g.layer_count - 1]
    source = first[rng.randrange(len(first))]
    destination = last[rng.randrange(len(last))]
    c = regime_constraints(spec.experiment, spec.layers, source, destination)

    reason = path_reject_reason(g, c)
    if reason is not None:
        return Rejected(reason)

    layout = layout_quilt(g, SkipDepiction.MIXED, fit.cell_size)
    if not fits_display(layout, (fit.width, fit.height)):
        return Rejected("DoesNotFit")
    return Accepted(source, destination)


@dataclass(frozen=True)
class GenerationResult:
    graph: LayeredGraph
    source: int
    destination: int
    attempts: int
    rejections: tuple[str, ...] = field(default=())


def generate_until_valid(
    spec: TreatmentSpec,
    seed: int,
    max_attempts: int = 1000,
    fit: DisplayBounds | None = None,
) -> GenerationResult:
    """Loop generate + test_constraints until a graph is accepted.

    Each attempt i derives its own sub-seed from (seed, i), so the whole loop
    is deterministic in (spec, seed). Raises :class:`ExhaustedAttempts` after
    ``max_attempts`` rejections.
    """
    if max_attempts < 1:
        raise ValueError("max_attempts must be >= 1")
    rejections: list[str] = []
    for attempt in range(max_attempts):
        sub_seed = derive_seed(seed, "attempt", attempt)
        g = generate(spec, sub_seed)
        verdict = test_constraints(g, spec, sub_seed, fit)
        if isinstance(verdict, Accepted):
            return GenerationResult(g, verdict.source, verdict.destination, attempt + 1, tuple(rejections))
        rejections.append(verdict.reason)
    raise ExhaustedAttempts(f"no acceptable graph for {spec} within {max_attempts} attempts")


def provenance_for(result: GenerationResult, spec: TreatmentSpec, seed: int) -> dict:
    """Provenance fields for the graph interchange file."""
    rejections: dict[str, int] = {}
    for reason in result.rejections:
        rejections[reason] = rejections.get(reason, 0) + 1
    return {
        "seed": seed,
        "spec": spec.as_dict(),
        "source": result.source,
        "destination": result.destination,
        "attempts": result.attempts,
        "rejections": rejections,
    }
