"""Interactive path-tracing: click validation, highlighting, and completion.

The trace grows from both ends: a *forward* fringe is a directed path out of
the source, a *backward* fringe a directed path into the destination. Each
fringe is stored as an alternating element sequence (node, link, node, ...)
that may end (forward) or start (backward) with a dangling link whose far
node has not been clicked yet. The highlight set is exactly the union of
both fringes' elements.

Click semantics, in order:

* Clicking a highlighted element backtracks its fringe, removing the element
  and everything beyond it (fringe roots - the source and destination - are
  never removed). Exception: clicking the opposite fringe's endpoint when a
  single un-highlighted link connects it to this fringe's tip joins the two
  fringes instead.
* Clicking an un-highlighted link extends the fringe whose tip it touches
  (its tail at the forward tip, or its head at the backward head), leaving a
  dangling link until its far node is clicked or the fringes join.
* Clicking an un-highlighted node reachable from a fringe tip through one
  un-highlighted link implicitly adds that link too. A node reachable from
  both tips at once joins the fringes through itself (the about-to-join
  case: the node then belongs to both fringes, and backtracking it cuts the
  forward one).
* Anything else is rejected and the state is unchanged.

After every extension the engine checks completion: if the fringes now form
one directed source-to-destination path whose link count lies within the
constraints (and contains a skip link when required), the trial is complete.
There is no mouseover behavior; only clicks change state. A trial times out
240 seconds after it starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union

from .generate import PathConstraints
from .model import LayeredGraph, Link, classify_link, link_element, node_element, parse_element

TIMEOUT_SECONDS = 240.0

Element = Union[int, Link]  # a node id or a (src, dst) link


class TrialStatus(Enum):
    ACTIVE = "active"
    COMPLETED = "completed"
    TIMED_OUT = "timed-out"


class ClickKind(Enum):
    EXTENDED = "extended"
    BACKTRACKED = "backtracked"
    REJECTED = "rejected"
    COMPLETED = "completed"


class ClickAfterEnd(RuntimeError):
    """A click arrived after the trial completed or timed out."""


class NotAPath(ValueError):
    """A link sequence does not chain through the graph."""


@dataclass(frozen=True)
class ClickOutcome:
    kind: ClickKind
    reason: str | None = None


def _is_link(element: Element) -> bool:
    return isinstance(element, tuple)


@dataclass
class PathState:
    """Live state of one path-finding trial. Single-writer; see ``click``."""

    graph: LayeredGraph
    constraints: PathConstraints
    start_time: float
    forward: list[Element] = field(default_factory=list)
    backward: list[Element] = field(default_factory=list)
    status: TrialStatus = TrialStatus.ACTIVE
    elapsed: float | None = None

    def __post_init__(self) -> None:
        if not self.forward:
            self.forward = [self.constraints.source]
        if not self.backward:
            self.backward = [self.constraints.destination]

    # -- views ------------------------------------------------------------

    def highlight_elements(self) -> set[Element]:
        return set(self.forward) | set(self.backward)

    def highlight(self) -> frozenset[str]:
        """Highlight set as element-id strings (the wire form)."""
        ids = {link_element(e) if _is_link(e) else node_element(e) for e in self.highlight_elements()}
        return frozenset(ids)

    def forward_tip(self) -> int:
        """Effective forward tip node (head of a dangling link counts)."""
        last = self.forward[-1]
        return last[1] if _is_link(last) else last

    def backward_head(self) -> int:
        """Effective backward head node (tail of a dangling link counts)."""
        first = self.backward[0]
        return first[0] if _is_link(first) else first

    def joined_path(self) -> list[Link] | None:
        """Links of the single source-to-destination path, if the fringes join."""
        f_last = self.forward[-1]
        b_first = self.backward[0]
        seq: list[Element] | None = None
        if not _is_link(f_last):
            if not _is_link(b_first) and f_last == b_first:
                seq = self.forward + self.backward[1:]
            elif _is_link(b_first) and f_last == b_first[0]:
                seq = self.forward + self.backward
        else:
            if not _is_link(b_first) and f_last[1] == b_first:
                seq = self.forward + self.backward
            elif _is_link(b_first) and f_last[1] == b_first[0]:
                seq = self.forward + [f_last[1]] + self.backward
        if seq is None:
            return None
        links = [e for e in seq if _is_link(e)]
        nodes = [links[0][0]] + [l[1] for l in links]
        if len(set(nodes)) != len(nodes):  # a dangling link into mid-fringe can loop
            return None
        return links


def make_state(graph: LayeredGraph, constraints: PathConstraints, start_time: float) -> PathState:
    return PathState(graph=graph, constraints=constraints, start_time=start_time)


def _unhighlighted_link(state: PathState, src: int, dst: int, hl: set[Element]) -> Link | None:
    link = (src, dst)
    if link in state.graph.link_set and link not in hl:
        return link
    return None


def _extend_forward_link(state: PathState, link: Link) -> None:
    last = state.forward[-1]
    if _is_link(last):  # materialize the dangling head first
        state.forward.append(last[1])
    state.forward.append(link)


def _extend_backward_link(state: PathState, link: Link) -> None:
    first = state.backward[0]
    if _is_link(first):  # materialize the dangling tail first
        state.backward.insert(0, first[0])
    state.backward.insert(0, link)


def _backtrack(state: PathState, element: Element) -> None:
    if element in state.forward:
        i = state.forward.index(element)
        del state.forward[max(i, 1):]  # the source root always stays
    else:
        j = state.backward.index(element)
        last = len(state.backward) - 1
        del state.backward[: j if j == last else j + 1]  # the destination root stays


def _completion_check(state: PathState, at: float) -> ClickOutcome:
    links = state.joined_path()
    if links is not None:
        c = state.constraints
        count = len(links)
        has_skip = any(classify_link(state.graph, l).is_skip for l in links)
        if c.min_links <= count <= c.max_links and (has_skip or not c.require_skip):
            state.status = TrialStatus.COMPLETED
            state.elapsed = at - state.start_time
            return ClickOutcome(ClickKind.COMPLETED)
    return ClickOutcome(ClickKind.EXTENDED)


def click(state: PathState, element_id: str, at: float) -> ClickOutcome:
    """Apply one click to the state; see the module docstring for semantics."""
    if state.status is not TrialStatus.ACTIVE:
        raise ClickAfterEnd(f"trial is {state.status.value}")

    parsed = parse_element(element_id)
    if parsed is None:
        return ClickOutcome(ClickKind.REJECTED, "UnknownElement")
    kind, value = parsed
    if kind == "node":
        if not 0 <= value < state.graph.node_count:
            return ClickOutcome(ClickKind.REJECTED, "UnknownElement")
        token: Element = value
    else:
        if value not in state.graph.link_set:
            return ClickOutcome(ClickKind.REJECTED, "UnknownElement")
        token = value

    hl = state.highlight_elements()
    tip = state.forward_tip()
    head = state.backward_head()

    if token in hl:
        if not _is_link(token):
            if token == head:
                join = _unhighlighted_link(state, tip, token, hl)
                if join is not None:
                    _extend_forward_link(state, join)
                    return _completion_check(state, at)
            if token == tip:
                join = _unhighlighted_link(state, token, head, hl)
                if join is not None:
                    _extend_backward_link(state, join)
                    return _completion_check(state, at)
        _backtrack(state, token)
        return ClickOutcome(ClickKind.BACKTRACKED)

    if _is_link(token):
        if token[0] == tip:
            _extend_forward_link(state, token)
            return _completion_check(state, at)
        if token[1] == head:
            _extend_backward_link(state, token)
            return _completion_check(state, at)
        return ClickOutcome(ClickKind.REJECTED, "NotReachable")

    # Un-highlighted node click.
    f_last = state.forward[-1]
    if _is_link(f_last) and f_last[1] == token:
        state.forward.append(token)
        return _completion_check(state, at)
    b_first = state.backward[0]
    if _is_link(b_first) and b_first[0] == token:
        state.backward.insert(0, token)
        return _completion_check(state, at)

    via_forward = _unhighlighted_link(state, tip, token, hl)
    via_backward = _unhighlighted_link(state, token, head, hl)
    if via_forward is not None:
        _extend_forward_link(state, via_forward)
        state.forward.append(token)
    if via_backward is not None:
        if _is_link(state.backward[0]):
            state.backward.insert(0, state.backward[0][0])
        state.backward.insert(0, via_backward)
        state.backward.insert(0, token)
    if via_forward is None and via_backward is None:
        return ClickOutcome(ClickKind.REJECTED, "NotReachable")
    return _completion_check(state, at)


def tick(state: PathState, now: float) -> PathState:
    """Advance the clock; an active trial times out at 240 s exactly."""
    if state.status is TrialStatus.ACTIVE and now - state.start_time >= TIMEOUT_SECONDS:
        state.status = TrialStatus.TIMED_OUT
        state.elapsed = now - state.start_time
    return state


def is_good_path(g: LayeredGraph, path: Sequence[Link], c: PathConstraints) -> bool:
    """Verify a link sequence as a good source-to-destination path.

    Raises :class:`NotAPath` when the links do not chain or are missing from
    the graph; returns False for wrong endpoints, revisited nodes, a link
    count outside [min_links, max_links], or a missing required skip.
    """
    if not path:
        raise NotAPath("empty link sequence")
    for link in path:
        if link not in g.link_set:
            raise NotAPath(f"link {link} is not in the graph")
    for (_, mid), (nxt, _) in zip(path, path[1:]):
        if mid != nxt:
            raise NotAPath(f"links do not chain at node {mid} -> {nxt}")
    if path[0][0] != c.source or path[-1][1] != c.destination:
        return False
    nodes = [path[0][0]] + [dst for _, dst in path]
    if len(set(nodes)) != len(nodes):
        return False
    if not c.min_links <= len(path) <= c.max_links:
        return False
    if c.require_skip and not any(classify_link(g, l).is_skip for l in path):
        return False
    return True


def replay(
    graph: LayeredGraph,
    constraints: PathConstraints,
    start_time: float,
    clicks: Sequence[tuple[str, float]],
) -> tuple[PathState, list[ClickOutcome]]:
    """Fold a click log over a fresh state; stops consuming input once the
    trial leaves the active state."""
    state = make_state(graph, constraints, start_time)
    outcomes: list[ClickOutcome] = []
    for element_id, at in clicks:
        tick(state, at)
        if state.status is not TrialStatus.ACTIVE:
            break
        outcomes.append(click(state, element_id, at))
    return state, outcomes
