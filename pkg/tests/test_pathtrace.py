"""Path engine: click semantics, highlighting, completion, timeout."""

from __future__ import annotations

import copy
from random import Random

import pytest

from quiltlab.generate import PathConstraints
from quiltlab.model import link_element, node_element
from quiltlab.pathtrace import (
    ClickAfterEnd,
    ClickKind,
    NotAPath,
    TrialStatus,
    click,
    is_good_path,
    make_state,
    replay,
    tick,
)

from helpers import make_graph, oracle_good_paths, random_layered_graph


def fixture_graph():
    """Seven nodes over four layers; source 0, destination 6.

    The only path with exactly three links and a skip is 0 -> 4 -> 5 -> 6,
    using the two-layer jump (0,4) and the same-layer link (4,5). The
    all-proper routes 0 -> 2 -> 4 -> 6 and 0 -> 3 -> 4 -> 6 have the right
    length but no skip.
    """
    layer_of = [1, 1, 2, 2, 3, 3, 4]
    links = [(0, 2), (0, 3), (2, 4), (3, 4), (4, 6), (0, 4), (4, 5), (5, 6)]
    return make_graph(layer_of, links)


GOOD = PathConstraints(3, 3, True, 0, 6)


class TestClickBasics:
    def setup_method(self):
        self.g = fixture_graph()
        self.state = make_state(self.g, GOOD, 0.0)

    def test_initial_highlight_is_both_anchors(self):
        assert self.state.highlight() == frozenset({"n0", "n6"})

    def test_first_click_on_source_neighbor_extends(self):
        outcome = click(self.state, "n2", 1.0)
        assert outcome.kind is ClickKind.EXTENDED
        assert self.state.highlight() == frozenset({"n0", "e0-2", "n2", "n6"})

    def test_click_far_from_both_tips_rejected(self):
        before = copy.deepcopy(self.state)
        outcome = click(self.state, "n1", 1.0)
        assert outcome.kind is ClickKind.REJECTED and outcome.reason == "NotReachable"
        assert self.state.forward == before.forward and self.state.backward == before.backward

    def test_unknown_element_rejected(self):
        assert click(self.state, "n99", 1.0).reason == "UnknownElement"
        assert click(self.state, "e6-0", 1.0).reason == "UnknownElement"
        assert click(self.state, "garbage", 1.0).reason == "UnknownElement"

    def test_link_click_then_node_click(self):
        assert click(self.state, "e0-3", 1.0).kind is ClickKind.EXTENDED
        assert self.state.highlight() == frozenset({"n0", "e0-3", "n6"})
        assert click(self.state, "n3", 2.0).kind is ClickKind.EXTENDED
        assert "n3" in self.state.highlight()

    def test_backward_building_from_destination(self):
        outcome = click(self.state, "n5", 1.0)  # (5,6) into the destination
        assert outcome.kind is ClickKind.EXTENDED
        assert self.state.highlight() == frozenset({"n0", "n5", "e5-6", "n6"})
        assert self.state.backward == [5, (5, 6), 6]

    def test_link_to_link_clicks_materialize_shared_node(self):
        click(self.state, "e0-3", 1.0)
        outcome = click(self.state, "e3-4", 2.0)
        assert outcome.kind is ClickKind.EXTENDED
        assert self.state.forward == [0, (0, 3), 3, (3, 4)]

    def test_click_after_completion_raises(self):
        for element, t in (("e0-4", 1.0), ("n4", 2.0), ("n5", 3.0)):
            click(self.state, element, t)
        assert self.state.status is TrialStatus.COMPLETED
        with pytest.raises(ClickAfterEnd):
            click(self.state, "n2", 4.0)


class TestCompletion:
    def setup_method(self):
        self.g = fixture_graph()

    def test_forward_sequence_completes_on_join_node(self):
        state = make_state(self.g, GOOD, 0.0)
        click(state, "e0-4", 1.0)  # skip link, dangling
        click(state, "n4", 2.0)  # materialize
        outcome = click(state, "n5", 3.0)  # joins: (4,5) forward, (5,6) backward
        assert outcome.kind is ClickKind.COMPLETED
        assert state.status is TrialStatus.COMPLETED
        assert state.elapsed == 3.0

    def test_all_proper_join_leaves_trial_active(self):
        state = make_state(self.g, GOOD, 0.0)
        click(state, "n3", 1.0)
        outcome = click(state, "n4", 2.0)  # joins 0-3-4-6: length 3 but no skip
        assert outcome.kind is ClickKind.EXTENDED
        assert state.status is TrialStatus.ACTIVE
        assert state.joined_path() == [(0, 3), (3, 4), (4, 6)]

    def test_bidirectional_join_via_link(self):
        state = make_state(self.g, GOOD, 0.0)
        click(state, "e0-4", 1.0)
        click(state, "n4", 1.5)
        click(state, "n5", 1.8)  # wait: completes right here
        assert state.status is TrialStatus.COMPLETED

        state = make_state(self.g, GOOD, 0.0)
        click(state, "e5-6", 1.0)  # backward dangling
        click(state, "n5", 2.0)  # materialize backward head
        click(state, "e0-4", 3.0)  # forward dangling
        click(state, "n4", 4.0)
        outcome = click(state, "e4-5", 5.0)  # joining link between the tips
        assert outcome.kind is ClickKind.COMPLETED

    def test_destination_click_joins_forward_fringe(self):
        c = PathConstraints(2, 3, True, 0, 6)
        state = make_state(self.g, c, 0.0)
        click(state, "e0-4", 1.0)
        click(state, "n4", 2.0)
        outcome = click(state, "n6", 3.0)  # destination is highlighted but joinable
        assert outcome.kind is ClickKind.COMPLETED
        assert state.joined_path() == [(0, 4), (4, 6)]

    def test_source_click_joins_backward_fringe(self):
        c = PathConstraints(2, 3, True, 0, 6)
        state = make_state(self.g, c, 0.0)
        click(state, "n4", 1.0)  # joins both tips? (0,4) and (4,6): completes at 2 links
        assert state.status is TrialStatus.COMPLETED

        c = PathConstraints(3, 3, True, 0, 6)
        state = make_state(self.g, c, 0.0)
        click(state, "n5", 1.0)  # backward: 5,(5,6),6
        click(state, "n4", 2.0)  # joins: forward (0,4),4 + backward 4,(4,5)
        assert state.status is TrialStatus.COMPLETED
        assert state.joined_path() == [(0, 4), (4, 5), (5, 6)]

    def test_completed_path_passes_is_good_path(self):
        state = make_state(self.g, GOOD, 0.0)
        for element, t in (("e0-4", 1.0), ("n4", 2.0), ("n5", 3.0)):
            click(state, element, t)
        path = state.joined_path()
        assert path is not None
        assert is_good_path(self.g, path, GOOD)

    def test_short_join_does_not_complete(self):
        state = make_state(self.g, GOOD, 0.0)
        click(state, "e0-4", 1.0)
        outcome = click(state, "e4-6", 2.0)  # 0-4-6 is only two links
        assert outcome.kind is ClickKind.EXTENDED
        assert state.status is TrialStatus.ACTIVE


class TestBacktracking:
    def setup_method(self):
        self.g = fixture_graph()
        self.state = make_state(self.g, GOOD, 0.0)

    def test_backtrack_removes_element_and_beyond(self):
        click(self.state, "n2", 1.0)
        click(self.state, "e2-4", 2.0)
        outcome = click(self.state, "n2", 3.0)
        assert outcome.kind is ClickKind.BACKTRACKED
        # n2 and the link beyond it go; the link INTO n2 stays (dangling) until
        # clicked itself.
        assert self.state.highlight() == frozenset({"n0", "e0-2", "n6"})
        click(self.state, "e0-2", 4.0)
        assert self.state.highlight() == frozenset({"n0", "n6"})

    def test_backtrack_then_replay_restores_state(self):
        script = ["n2", "e2-4"]
        for i, element in enumerate(script):
            click(self.state, element, float(i))
        snapshot = (list(self.state.forward), list(self.state.backward))
        click(self.state, "n2", 10.0)
        for i, element in enumerate(script):
            click(self.state, element, 20.0 + i)
        assert (self.state.forward, self.state.backward) == snapshot

    def test_clicking_source_root_clears_forward_fringe(self):
        click(self.state, "n2", 1.0)
        outcome = click(self.state, "n0", 2.0)
        assert outcome.kind is ClickKind.BACKTRACKED
        assert self.state.forward == [0]

    def test_clicking_bare_root_is_noop_backtrack(self):
        outcome = click(self.state, "n0", 1.0)
        assert outcome.kind is ClickKind.BACKTRACKED
        assert self.state.forward == [0] and self.state.backward == [6]

    def test_backward_backtrack_removes_toward_head(self):
        click(self.state, "e5-6", 1.0)
        click(self.state, "n5", 2.0)
        assert self.state.backward == [5, (5, 6), 6]
        outcome = click(self.state, "n5", 3.0)
        assert outcome.kind is ClickKind.BACKTRACKED
        assert self.state.backward == [(5, 6), 6]  # the link stays until clicked
        click(self.state, "e5-6", 4.0)
        assert self.state.backward == [6]

    def test_node_on_both_fringes_backtracks_forward(self):
        click(self.state, "n3", 1.0)
        click(self.state, "n4", 2.0)  # joined but all-proper: n4 on both fringes
        assert 4 in self.state.forward and 4 in self.state.backward
        outcome = click(self.state, "n4", 3.0)
        assert outcome.kind is ClickKind.BACKTRACKED
        assert 4 not in self.state.forward
        assert 4 in self.state.backward

    def test_rejected_click_is_noop(self):
        click(self.state, "n2", 1.0)
        before = (list(self.state.forward), list(self.state.backward))
        assert click(self.state, "n1", 2.0).kind is ClickKind.REJECTED
        assert (self.state.forward, self.state.backward) == before


class TestHighlightInvariant:
    def test_highlight_always_equals_fringe_union(self):
        rng = Random(50)
        for _ in range(30):
            g = random_layered_graph(rng, max_nodes=10, max_layers=4, link_prob=0.4)
            if not g.layers[0] or not g.layers[-1]:
                continue
            c = PathConstraints(1, 6, False, g.layers[0][0], g.layers[-1][-1])
            if c.source == c.destination:
                continue
            state = make_state(g, c, 0.0)
            elements = [node_element(n) for n in range(g.node_count)] + [
                link_element(l) for l in g.links
            ]
            for i in range(40):
                if state.status is not TrialStatus.ACTIVE:
                    break
                click(state, elements[rng.randrange(len(elements))], float(i))
                expected = set()
                for e in state.forward + state.backward:
                    expected.add(link_element(e) if isinstance(e, tuple) else node_element(e))
                assert state.highlight() == frozenset(expected)


class TestTick:
    def test_before_timeout_stays_active(self):
        state = make_state(fixture_graph(), GOOD, 0.0)
        tick(state, 239.9)
        assert state.status is TrialStatus.ACTIVE

    def test_timeout_at_exact_boundary(self):
        state = make_state(fixture_graph(), GOOD, 0.0)
        tick(state, 239.999)
        assert state.status is TrialStatus.ACTIVE
        tick(state, 240.0)
        assert state.status is TrialStatus.TIMED_OUT

    def test_tick_leaves_completed_state_alone(self):
        state = make_state(fixture_graph(), GOOD, 0.0)
        for element, t in (("e0-4", 1.0), ("n4", 2.0), ("n5", 3.0)):
            click(state, element, t)
        assert state.status is TrialStatus.COMPLETED
        tick(state, 500.0)
        assert state.status is TrialStatus.COMPLETED
        assert state.elapsed == 3.0


class TestIsGoodPath:
    def setup_method(self):
        self.g = fixture_graph()

    def test_length_and_skip_rules(self):
        assert is_good_path(self.g, [(0, 4), (4, 5), (5, 6)], GOOD) is True
        assert is_good_path(self.g, [(0, 4), (4, 6)], GOOD) is False  # two links
        assert is_good_path(self.g, [(0, 3), (3, 4), (4, 6)], GOOD) is False  # no skip

    def test_broken_chain_raises(self):
        c = PathConstraints(1, 5, False, 0, 6)
        with pytest.raises(NotAPath):
            is_good_path(self.g, [(0, 3), (4, 6)], c)

    def test_missing_link_raises(self):
        c = PathConstraints(1, 5, False, 0, 6)
        with pytest.raises(NotAPath):
            is_good_path(self.g, [(0, 6)], c)

    def test_wrong_endpoints_false(self):
        c = PathConstraints(1, 5, False, 1, 6)
        assert is_good_path(self.g, [(0, 4), (4, 6)], c) is False


class TestVerdictOracle:
    def test_completed_matches_exhaustive_oracle(self):
        rng = Random(77)
        graphs = 0
        completions = 0
        while graphs < 100:
            g = random_layered_graph(rng, max_nodes=12, max_layers=4, link_prob=0.35)
            if not g.layers[0] or not g.layers[-1] or not g.links:
                continue
            source = g.layers[0][rng.randrange(len(g.layers[0]))]
            destination = g.layers[-1][rng.randrange(len(g.layers[-1]))]
            if source == destination:
                continue
            graphs += 1
            c = PathConstraints(
                rng.randint(1, 3), rng.randint(3, 5), rng.random() < 0.4, source, destination
            )
            good = oracle_good_paths(g, c)
            state = make_state(g, c, 0.0)
            elements = [node_element(n) for n in range(g.node_count)] + [
                link_element(l) for l in g.links
            ]
            for i in range(60):
                if state.status is not TrialStatus.ACTIVE:
                    break
                click(state, elements[rng.randrange(len(elements))], float(i))
            if state.status is TrialStatus.COMPLETED:
                completions += 1
                path = state.joined_path()
                assert path is not None
                assert tuple(path) in good
                assert is_good_path(g, path, c)
            else:
                joined = state.joined_path()
                assert joined is None or tuple(joined) not in good
        assert completions > 0  # the scripts actually exercise completion


class TestReplayFold:
    def test_replay_reproduces_interactive_run(self):
        g = fixture_graph()
        script = [("n2", 1.0), ("e2-4", 2.0), ("n2", 3.0), ("e0-2", 3.5),
                  ("e0-4", 4.0), ("n4", 5.0), ("n5", 6.0)]
        state, outcomes = replay(g, GOOD, 0.0, script)
        assert state.status is TrialStatus.COMPLETED
        assert outcomes[-1].kind is ClickKind.COMPLETED

    def test_replay_stops_at_timeout(self):
        g = fixture_graph()
        state, outcomes = replay(g, GOOD, 0.0, [("n2", 1.0), ("n0", 300.0)])
        assert state.status is TrialStatus.TIMED_OUT
        assert len(outcomes) == 1
