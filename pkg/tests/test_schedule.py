"""Schedules: counterbalancing, Latin squares, shapes, determinism."""

from __future__ import annotations

from collections import Counter

import pytest

from quiltlab.generate import Experiment
from quiltlab.schedule import DEPICTIONS, Schedule, build_schedule, latin_square


class TestLatinSquare:
    def test_rows_are_permutations(self):
        square = latin_square(7)
        for row in square:
            assert sorted(row) == list(range(7))

    def test_columns_see_each_value_once(self):
        square = latin_square(9)
        for c in range(9):
            assert sorted(square[r][c] for r in range(9)) == list(range(9))


class TestScheduleShape:
    def test_exp1_216_trials_over_two_sessions(self):
        sched = build_schedule(Experiment.EXP1, 2, seed=0)
        for pid in sched.participants:
            cells = sched.experimental(pid)
            assert len(cells) == 216
            by_session = Counter(c.session for c in cells)
            assert by_session == {1: 108, 2: 108}

    def test_exp2_72_trials_one_session(self):
        sched = build_schedule(Experiment.EXP2, 2, seed=0)
        for pid in sched.participants:
            cells = sched.experimental(pid)
            assert len(cells) == 72
            assert {c.session for c in cells} == {1}

    def test_each_block_covers_every_treatment_once(self):
        sched = build_schedule(Experiment.EXP1, 1, seed=3)
        cells = sched.experimental("p00")
        for session in (1, 2):
            for depiction in DEPICTIONS[Experiment.EXP1]:
                block = [c for c in cells if c.session == session and c.depiction == depiction]
                assert len(block) == 36
                assert len({c.spec for c in block}) == 36

    def test_practice_trials_flagged_and_precede_blocks(self):
        sched = build_schedule(Experiment.EXP2, 1, seed=0)
        cells = sched.trials["p00"]
        practice = [c for c in cells if c.practice]
        assert len(practice) == 9  # 3 per depiction block
        first_block_depiction = cells[0].depiction
        assert all(c.depiction == first_block_depiction for c in cells[:3])
        assert all(c.practice for c in cells[:3])


class TestCounterbalancing:
    def _orders(self, experiment, participants):
        sched = build_schedule(experiment, participants, seed=1)
        orders = []
        for pid in sched.participants:
            seen = []
            for cell in sched.trials[pid]:
                if cell.session == 1 and cell.depiction not in seen:
                    seen.append(cell.depiction)
            orders.append(tuple(seen))
        return orders

    def test_exp1_18_participants_use_each_permutation_three_times(self):
        orders = self._orders(Experiment.EXP1, 18)
        counts = Counter(orders)
        assert len(counts) == 6
        assert all(v == 3 for v in counts.values())

    def test_exp2_24_participants_use_each_permutation_four_times(self):
        orders = self._orders(Experiment.EXP2, 24)
        counts = Counter(orders)
        assert all(v == 4 for v in counts.values())

    def test_odd_pool_sizes_differ_by_at_most_one(self):
        for n in (5, 11, 20):
            counts = Counter(self._orders(Experiment.EXP1, n))
            assert max(counts.values()) - min(counts.values()) <= 1


class TestDeterminismAndSerialization:
    def test_same_seed_same_schedule(self):
        a = build_schedule(Experiment.EXP1, 3, seed=9)
        b = build_schedule(Experiment.EXP1, 3, seed=9)
        assert a.to_json() == b.to_json()

    def test_different_seed_different_treatment_order(self):
        a = build_schedule(Experiment.EXP1, 1, seed=1)
        b = build_schedule(Experiment.EXP1, 1, seed=2)
        specs_a = [c.spec for c in a.experimental("p00")][:10]
        specs_b = [c.spec for c in b.experimental("p00")][:10]
        assert specs_a != specs_b

    def test_round_trip(self, tmp_path):
        sched = build_schedule(Experiment.EXP2, 2, seed=4)
        path = tmp_path / "sched.json"
        sched.save(path)
        back = Schedule.load(path)
        assert back.to_json() == sched.to_json()

    def test_zero_participants_rejected(self):
        with pytest.raises(ValueError):
            build_schedule(Experiment.EXP1, 0, seed=0)
