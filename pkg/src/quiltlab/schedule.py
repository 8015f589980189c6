"""Trial schedules: depiction counterbalancing and Latin-square treatment order.

Depiction order is completely counterbalanced: participant p receives the
(p mod 6)-th permutation of the three depictions, so with a multiple of six
participants every order is used equally often (and never more than one
apart otherwise). Within a depiction block, treatments follow one row of a
cyclic Latin square over the (seed-shuffled) treatment list, with the row
picked per (participant, session, block). Practice trials precede each block
and are flagged so analysis can drop them.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from random import Random

from .generate import Experiment, TreatmentSpec, derive_seed, treatment_grid

DEPICTIONS = {
    Experiment.EXP1: ("quilt-color", "quilt-mixed", "quilt-text"),
    Experiment.EXP2: ("quilt-mixed", "nodelink", "matrix"),
}
SESSIONS = {Experiment.EXP1: 2, Experiment.EXP2: 1}
PRACTICE_PER_BLOCK = {Experiment.EXP1: 2, Experiment.EXP2: 3}
PRACTICE_SPEC = {
    Experiment.EXP1: TreatmentSpec(50, 5, 0.50, 0.25, Experiment.EXP1),
    Experiment.EXP2: TreatmentSpec(50, 5, 0.50, 0.25, Experiment.EXP2),
}

SCHEDULE_FORMAT = "trial-schedule/1"


def latin_square(n: int) -> list[list[int]]:
    """Cyclic n x n Latin square: row r is (r, r+1, ..., r+n-1) mod n."""
    return [[(r + c) % n for c in range(n)] for r in range(n)]


@dataclass(frozen=True)
class TrialCell:
    participant: str
    index: int  # serial position within the participant's schedule
    session: int  # 1-based
    depiction: str
    spec: TreatmentSpec
    graph_seed: int
    practice: bool = False

    def as_dict(self) -> dict:
        return {
            "participant": self.participant,
            "index": self.index,
            "session": self.session,
            "depiction": self.depiction,
            "spec": self.spec.as_dict(),
            "graphSeed": self.graph_seed,
            "practice": self.practice,
        }

    @staticmethod
    def from_dict(d: dict) -> "TrialCell":
        return TrialCell(
            participant=d["participant"],
            index=d["index"],
            session=d["session"],
            depiction=d["depiction"],
            spec=TreatmentSpec.from_dict(d["spec"]),
            graph_seed=d["graphSeed"],
            practice=d["practice"],
        )


@dataclass
class Schedule:
    experiment: Experiment
    seed: int
    participants: tuple[str, ...]
    trials: dict[str, tuple[TrialCell, ...]]

    def experimental(self, participant: str) -> list[TrialCell]:
        return [t for t in self.trials[participant] if not t.practice]

    def to_json(self) -> str:
        doc = {
            "format": SCHEDULE_FORMAT,
            "experiment": self.experiment.value,
            "seed": self.seed,
            "participants": list(self.participants),
            "trials": {p: [t.as_dict() for t in cells] for p, cells in self.trials.items()},
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "Schedule":
        doc = json.loads(text)
        if doc.get("format") != SCHEDULE_FORMAT:
            raise ValueError(f"unsupported schedule format {doc.get('format')!r}")
        return Schedule(
            experiment=Experiment(doc["experiment"]),
            seed=doc["seed"],
            participants=tuple(doc["participants"]),
            trials={p: tuple(TrialCell.from_dict(d) for d in cells) for p, cells in doc["trials"].items()},
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @staticmethod
    def load(path: str | Path) -> "Schedule":
        return Schedule.from_json(Path(path).read_text(encoding="utf-8"))


def build_schedule(experiment: Experiment, participants: int, seed: int) -> Schedule:
    """Deterministic schedule for a participant pool.

    exp1: 2 sessions x 3 depiction blocks x 36 treatments = 216 experimental
    trials per participant; exp2: 1 session x 3 x 24 = 72.
    """
    if participants < 1:
        raise ValueError("participants must be >= 1")
    depictions = DEPICTIONS[experiment]
    sessions = SESSIONS[experiment]
    treatments = treatment_grid(experiment)
    rng = Random(derive_seed(seed, "treatment-order"))
    rng.shuffle(treatments)
    square = latin_square(len(treatments))
    perms = list(itertools.permutations(depictions))

    ids = tuple(f"p{i:02d}" for i in range(participants))
    trials: dict[str, tuple[TrialCell, ...]] = {}
    for p, pid in enumerate(ids):
        order = perms[p % len(perms)]
        cells: list[TrialCell] = []
        index = 0
        for session in range(1, sessions + 1):
            for block, depiction in enumerate(order):
                for i in range(PRACTICE_PER_BLOCK[experiment]):
                    cells.append(TrialCell(
                        participant=pid, index=index, session=session, depiction=depiction,
                        spec=PRACTICE_SPEC[experiment],
                        graph_seed=derive_seed(seed, "practice", p, session, block, i),
                        practice=True,
                    ))
                    index += 1
                row = (p * sessions * len(depictions) + (session - 1) * len(depictions) + block) % len(treatments)
                for column in square[row]:
                    spec = treatments[column]
                    cells.append(TrialCell(
                        participant=pid, index=index, session=session, depiction=depiction,
                        spec=spec,
                        graph_seed=derive_seed(seed, "trial", p, session, block, column),
                        practice=False,
                    ))
                    index += 1
        trials[pid] = tuple(cells)

    return Schedule(experiment=experiment, seed=seed, participants=ids, trials=trials)
