"""Trial records (JSONL) and per-condition summaries.

One JSON object per line; schema "trial-record/1" (see docs/formats.md).
Summaries report, per condition cell, the mean and standard error over
participant means: each participant contributes one mean per cell, and
SE = stddev(participant means, ddof=1) / sqrt(n participants).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

RECORD_SCHEMA = "trial-record/1"

FACTORS = ("depiction", "nodes", "links", "skips", "layers")


class EmptyLog(ValueError):
    """No experimental records to summarize."""


@dataclass
class TrialRecord:
    participant: str
    trial_index: int
    practice: bool
    depiction: str
    spec: dict  # TreatmentSpec.as_dict form
    graph_seed: int
    source: int
    destination: int
    status: str  # completed | timed-out | abandoned
    elapsed_ms: float
    accuracy: int  # 1 iff completed before the timeout
    clicks: list[dict] = field(default_factory=list)

    def factor(self, name: str) -> str:
        if name == "depiction":
            return self.depiction
        if name == "nodes":
            return str(self.spec["nodes"])
        if name == "links":
            return f"{self.spec['linkDensity']:g}"
        if name == "skips":
            return f"{self.spec['skipDensity']:g}"
        if name == "layers":
            return str(self.spec["layers"])
        raise KeyError(name)

    def to_json_line(self) -> str:
        doc = {
            "schema": RECORD_SCHEMA,
            "participant": self.participant,
            "trialIndex": self.trial_index,
            "practice": self.practice,
            "depiction": self.depiction,
            "spec": self.spec,
            "graphSeed": self.graph_seed,
            "source": self.source,
            "destination": self.destination,
            "status": self.status,
            "elapsedMs": self.elapsed_ms,
            "accuracy": self.accuracy,
            "clicks": self.clicks,
        }
        return json.dumps(doc, sort_keys=True)

    @staticmethod
    def from_json_line(line: str) -> "TrialRecord":
        doc = json.loads(line)
        if doc.get("schema") != RECORD_SCHEMA:
            raise ValueError(f"unsupported record schema {doc.get('schema')!r}")
        return TrialRecord(
            participant=doc["participant"],
            trial_index=doc["trialIndex"],
            practice=doc["practice"],
            depiction=doc["depiction"],
            spec=doc["spec"],
            graph_seed=doc["graphSeed"],
            source=doc["source"],
            destination=doc["destination"],
            status=doc["status"],
            elapsed_ms=doc["elapsedMs"],
            accuracy=doc["accuracy"],
            clicks=doc.get("clicks", []),
        )


def append_record(path: str | Path, record: TrialRecord) -> None:
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(record.to_json_line() + "\n")


def read_records(path: str | Path) -> list[TrialRecord]:
    records = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            records.append(TrialRecord.from_json_line(line))
    return records


@dataclass(frozen=True)
class SummaryRow:
    factors: tuple[str, ...]
    levels: tuple[str, ...]
    n: int  # participants contributing to the cell
    mean_time_s: float
    se_time_s: float
    mean_accuracy: float
    se_accuracy: float


@dataclass
class SummaryTable:
    rows: list[SummaryRow]

    def to_csv(self) -> str:
        lines = ["grouping,levels,n,mean_time_s,se_time_s,mean_accuracy,se_accuracy"]
        for row in self.rows:
            lines.append(",".join([
                "*".join(row.factors),
                "|".join(row.levels),
                str(row.n),
                f"{row.mean_time_s:.6f}",
                f"{row.se_time_s:.6f}",
                f"{row.mean_accuracy:.6f}",
                f"{row.se_accuracy:.6f}",
            ]))
        return "\n".join(lines) + "\n"


def _mean_se(per_participant: dict[str, list[float]]) -> tuple[int, float, float]:
    means = np.array([np.mean(vals) for vals in per_participant.values()], dtype=float)
    n = len(means)
    mean = float(np.mean(means))
    se = float(np.std(means, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return n, mean, se


def summarize(
    records: Iterable[TrialRecord],
    groupings: Sequence[tuple[str, ...]] | None = None,
) -> SummaryTable:
    """Per-condition means and standard errors over participant means.

    Defaults to every single factor and every factor pair. Practice trials
    are excluded; an empty experimental log raises :class:`EmptyLog`.
    """
    data = [r for r in records if not r.practice]
    if not data:
        raise EmptyLog("no experimental records")
    if groupings is None:
        singles = [(f,) for f in FACTORS]
        pairs = [tuple(p) for p in itertools.combinations(FACTORS, 2)]
        groupings = singles + pairs

    rows: list[SummaryRow] = []
    for grouping in groupings:
        cells: dict[tuple[str, ...], dict[str, dict[str, list[float]]]] = {}
        for record in data:
            levels = tuple(record.factor(f) for f in grouping)
            cell = cells.setdefault(levels, {"time": {}, "accuracy": {}})
            cell["time"].setdefault(record.participant, []).append(record.elapsed_ms / 1000.0)
            cell["accuracy"].setdefault(record.participant, []).append(float(record.accuracy))
        for levels in sorted(cells):
            cell = cells[levels]
            n, mean_t, se_t = _mean_se(cell["time"])
            _, mean_a, se_a = _mean_se(cell["accuracy"])
            rows.append(SummaryRow(grouping, levels, n, mean_t, se_t, mean_a, se_a))
    return SummaryTable(rows)
