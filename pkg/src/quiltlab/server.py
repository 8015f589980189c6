"""Trial service and HTTP API.

All path validation is server-side: the browser client only renders bundles
and echoes highlight state returned from here. Timing is server-authoritative
(the injected clock); client timestamps are logged for diagnostics only.
Endpoint paths and payload fields are fixed in docs/api.md.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .depict import make_bundle
from .generate import DEFAULT_DISPLAY, DisplayBounds, generate_until_valid, regime_constraints
from .model import LayeredGraph
from .pathtrace import ClickKind, PathState, TrialStatus, click, make_state, tick
from .schedule import Schedule, TrialCell
from .summary import TrialRecord, append_record


class UnknownTrial(KeyError):
    pass


@dataclass
class ActiveTrial:
    trial_id: str
    cell: TrialCell
    graph: LayeredGraph
    source: int
    destination: int
    state: PathState
    clicks: list[dict] = field(default_factory=list)
    recorded: bool = False


class TrialService:
    """Serves schedule cells as interactive trials and logs the results.

    Click handling is serialized under one lock; log appends happen inside
    it, so records are written atomically and in order.
    """

    def __init__(
        self,
        schedule: Schedule,
        log_path: str | Path,
        clock: Callable[[], float] = time.monotonic,
        display: DisplayBounds | None = None,
        max_attempts: int = 1000,
    ) -> None:
        self.schedule = schedule
        self.log_path = Path(log_path)
        self.clock = clock
        self.display = display or DEFAULT_DISPLAY[schedule.experiment]
        self.max_attempts = max_attempts
        self._lock = threading.Lock()
        self._cursor: dict[str, int] = {}
        self._active: dict[str, ActiveTrial] = {}
        self._current: dict[str, str] = {}  # participant -> active trial id

    # -- trial flow ---------------------------------------------------------

    def next_trial(self, participant: str) -> dict | None:
        """The participant's next (or still-active) trial, or None when done."""
        with self._lock:
            if participant not in self.schedule.trials:
                raise UnknownTrial(participant)
            current = self._current.get(participant)
            if current is not None:
                trial = self._active[current]
                self._check_timeout(trial, self.clock())
                if not trial.recorded:
                    return self._trial_payload(trial)
            cells = self.schedule.trials[participant]
            index = self._cursor.get(participant, 0)
            if index >= len(cells):
                return None
            self._cursor[participant] = index + 1
            cell = cells[index]
            result = generate_until_valid(cell.spec, cell.graph_seed, self.max_attempts, self.display)
            constraints = regime_constraints(
                cell.spec.experiment, cell.spec.layers, result.source, result.destination
            )
            trial_id = f"{participant}-{cell.index}"
            trial = ActiveTrial(
                trial_id=trial_id,
                cell=cell,
                graph=result.graph,
                source=result.source,
                destination=result.destination,
                state=make_state(result.graph, constraints, self.clock()),
            )
            self._active[trial_id] = trial
            self._current[participant] = trial_id
            return self._trial_payload(trial)

    def _trial_payload(self, trial: ActiveTrial) -> dict:
        bundle = make_bundle(trial.graph, trial.cell.depiction, self.display, trial.source, trial.destination)
        return {
            "trialId": trial.trial_id,
            "participant": trial.cell.participant,
            "index": trial.cell.index,
            "session": trial.cell.session,
            "depiction": trial.cell.depiction,
            "practice": trial.cell.practice,
            "timeoutSeconds": 240.0,
            "markers": bundle.markers,
            "bundle": json.loads(bundle.to_json()),
            "highlight": sorted(trial.state.highlight()),
        }

    def handle_click(self, trial_id: str, element: str, client_ts: float | None = None) -> dict:
        with self._lock:
            trial = self._active.get(trial_id)
            if trial is None:
                raise UnknownTrial(trial_id)
            now = self.clock()
            self._check_timeout(trial, now)
            if trial.state.status is TrialStatus.TIMED_OUT:
                return {"error": "TimedOut", "status": trial.state.status.value}
            if trial.state.status is not TrialStatus.ACTIVE:
                return {"error": "ClickAfterEnd", "status": trial.state.status.value}
            outcome = click(trial.state, element, now)
            elapsed_ms = (now - trial.state.start_time) * 1000.0
            trial.clicks.append({
                "seq": len(trial.clicks),
                "element": element,
                "serverMs": round(elapsed_ms, 3),
                "clientTs": client_ts,
                "result": outcome.kind.value,
            })
            if outcome.kind is ClickKind.COMPLETED:
                self._finalize(trial, "completed", accuracy=1)
            return {
                "result": outcome.kind.value,
                "reason": outcome.reason,
                "status": trial.state.status.value,
                "highlight": sorted(trial.state.highlight()),
                "elapsedMs": round(elapsed_ms, 3),
            }

    def abandon(self, trial_id: str) -> dict:
        with self._lock:
            trial = self._active.get(trial_id)
            if trial is None:
                raise UnknownTrial(trial_id)
            if not trial.recorded:
                self._finalize(trial, "abandoned", accuracy=0)
            return {"status": "abandoned"}

    def _check_timeout(self, trial: ActiveTrial, now: float) -> None:
        tick(trial.state, now)
        if trial.state.status is TrialStatus.TIMED_OUT and not trial.recorded:
            self._finalize(trial, "timed-out", accuracy=0)

    def _finalize(self, trial: ActiveTrial, status: str, accuracy: int) -> None:
        elapsed = trial.state.elapsed
        if elapsed is None:
            elapsed = self.clock() - trial.state.start_time
        record = TrialRecord(
            participant=trial.cell.participant,
            trial_index=trial.cell.index,
            practice=trial.cell.practice,
            depiction=trial.cell.depiction,
            spec=trial.cell.spec.as_dict(),
            graph_seed=trial.cell.graph_seed,
            source=trial.source,
            destination=trial.destination,
            status=status,
            elapsed_ms=round(elapsed * 1000.0, 3),
            accuracy=accuracy,
            clicks=list(trial.clicks),
        )
        append_record(self.log_path, record)
        trial.recorded = True
        if self._current.get(trial.cell.participant) == trial.trial_id:
            del self._current[trial.cell.participant]


def create_app(service: TrialService) -> FastAPI:
    app = FastAPI(title="quiltlab trial service")

    @app.get("/api/participants/{participant}/next")
    def next_trial(participant: str):
        try:
            payload = service.next_trial(participant)
        except UnknownTrial:
            return JSONResponse({"error": "UnknownParticipant"}, status_code=404)
        if payload is None:
            return {"done": True}
        return payload

    @app.post("/api/trials/{trial_id}/click")
    def post_click(trial_id: str, body: dict):
        element = body.get("element")
        if not isinstance(element, str):
            return JSONResponse({"error": "BadRequest"}, status_code=400)
        try:
            payload = service.handle_click(trial_id, element, body.get("clientTs"))
        except UnknownTrial:
            return JSONResponse({"error": "UnknownTrial"}, status_code=404)
        if "error" in payload:
            return JSONResponse(payload, status_code=409)
        return payload

    @app.post("/api/trials/{trial_id}/abandon")
    def post_abandon(trial_id: str):
        try:
            return service.abandon(trial_id)
        except UnknownTrial:
            return JSONResponse({"error": "UnknownTrial"}, status_code=404)

    return app


def serve(schedule: Schedule, bind: str, log_path: str | Path) -> None:
    """Run the trial service until interrupted."""
    import uvicorn

    host, _, port = bind.partition(":")
    service = TrialService(schedule, log_path)
    app = create_app(service)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or "8000"), log_level="info")
