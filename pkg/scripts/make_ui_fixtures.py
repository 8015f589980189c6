#!/usr/bin/env python3
"""Build the shared fixtures the browser client's echo test replays.

Produces, under frontend/fixtures/:
  - bundle_quilt.json / bundle_matrix.json / bundle_nodelink.json: one layout
    bundle per depiction for render-smoke tests;
  - replay_script.json: a completing click script with the exact highlight
    set and result the path engine returns after every click.

The client test feeds the recorded responses through a mocked HTTP layer and
checks the DOM shows exactly these highlight states, so the fixture is the
bridge that keeps the client's display semantics tied to the engine.
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from quiltlab.depict import make_bundle
from quiltlab.generate import (
    DEFAULT_DISPLAY,
    Experiment,
    TreatmentSpec,
    generate_until_valid,
    good_paths,
    regime_constraints,
)
from quiltlab.model import link_element
from quiltlab.pathtrace import ClickKind, click, make_state


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("frontend/fixtures"))
    parser.add_argument("--seed", type=int, default=2)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    spec = TreatmentSpec(50, 5, 0.5, 0.25, Experiment.EXP2)
    display = DEFAULT_DISPLAY[Experiment.EXP2]
    result = generate_until_valid(spec, args.seed, fit=display)

    for depiction, name in (("quilt-mixed", "quilt"), ("matrix", "matrix"), ("nodelink", "nodelink")):
        bundle = make_bundle(result.graph, depiction, display, result.source, result.destination)
        (args.out / f"bundle_{name}.json").write_text(bundle.to_json(), encoding="utf-8")

    constraints = regime_constraints(spec.experiment, spec.layers, result.source, result.destination)
    path = good_paths(result.graph, constraints, 1)[0]
    state = make_state(result.graph, constraints, 0.0)
    steps = []
    for i, link in enumerate(path):
        element = link_element(link)
        outcome = click(state, element, float(i + 1))
        steps.append({
            "element": element,
            "response": {
                "result": outcome.kind.value,
                "reason": outcome.reason,
                "status": state.status.value,
                "highlight": sorted(state.highlight()),
                "elapsedMs": (i + 1) * 1000.0,
            },
        })
    assert steps[-1]["response"]["result"] == ClickKind.COMPLETED.value

    script = {
        "spec": spec.as_dict(),
        "seed": args.seed,
        "depiction": "quilt-mixed",
        "source": result.source,
        "destination": result.destination,
        "initialHighlight": sorted(make_state(result.graph, constraints, 0.0).highlight()),
        "steps": steps,
    }
    (args.out / "replay_script.json").write_text(
        json.dumps(script, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    print(f"wrote fixtures for {len(path)}-click replay to {args.out}")


if __name__ == "__main__":
    main()
