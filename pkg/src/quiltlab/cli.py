"""Command-line interface: generate, layout, render, schedule, serve, replay, summarize."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .bundle import LayoutBundle
from .depict import DEPICTION_CHOICES, make_bundle
from .generate import (
    DEFAULT_DISPLAY,
    DisplayBounds,
    Experiment,
    TreatmentSpec,
    generate_until_valid,
    provenance_for,
    regime_constraints,
    treatment_grid,
)
from .model import read_graph_file, write_graph_file
from .pathtrace import TrialStatus, replay as replay_clicks
from .render import RenderOptions, render as render_svg
from .schedule import Schedule, build_schedule
from .summary import read_records, summarize


@click.group()
def main() -> None:
    """Layered-graph depictions and path-finding trials."""


def _display_option(experiment: Experiment, width: float | None, height: float | None) -> DisplayBounds:
    base = DEFAULT_DISPLAY[experiment]
    if width is None and height is None:
        return base
    w = width if width is not None else base.width
    h = height if height is not None else base.height
    return DisplayBounds(w, h, h / 200.0)


@main.command()
@click.option("--experiment", type=click.Choice(["exp1", "exp2"]), default="exp1", show_default=True)
@click.option("--nodes", type=int, default=None, help="Node count (omit with --grid).")
@click.option("--layers", type=int, default=None)
@click.option("--link-density", type=float, default=None)
@click.option("--skip-density", type=float, default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--grid", is_flag=True, help="Generate the full treatment grid instead of one spec.")
@click.option("--seeds", type=int, default=1, show_default=True, help="Seeds per spec in --grid mode.")
@click.option("--display-width", type=float, default=None)
@click.option("--display-height", type=float, default=None)
@click.option("--out", "-o", type=click.Path(path_type=Path), required=True,
              help="Output file (single spec) or directory (--grid).")
def generate(experiment, nodes, layers, link_density, skip_density, seed, grid, seeds,
             display_width, display_height, out):
    """Generate accepted graphs and write interchange files."""
    exp = Experiment(experiment)
    display = _display_option(exp, display_width, display_height)
    if grid:
        out.mkdir(parents=True, exist_ok=True)
        for spec in treatment_grid(exp):
            for s in range(seeds):
                result = generate_until_valid(spec, seed + s, fit=display)
                name = (f"{exp.value}_n{spec.nodes}_l{spec.layers}_d{spec.link_density:g}"
                        f"_s{spec.skip_density:g}_seed{seed + s}.json")
                write_graph_file(out / name, result.graph, provenance_for(result, spec, seed + s))
                click.echo(f"{name}: accepted after {result.attempts} attempt(s)")
        return
    if None in (nodes, layers, link_density, skip_density):
        raise click.UsageError("--nodes/--layers/--link-density/--skip-density are required without --grid")
    spec = TreatmentSpec(nodes, layers, link_density, skip_density, exp)
    result = generate_until_valid(spec, seed, fit=display)
    write_graph_file(out, result.graph, provenance_for(result, spec, seed))
    click.echo(f"{out}: accepted after {result.attempts} attempt(s), "
               f"source n{result.source} destination n{result.destination}")


@main.command()
@click.option("--graph", "graph_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--depiction", type=click.Choice(DEPICTION_CHOICES), required=True)
@click.option("--display-width", type=float, default=None)
@click.option("--display-height", type=float, default=None)
@click.option("--out", "-o", type=click.Path(path_type=Path), required=True)
def layout(graph_path, depiction, display_width, display_height, out):
    """Lay a graph out as a depiction and write the layout bundle."""
    g, provenance = read_graph_file(graph_path)
    exp = Experiment(provenance.get("spec", {}).get("experiment", "exp1"))
    display = _display_option(exp, display_width, display_height)
    bundle = make_bundle(g, depiction, display, provenance.get("source"), provenance.get("destination"))
    Path(out).write_text(bundle.to_json(), encoding="utf-8")
    click.echo(f"{out}: {len(bundle.shapes)} shapes, "
               f"{bundle.bounds.width:.0f}x{bundle.bounds.height:.0f}")


@main.command()
@click.option("--bundle", "bundle_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--highlight", default="", help="Comma-separated element ids to restyle red.")
@click.option("--out", "-o", type=click.Path(path_type=Path), required=True)
def render(bundle_path, highlight, out):
    """Render a layout bundle to SVG."""
    bundle = LayoutBundle.from_json(Path(bundle_path).read_text(encoding="utf-8"))
    ids = frozenset(x for x in highlight.split(",") if x)
    svg = render_svg(bundle, RenderOptions(highlight=ids))
    Path(out).write_text(svg, encoding="utf-8")
    click.echo(f"{out}: {len(svg)} bytes")


@main.command()
@click.option("--experiment", type=click.Choice(["exp1", "exp2"]), required=True)
@click.option("--participants", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", "-o", type=click.Path(path_type=Path), required=True)
def schedule(experiment, participants, seed, out):
    """Build a counterbalanced trial schedule."""
    sched = build_schedule(Experiment(experiment), participants, seed)
    sched.save(out)
    per = len(sched.experimental(sched.participants[0]))
    click.echo(f"{out}: {participants} participants, {per} experimental trials each")


@main.command()
@click.option("--schedule", "schedule_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--bind", default="127.0.0.1:8000", show_default=True, envvar="QUILTLAB_BIND",
              help="host:port (env QUILTLAB_BIND).")
@click.option("--data-dir", type=click.Path(path_type=Path), default=Path("."), show_default=True,
              envvar="QUILTLAB_DATA", help="Directory for the trial log (env QUILTLAB_DATA).")
@click.option("--log-name", default="trials.jsonl", show_default=True)
def serve(schedule_path, bind, data_dir, log_name):
    """Run the trial service over HTTP."""
    from .server import serve as run_serve

    sched = Schedule.load(schedule_path)
    data_dir.mkdir(parents=True, exist_ok=True)
    run_serve(sched, bind, data_dir / log_name)


@main.command()
@click.option("--log", "log_path", type=click.Path(exists=True, path_type=Path), required=True)
def replay(log_path):
    """Re-run recorded click logs through the path engine and verify verdicts."""
    records = read_records(log_path)
    mismatches = 0
    for record in records:
        spec = TreatmentSpec.from_dict(record.spec)
        result = generate_until_valid(spec, record.graph_seed)
        constraints = regime_constraints(spec.experiment, spec.layers, result.source, result.destination)
        clicks = [(c["element"], c["serverMs"] / 1000.0) for c in record.clicks]
        state, _ = replay_clicks(result.graph, constraints, 0.0, clicks)
        accuracy = 1 if state.status is TrialStatus.COMPLETED else 0
        ok = accuracy == record.accuracy
        mismatches += 0 if ok else 1
        click.echo(f"{record.participant} trial {record.trial_index}: "
                   f"{state.status.value} ({'ok' if ok else 'MISMATCH'})")
    click.echo(f"{len(records)} trial(s), {mismatches} mismatch(es)")
    if mismatches:
        sys.exit(1)


@main.command("summarize")
@click.option("--log", "log_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--out", "-o", type=click.Path(path_type=Path), default=None,
              help="CSV output path (default: stdout).")
def summarize_cmd(log_path, out):
    """Per-condition mean time/accuracy with standard errors."""
    from .summary import EmptyLog

    try:
        table = summarize(read_records(log_path))
    except EmptyLog as exc:
        raise click.ClickException(str(exc))
    csv = table.to_csv()
    if out is None:
        click.echo(csv, nl=False)
    else:
        Path(out).write_text(csv, encoding="utf-8")
        click.echo(f"{out}: {len(table.rows)} rows")


if __name__ == "__main__":
    main()
