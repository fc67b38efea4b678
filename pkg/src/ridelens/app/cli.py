"""Single-binary CLI: ingest / probes / plan / serve.

Exit codes: 0 ok, 2 input error, 3 empty result (no trips match a plan),
1 internal error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from ..config import load_config
from ..errors import (
    ConfigError,
    EmptyInputError,
    GeometryError,
    NoMatchingTripsError,
    ProbeFormatError,
    SchemaError,
)
from ..planner import PlannerInput, PlannerInputError, planner_output_to_dict
from ..store import read_store
from . import state as appstate

_INPUT_ERRORS = (
    ConfigError,
    SchemaError,
    EmptyInputError,
    GeometryError,
    ProbeFormatError,
    FileNotFoundError,
)


class InputError(click.ClickException):
    exit_code = 2


class EmptyResultError(click.ClickException):
    exit_code = 3


def _config_option(f):
    return click.option(
        "--config",
        "config_path",
        required=True,
        type=click.Path(path_type=Path),
        help="Path to the INI config file naming data paths and column maps.",
    )(f)


def _load(config_path: Path):
    try:
        return load_config(config_path)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc


@click.group()
def main():
    """Rideshare trip analytics: build the store, export probes, plan weeks."""


@main.command()
@_config_option
def ingest(config_path: Path):
    """Load all sources, classify trips, attach weather, write the store."""
    config = _load(config_path)
    try:
        manifest = appstate.run_ingest(config)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc
    click.echo(f"store written to {config.store_dir}")
    click.echo(f"manifest hash {manifest['manifest_hash']}")
    for name, info in sorted(manifest["sources"].items()):
        click.echo(f"  {name}: {info.get('loaded', 0)} loaded", err=False)


@main.command()
@_config_option
@click.option("--verify", is_flag=True, help="Spot-check payload cells against the metrics layer.")
def probes(config_path: Path, verify: bool):
    """Build all probe artifacts from the store into the probes directory."""
    config = _load(config_path)
    try:
        store = read_store(config.store_dir)
        artifacts = appstate.build_probes(config, store)
        paths = appstate.write_probes(config, artifacts)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc
    for path in paths:
        click.echo(f"wrote {path}")
    if verify:
        import random

        from ..probes import verify_artifact

        rng = random.Random(0)
        problems: list[str] = []
        for artifact in artifacts.values():
            problems += verify_artifact(
                artifact,
                store.personal_trips,
                store.city_trips,
                rng,
                day_start_offset=config.day_start_offset,
                n_shades=config.n_shades,
                earnings=config.earnings_definition,
                fpm_method=config.fare_per_minute_method,
            )
        if problems:
            raise click.ClickException("verification failed:\n" + "\n".join(problems))
        click.echo("verification ok")


def _parse_int_set(text: str, what: str, lo: int, hi: int) -> frozenset[int]:
    """Parse "8-11,17,19" style selections into a set of integers."""
    out: set[int] = set()
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "-" in piece:
            try:
                a, b = piece.split("-", 1)
                start, end = int(a), int(b)
            except ValueError:
                raise InputError(f"bad {what} range: {piece!r}") from None
            out.update(range(start, end + 1))
        else:
            try:
                out.add(int(piece))
            except ValueError:
                raise InputError(f"bad {what} value: {piece!r}") from None
    bad = [v for v in out if not lo <= v <= hi]
    if bad:
        raise InputError(f"{what} out of range {lo}..{hi}: {sorted(bad)}")
    return frozenset(out)


_DAY_INDEX = {"mon": 0, "tue": 1, "wed": 2, "thu": 3, "fri": 4, "sat": 5, "sun": 6}


def _parse_days(text: str) -> frozenset[int]:
    out: set[int] = set()
    for piece in text.split(","):
        key = piece.strip().lower()[:3]
        if not key:
            continue
        if key not in _DAY_INDEX:
            raise InputError(f"bad day: {piece!r} (use mon..sun)")
        out.add(_DAY_INDEX[key])
    return frozenset(out)


@main.command()
@_config_option
@click.option("--hours-per-week", type=float, required=True, help="Hours planned for the week.")
@click.option("--days", "days_text", default="", help="Days worked, e.g. mon,tue,fri (default: all).")
@click.option("--hours", "hours_text", default="", help="Start hours worked, e.g. 8-11,17-19 (default: all).")
@click.option("--pickup", "pickup_text", default="", help="Pickup neighborhood ids, comma separated (default: all).")
@click.option("--temp-min", type=float, default=None, help="Lowest outdoor temperature to include, F.")
@click.option("--temp-max", type=float, default=None, help="Highest outdoor temperature to include, F.")
@click.option("--precip", type=click.Choice(["any", "dry", "wet"]), default="any")
@click.option("--gas-price", type=float, default=0.0, help="Dollars per gallon.")
@click.option("--mpg", type=float, default=25.0, help="Vehicle fuel economy.")
@click.option("--insurance-weekly", type=float, default=0.0)
@click.option("--misc-weekly", type=float, default=0.0, help="Other weekly (or amortized) expenses.")
@click.option("--platform-cut", type=float, default=None, help="Fraction of fares withheld (default from config).")
@click.option("--tpc", type=float, default=None, help="Fraction of time with a passenger (default from config).")
@click.option("--json", "as_json", is_flag=True, help="Print the full-precision result as JSON.")
def plan(
    config_path: Path,
    hours_per_week: float,
    days_text: str,
    hours_text: str,
    pickup_text: str,
    temp_min: float | None,
    temp_max: float | None,
    precip: str,
    gas_price: float,
    mpg: float,
    insurance_weekly: float,
    misc_weekly: float,
    platform_cut: float | None,
    tpc: float | None,
    as_json: bool,
):
    """Simulate a hypothetical week against the ingested city corpus."""
    config = _load(config_path)
    if (temp_min is None) != (temp_max is None):
        raise InputError("--temp-min and --temp-max must be given together")
    try:
        inp = PlannerInput(
            hpw=hours_per_week,
            days=_parse_days(days_text) if days_text else frozenset(range(7)),
            hours=_parse_int_set(hours_text, "hour", 0, 23) if hours_text else frozenset(range(24)),
            pickup_neighborhoods=frozenset(p.strip() for p in pickup_text.split(",") if p.strip()),
            temp_range_f=(temp_min, temp_max) if temp_min is not None else None,
            precip=precip,
            gas_price=gas_price,
            mpg=mpg,
            insurance_weekly=insurance_weekly,
            misc_weekly=misc_weekly,
            platform_cut=platform_cut if platform_cut is not None else config.planner.platform_cut,
            tpc=tpc if tpc is not None else config.planner.tpc,
        )
    except PlannerInputError as exc:
        raise InputError(str(exc)) from exc

    try:
        state = appstate.load_state(config)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc
    try:
        output = appstate.run_plan(state, inp)
    except NoMatchingTripsError as exc:
        raise EmptyResultError(f"{exc} (filters: {json.dumps(exc.filters)})") from exc

    if as_json:
        click.echo(json.dumps(planner_output_to_dict(output), sort_keys=True))
        return

    rows = [
        ("Projected trips", f"{round(output.pt)}"),
        ("Matching trips (n)", f"{output.subset.n}"),
        ("Avg fare", f"${output.subset.af:,.2f}"),
        ("Avg trip duration", f"{output.subset.atd:,.1f} min"),
        ("Gross fares", f"${output.gross_fares:,.2f}"),
        ("Driver fares (after cut)", f"${output.driver_fares:,.2f}"),
        ("Tips", f"${output.tips:,.2f}"),
        ("Paid miles", f"{output.paid_miles:,.1f}"),
        ("Total miles", f"{output.total_miles:,.1f}"),
        ("Gas cost", f"${output.gas_cost:,.2f}"),
        ("Fixed costs", f"${output.fixed_cost:,.2f}"),
        ("Net profit", f"${output.net:,.2f}"),
    ]
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        click.echo(f"{label:<{width}}  {value}")
    click.echo("")
    click.echo(output.summary)


@main.command()
@_config_option
@click.option("--host", default=None, help="Bind address (default from config; loopback).")
@click.option("--port", type=int, default=None)
@click.option(
    "--allow-external",
    is_flag=True,
    help="Required to bind anywhere but loopback; trip data is personal.",
)
def serve(config_path: Path, host: str | None, port: int | None, allow_external: bool):
    """Serve probe payloads and planner simulation over HTTP."""
    import uvicorn

    config = _load(config_path)
    bind_host = host or config.host
    bind_port = port or config.port
    if bind_host not in ("127.0.0.1", "localhost", "::1") and not allow_external:
        raise InputError(f"refusing to bind {bind_host} without --allow-external")
    try:
        state = appstate.load_state(config, with_probes=True)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc

    from .service import create_app

    uvicorn.run(create_app(state), host=bind_host, port=bind_port, log_level="info")


if __name__ == "__main__":
    sys.exit(main())
