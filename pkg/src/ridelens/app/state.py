"""Pipeline orchestration shared by the CLI and the HTTP service.

The batch side (ingest, probe builds) writes the canonical store and probe
files; the serving side loads them once into immutable in-memory state.
CLI `plan` and POST /api/planner/simulate both call run_plan, so their
outputs are identical by construction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..config import AppConfig, ColumnMap
from ..errors import ConfigError
from ..geo import classify_trips
from ..ingest import (
    load_boundaries,
    load_city_trips,
    load_location_pings,
    load_personal_trips,
    load_weather,
)
from ..metrics import attach_weather, month_range
from ..model import shifted_day
from ..planner import PlannerInput, PlannerOutput, TripCorpus, simulate
from ..probes import (
    KIND_ANIMATION,
    KIND_CALENDAR,
    KIND_HOURLY,
    KIND_MAP,
    KIND_PLANNER_DEFAULTS,
    ProbeArtifact,
    artifact_to_doc,
    build_animation_probe,
    build_calendar_probe,
    build_hourly_probe,
    build_map_probe,
    build_planner_defaults_probe,
    export_probe,
    import_probe,
)
from ..store import StoreState, read_store, sha256_file, write_store

log = logging.getLogger(__name__)


def _columns_doc(cmap: ColumnMap) -> dict:
    return {
        "columns": dict(sorted(cmap.columns.items())),
        "timestamp_format": cmap.timestamp_format,
        "timezone": cmap.timezone,
    }


def run_ingest(config: AppConfig) -> dict:
    """Load all sources, classify, attach weather, write the store.

    Returns the manifest. Raises with the failing source named; the CLI
    maps that to exit code 2.
    """
    required = {
        "city_trips": config.city_trips_path,
        "personal_trips": config.personal_trips_path,
        "boundaries": config.boundaries_path,
        "weather": config.weather_path,
    }
    for label, path in required.items():
        if path is None:
            raise ConfigError(f"{label}: no path configured")
        if not path.exists():
            raise ConfigError(f"{label}: file not found: {path}")

    city = load_city_trips(config.city_trips_path, config.city_columns, config.city_month)
    personal = load_personal_trips(config.personal_trips_path, config.personal_columns)
    boundaries = load_boundaries(config.boundaries_path, config.boundary_name_property)
    weather = load_weather(config.weather_path, config.weather_columns)

    pings = None
    ping_result = None
    if config.pings_path is not None:
        if not config.pings_path.exists():
            raise ConfigError(f"pings: file not found: {config.pings_path}")
        ping_result = load_location_pings(config.pings_path, config.ping_columns)
        pings = ping_result.series

    city_classified = classify_trips(city.trips, boundaries)
    personal_classified = classify_trips(personal.trips, boundaries)
    city_weather = attach_weather(city_classified.trips, weather)
    personal_weather = attach_weather(personal_classified.trips, weather)

    sources = {
        "city_trips": {
            "path": str(config.city_trips_path),
            "sha256": sha256_file(config.city_trips_path),
            "raw_rows": city.raw_rows,
            "loaded": len(city.trips),
            "skipped": city.skipped,
            "excluded": city.excluded,
        },
        "personal_trips": {
            "path": str(config.personal_trips_path),
            "sha256": sha256_file(config.personal_trips_path),
            "raw_rows": personal.raw_rows,
            "loaded": len(personal.trips),
            "skipped": personal.skipped,
            "excluded": personal.excluded,
        },
        "boundaries": {
            "path": str(config.boundaries_path),
            "sha256": sha256_file(config.boundaries_path),
            "loaded": len(boundaries),
        },
        "weather": {
            "path": str(config.weather_path),
            "sha256": sha256_file(config.weather_path),
            "loaded": len(weather),
        },
    }
    if config.pings_path is not None and ping_result is not None:
        sources["pings"] = {
            "path": str(config.pings_path),
            "sha256": sha256_file(config.pings_path),
            "raw_rows": ping_result.raw_rows,
            "loaded": len(ping_result.series),
            "skipped": ping_result.skipped,
            "dropped_old": ping_result.dropped_old,
        }

    settings = {
        "timezone": config.timezone,
        "city_month": config.city_month,
        "columns": {
            "city": _columns_doc(config.city_columns),
            "personal": _columns_doc(config.personal_columns),
            "pings": _columns_doc(config.ping_columns),
            "weather": _columns_doc(config.weather_columns),
        },
        "diagnostics": {
            "city_unclassified_pickups": city_classified.unclassified_pickups,
            "city_unclassified_dropoffs": city_classified.unclassified_dropoffs,
            "personal_unclassified_pickups": personal_classified.unclassified_pickups,
            "personal_unclassified_dropoffs": personal_classified.unclassified_dropoffs,
            "city_weather_unmatched": city_weather.unmatched,
            "personal_weather_unmatched": personal_weather.unmatched,
        },
    }

    return write_store(
        config.store_dir,
        city_weather.trips,
        personal_weather.trips,
        boundaries,
        weather,
        pings,
        sources,
        settings,
    )


def _calendar_range(store: StoreState, config: AppConfig):
    trips = store.personal_trips or store.city_trips
    if config.city_month:
        return month_range(config.city_month)
    days = [shifted_day(t.start_ts, config.day_start_offset) for t in trips]
    return min(days), max(days)


def build_probes(config: AppConfig, store: StoreState) -> dict[str, ProbeArtifact]:
    """All probe artifacts; animation only when pings were ingested."""
    artifacts = {
        KIND_HOURLY: build_hourly_probe(
            store.personal_trips,
            store.city_trips,
            day_start_offset=config.day_start_offset,
            fpm_method=config.fare_per_minute_method,
        ),
        KIND_CALENDAR: build_calendar_probe(
            store.personal_trips,
            store.city_trips,
            _calendar_range(store, config),
            n_shades=config.n_shades,
            day_start_offset=config.day_start_offset,
            earnings=config.earnings_definition,
            fpm_method=config.fare_per_minute_method,
        ),
        KIND_MAP: build_map_probe(
            store.personal_trips,
            store.city_trips,
            store.boundaries,
            n_shades=config.n_shades,
            fpm_method=config.fare_per_minute_method,
        ),
        KIND_PLANNER_DEFAULTS: build_planner_defaults_probe(
            store.boundaries,
            store.city_trips,
            platform_cut=config.planner.platform_cut,
            tpc=config.planner.tpc,
            day_start_offset=config.day_start_offset,
        ),
    }
    if store.pings is not None and len(store.pings):
        last_day = shifted_day(store.pings.pings[-1].ts, config.day_start_offset)
        artifacts[KIND_ANIMATION] = build_animation_probe(
            store.pings,
            store.personal_trips,
            last_day,
            frame_step_s=config.frame_step_s,
            day_start_offset=config.day_start_offset,
        )
    else:
        log.warning("no location pings ingested; skipping the animation probe")
    return artifacts


def write_probes(config: AppConfig, artifacts: dict[str, ProbeArtifact]) -> list[Path]:
    paths = []
    for kind in sorted(artifacts):
        paths.append(export_probe(artifacts[kind], Path(config.probes_dir) / f"{kind}.json"))
    return paths


@dataclass
class AppState:
    """Immutable in-memory state the service answers from."""

    config: AppConfig
    store: StoreState
    corpus: TripCorpus
    probe_docs: dict[str, dict] = field(default_factory=dict)


def load_state(config: AppConfig, with_probes: bool = False) -> AppState:
    store = read_store(config.store_dir)
    corpus = TripCorpus(store.city_trips)
    corpus.arrays  # build the filter columns now; plans answer in milliseconds
    state = AppState(config=config, store=store, corpus=corpus)
    if with_probes:
        probe_dir = Path(config.probes_dir)
        for kind in (KIND_HOURLY, KIND_CALENDAR, KIND_MAP, KIND_PLANNER_DEFAULTS, KIND_ANIMATION):
            path = probe_dir / f"{kind}.json"
            if path.exists():
                state.probe_docs[kind] = artifact_to_doc(import_probe(path))
    return state


def run_plan(state: AppState, inp: PlannerInput) -> PlannerOutput:
    return simulate(
        state.corpus,
        inp,
        day_start_offset=state.config.day_start_offset,
        tips_subject_to_cut=state.config.planner.tips_subject_to_cut,
        deadhead_from_tpc=state.config.planner.deadhead_from_tpc,
    )
