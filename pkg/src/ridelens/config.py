"""Config file loading: data paths, column maps, probe and planner defaults.

One INI-style file names every input path and maps canonical trip fields to
the columns of each source export. Personal-export schemas vary by platform
and change over time, so the shipped defaults are best-effort and every
mapping is overridable per source.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import ConfigError

# Canonical field names loaders understand, per source kind.
TRIP_FIELDS = (
    "trip_id",
    "start_ts",
    "end_ts",
    "duration_s",
    "miles",
    "fare",
    "tip",
    "additional_charges",
    "total",
    "pickup_lat",
    "pickup_lon",
    "dropoff_lat",
    "dropoff_lon",
    "pickup_area",
    "dropoff_area",
    "status",
)
PING_FIELDS = ("ts", "lat", "lon")
WEATHER_FIELDS = ("hour_ts", "temp_f", "precip_in")

_FIELDS_BY_KIND = {"trips": TRIP_FIELDS, "pings": PING_FIELDS, "weather": WEATHER_FIELDS}


@dataclass(frozen=True)
class ColumnMap:
    """Canonical field -> source column, plus timestamp parsing rules.

    ``timestamp_format`` is either ``"iso"`` (ISO-8601, fast path) or a
    strptime pattern. Timestamps are interpreted in ``timezone`` and stored
    as naive local wall-clock values.
    """

    columns: dict[str, str]
    timestamp_format: str = "iso"
    timezone: str = "America/Chicago"

    def validate(self, kind: str) -> None:
        known = _FIELDS_BY_KIND[kind]
        for name in self.columns:
            if name not in known:
                raise ConfigError(f"unknown canonical field {name!r} in {kind} column map")
        if kind == "trips":
            missing = [f for f in ("start_ts", "fare") if f not in self.columns]
            if "duration_s" not in self.columns and "end_ts" not in self.columns:
                missing.append("duration_s|end_ts")
            if missing:
                raise ConfigError(f"trip column map missing mandatory fields: {', '.join(missing)}")
        else:
            missing = [f for f in _FIELDS_BY_KIND[kind] if f not in self.columns]
            if missing:
                raise ConfigError(f"{kind} column map missing fields: {', '.join(missing)}")


# Chicago TNP open-data schema (portal column headers).
CITY_TRIP_COLUMNS = ColumnMap(
    columns={
        "trip_id": "Trip ID",
        "start_ts": "Trip Start Timestamp",
        "end_ts": "Trip End Timestamp",
        "duration_s": "Trip Seconds",
        "miles": "Trip Miles",
        "fare": "Fare",
        "tip": "Tip",
        "additional_charges": "Additional Charges",
        "total": "Trip Total",
        "pickup_lat": "Pickup Centroid Latitude",
        "pickup_lon": "Pickup Centroid Longitude",
        "dropoff_lat": "Dropoff Centroid Latitude",
        "dropoff_lon": "Dropoff Centroid Longitude",
    },
    timestamp_format="%m/%d/%Y %I:%M:%S %p",
)

# Generic personal export; platforms rename these often, override per config.
PERSONAL_TRIP_COLUMNS = ColumnMap(
    columns={
        "trip_id": "trip_id",
        "start_ts": "begin_trip_time",
        "end_ts": "dropoff_time",
        "fare": "fare_amount",
        "tip": "tip_amount",
        "miles": "trip_distance_miles",
        "pickup_lat": "begin_trip_lat",
        "pickup_lon": "begin_trip_lng",
        "dropoff_lat": "dropoff_lat",
        "dropoff_lon": "dropoff_lng",
        "status": "status",
    },
)

PING_COLUMNS = ColumnMap(columns={"ts": "timestamp", "lat": "lat", "lon": "lng"})

WEATHER_COLUMNS = ColumnMap(
    columns={"hour_ts": "datetime", "temp_f": "temp", "precip_in": "precip"},
)


@dataclass(frozen=True)
class PlannerDefaults:
    platform_cut: float = 0.25
    tpc: float = 0.55
    tips_subject_to_cut: bool = False
    deadhead_from_tpc: bool = True


@dataclass(frozen=True)
class AppConfig:
    """Everything the CLI and service need, resolved from one file."""

    city_trips_path: Path | None = None
    personal_trips_path: Path | None = None
    boundaries_path: Path | None = None
    weather_path: Path | None = None
    pings_path: Path | None = None
    store_dir: Path = Path("store")
    probes_dir: Path = Path("probes")

    timezone: str = "America/Chicago"
    city_month: str | None = None  # "YYYY-MM", limits the city corpus
    boundary_name_property: str | None = None

    city_columns: ColumnMap = field(default_factory=lambda: CITY_TRIP_COLUMNS)
    personal_columns: ColumnMap = field(default_factory=lambda: PERSONAL_TRIP_COLUMNS)
    ping_columns: ColumnMap = field(default_factory=lambda: PING_COLUMNS)
    weather_columns: ColumnMap = field(default_factory=lambda: WEATHER_COLUMNS)

    day_start_offset: int = 0  # hours; 4 models the Friday-4AM week
    n_shades: int = 5
    frame_step_s: int = 30
    earnings_definition: str = "fare_plus_tip"  # or "trip_total"
    fare_per_minute_method: str = "ratio_of_sums"  # or "mean_of_ratios"

    planner: PlannerDefaults = field(default_factory=PlannerDefaults)

    host: str = "127.0.0.1"  # loopback by default; personal data stays local
    port: int = 8765
    ui_dir: Path | None = None

    def validate_paths(self) -> None:
        for label, path in (
            ("city_trips", self.city_trips_path),
            ("personal_trips", self.personal_trips_path),
            ("boundaries", self.boundaries_path),
            ("weather", self.weather_path),
            ("pings", self.pings_path),
        ):
            if path is not None and not path.exists():
                raise ConfigError(f"{label} path does not exist: {path}")


def _columns_from_section(section, base: ColumnMap, timezone: str) -> ColumnMap:
    columns = {} if section.getboolean("clear_defaults", fallback=False) else dict(base.columns)
    fmt = base.timestamp_format
    for key, value in section.items():
        if key == "timestamp_format":
            fmt = value
        elif key != "clear_defaults":
            columns[key] = value
    return ColumnMap(columns=columns, timestamp_format=fmt, timezone=timezone)


def load_config(path: str | Path) -> AppConfig:
    """Parse an INI config file into an AppConfig."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc

    cfg = AppConfig()
    # Relative paths resolve against the config file's (absolute) directory,
    # so manifests embed the same source paths however the CLI was invoked.
    base = path.resolve().parent

    def _path(section: str, key: str, default: Path | None = None) -> Path | None:
        raw = parser.get(section, key, fallback=None)
        if raw is None or raw.strip() == "":
            return default
        p = Path(raw.strip())
        return p if p.is_absolute() else base / p

    if parser.has_section("paths"):
        cfg = replace(
            cfg,
            city_trips_path=_path("paths", "city_trips"),
            personal_trips_path=_path("paths", "personal_trips"),
            boundaries_path=_path("paths", "boundaries"),
            weather_path=_path("paths", "weather"),
            pings_path=_path("paths", "pings"),
            store_dir=_path("paths", "store_dir", base / "store"),
            probes_dir=_path("paths", "probes_dir", base / "probes"),
        )

    if parser.has_section("ingest"):
        sec = parser["ingest"]
        cfg = replace(
            cfg,
            timezone=sec.get("timezone", cfg.timezone),
            city_month=sec.get("city_month", cfg.city_month),
            boundary_name_property=sec.get("name_property", cfg.boundary_name_property),
        )

    for section, attr, default in (
        ("columns.city", "city_columns", CITY_TRIP_COLUMNS),
        ("columns.personal", "personal_columns", PERSONAL_TRIP_COLUMNS),
        ("columns.pings", "ping_columns", PING_COLUMNS),
        ("columns.weather", "weather_columns", WEATHER_COLUMNS),
    ):
        if parser.has_section(section):
            cmap = _columns_from_section(parser[section], default, cfg.timezone)
        else:
            cmap = replace(default, timezone=cfg.timezone)
        cfg = replace(cfg, **{attr: cmap})

    if parser.has_section("probes"):
        sec = parser["probes"]
        try:
            cfg = replace(
                cfg,
                day_start_offset=sec.getint("day_start_offset", cfg.day_start_offset),
                n_shades=sec.getint("n_shades", cfg.n_shades),
                frame_step_s=sec.getint("frame_step_s", cfg.frame_step_s),
                earnings_definition=sec.get("earnings_definition", cfg.earnings_definition),
                fare_per_minute_method=sec.get("fare_per_minute_method", cfg.fare_per_minute_method),
            )
        except ValueError as exc:
            raise ConfigError(f"bad [probes] value: {exc}") from exc

    if parser.has_section("planner"):
        sec = parser["planner"]
        try:
            cfg = replace(
                cfg,
                planner=PlannerDefaults(
                    platform_cut=sec.getfloat("platform_cut", 0.25),
                    tpc=sec.getfloat("tpc", 0.55),
                    tips_subject_to_cut=sec.getboolean("tips_subject_to_cut", False),
                    deadhead_from_tpc=sec.getboolean("deadhead_from_tpc", True),
                ),
            )
        except ValueError as exc:
            raise ConfigError(f"bad [planner] value: {exc}") from exc

    if parser.has_section("service"):
        sec = parser["service"]
        try:
            cfg = replace(
                cfg,
                host=sec.get("host", cfg.host),
                port=sec.getint("port", cfg.port),
                ui_dir=_path("service", "ui_dir"),
            )
        except ValueError as exc:
            raise ConfigError(f"bad [service] value: {exc}") from exc

    if not 0 <= cfg.day_start_offset <= 23:
        raise ConfigError("day_start_offset must be in 0..23")
    if cfg.n_shades < 2:
        raise ConfigError("n_shades must be at least 2")
    if cfg.earnings_definition not in ("fare_plus_tip", "trip_total"):
        raise ConfigError("earnings_definition must be fare_plus_tip or trip_total")
    if cfg.fare_per_minute_method not in ("ratio_of_sums", "mean_of_ratios"):
        raise ConfigError("fare_per_minute_method must be ratio_of_sums or mean_of_ratios")

    for kind, cmap in (
        ("trips", cfg.city_columns),
        ("trips", cfg.personal_columns),
        ("pings", cfg.ping_columns),
        ("weather", cfg.weather_columns),
    ):
        cmap.validate(kind)

    return cfg
