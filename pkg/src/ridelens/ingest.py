"""Loaders for the four external data sources plus personal location pings.

Every loader is a pure function of its file: malformed rows are skipped
and counted rather than fatal (the public dataset is large and dirty, and
the tallies keep ingestion auditable). Timestamps land as naive local
wall-clock values in the configured timezone.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from pathlib import Path
from zoneinfo import ZoneInfo

from .config import ColumnMap
from .errors import EmptyInputError, GeometryError, SchemaError
from .model import (
    SOURCE_CITY,
    SOURCE_PERSONAL,
    Neighborhood,
    NeighborhoodSet,
    Ping,
    PingSeries,
    Trip,
    WeatherRecord,
    WeatherSeries,
)

log = logging.getLogger(__name__)

PING_WINDOW_DAYS = 30  # platforms export the trailing 30 days of geodata

# Boundary files disagree on where the display name lives.
_NAME_PROPERTY_FALLBACKS = ("name", "pri_neigh", "community", "neighborhood")

_COMPLETED_STATUSES = {"completed", "complete", "fare", "delivered"}


@dataclass
class TripLoadResult:
    """Trips plus the per-row accounting the invariants are checked against."""

    trips: list[Trip]
    raw_rows: int = 0
    skipped: int = 0  # parse failures
    excluded: int = 0  # filtered out (month window, non-completed status)
    skip_reasons: dict[str, int] = field(default_factory=dict)


@dataclass
class PingLoadResult:
    series: PingSeries
    raw_rows: int = 0
    skipped: int = 0
    dropped_old: int = 0  # outside the trailing 30-day window


class _RowParser:
    def __init__(self, cmap: ColumnMap, header: list[str], kind: str, path: Path):
        cmap.validate(kind)
        missing = [col for col in cmap.columns.values() if col not in header]
        if missing:
            raise SchemaError(f"{path}: missing mapped column(s): {', '.join(sorted(missing))}")
        self.col = {name: header.index(col) for name, col in cmap.columns.items()}
        self.fmt = cmap.timestamp_format
        self.tz = ZoneInfo(cmap.timezone)

    def has(self, name: str) -> bool:
        return name in self.col

    def raw(self, row: list[str], name: str) -> str:
        return row[self.col[name]].strip()

    def ts(self, row: list[str], name: str) -> datetime:
        value = self.raw(row, name)
        if self.fmt == "iso":
            parsed = datetime.fromisoformat(value.replace("Z", "+00:00"))
        else:
            parsed = datetime.strptime(value, self.fmt)
        if parsed.tzinfo is not None:
            parsed = parsed.astimezone(self.tz).replace(tzinfo=None)
        return parsed

    def number(self, row: list[str], name: str, default: float | None = None) -> float | None:
        if name not in self.col:
            return default
        value = self.raw(row, name)
        if value == "":
            return default
        return float(value)

    def nonneg(self, row: list[str], name: str, default: float | None = None) -> float | None:
        value = self.number(row, name, default)
        if value is not None and value < 0:
            raise ValueError(f"{name} is negative")
        return value

    def point(self, row: list[str], lat_field: str, lon_field: str) -> tuple[float, float] | None:
        lat = self.number(row, lat_field)
        lon = self.number(row, lon_field)
        if lat is None or lon is None:
            return None
        return (lat, lon)


def _read_rows(path: Path):
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInputError(f"{path}: file is empty") from None
        yield [h.strip() for h in header]
        yield from reader


def _parse_trip(parser: _RowParser, row: list[str], n: int, source: str) -> Trip:
    start_ts = parser.ts(row, "start_ts")
    duration = parser.nonneg(row, "duration_s")
    end_ts = None
    if parser.has("end_ts") and parser.raw(row, "end_ts"):
        end_ts = parser.ts(row, "end_ts")
        if end_ts < start_ts:
            raise ValueError("end_ts before start_ts")
    if end_ts is None and duration is None:
        raise ValueError("need one of end_ts / duration_s")
    if end_ts is None:
        end_ts = start_ts + timedelta(seconds=duration)
    if duration is None:
        duration = (end_ts - start_ts).total_seconds()

    fare = parser.nonneg(row, "fare")
    if fare is None:
        raise ValueError("fare is empty")
    tip = parser.nonneg(row, "tip", 0.0)
    additional = parser.nonneg(row, "additional_charges", 0.0)
    miles = parser.nonneg(row, "miles", 0.0)
    total = parser.number(row, "total")
    if total is None:
        total = fare + tip + additional

    trip_id = parser.raw(row, "trip_id") if parser.has("trip_id") else f"{source}-{n}"
    pickup_area = parser.raw(row, "pickup_area") or None if parser.has("pickup_area") else None
    dropoff_area = parser.raw(row, "dropoff_area") or None if parser.has("dropoff_area") else None

    return Trip(
        trip_id=trip_id,
        start_ts=start_ts,
        end_ts=end_ts,
        duration_s=duration,
        miles=miles,
        fare=fare,
        tip=tip,
        additional_charges=additional,
        total=total,
        pickup_point=parser.point(row, "pickup_lat", "pickup_lon"),
        dropoff_point=parser.point(row, "dropoff_lat", "dropoff_lon"),
        pickup_area=pickup_area,
        dropoff_area=dropoff_area,
        source=source,
    )


def _load_trips(path: Path, cmap: ColumnMap, source: str, month: str | None) -> TripLoadResult:
    rows = _read_rows(path)
    parser = _RowParser(cmap, next(rows), "trips", path)
    result = TripLoadResult(trips=[])
    for row in rows:
        result.raw_rows += 1
        if not any(cell.strip() for cell in row):
            result.skipped += 1
            _tally(result.skip_reasons, "blank row")
            continue
        try:
            trip = _parse_trip(parser, row, result.raw_rows, source)
        except (ValueError, IndexError) as exc:
            result.skipped += 1
            _tally(result.skip_reasons, str(exc) or type(exc).__name__)
            continue
        if parser.has("status") and parser.raw(row, "status").lower() not in _COMPLETED_STATUSES:
            result.excluded += 1
            continue
        if month is not None and trip.start_ts.strftime("%Y-%m") != month:
            result.excluded += 1
            continue
        result.trips.append(trip)
    if result.raw_rows == 0 or (result.trips == [] and result.excluded == 0):
        raise EmptyInputError(f"{path}: no parseable rows")
    return result


def load_city_trips(path: str | Path, cmap: ColumnMap, month: str | None = None) -> TripLoadResult:
    """City open-data trips, optionally limited to one "YYYY-MM" month."""
    return _load_trips(Path(path), cmap, SOURCE_CITY, month)


def load_personal_trips(path: str | Path, cmap: ColumnMap) -> TripLoadResult:
    """A driver's own trip export; completed trips only when status is mapped."""
    return _load_trips(Path(path), cmap, SOURCE_PERSONAL, None)


def _slug(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", name.lower()).strip("_") or "area"


def _rings_of(geometry: dict, feature_name: str) -> list[tuple[tuple[float, float], ...]]:
    gtype = geometry.get("type")
    if gtype == "Polygon":
        polygons = [geometry["coordinates"]]
    elif gtype == "MultiPolygon":
        polygons = geometry["coordinates"]
    else:
        raise GeometryError(f"feature {feature_name!r}: unsupported geometry type {gtype!r}")
    rings = []
    for polygon in polygons:
        for ring in polygon:
            vertices = tuple((float(lon), float(lat)) for lon, lat, *_ in ring)
            if len(vertices) < 4:
                raise GeometryError(f"feature {feature_name!r}: ring has {len(vertices)} vertices")
            if vertices[0] != vertices[-1]:
                raise GeometryError(f"feature {feature_name!r}: ring is not closed")
            rings.append(vertices)
    return rings


def load_boundaries(path: str | Path, name_property: str | None = None) -> NeighborhoodSet:
    """Neighborhood polygons from a GeoJSON-style feature collection.

    Multi-polygon features yield multiple rings under one id; duplicate
    names are disambiguated with a numeric suffix (warned, not fatal).
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"boundaries file not found: {path}")
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    features = doc.get("features")
    if not isinstance(features, list) or not features:
        raise SchemaError(f"{path}: not a feature collection with features")

    entries: list[Neighborhood] = []
    seen: dict[str, int] = {}
    for feature in features:
        props = feature.get("properties") or {}
        name = None
        for key in ((name_property,) if name_property else ()) + _NAME_PROPERTY_FALLBACKS:
            if key and props.get(key):
                name = str(props[key])
                break
        if not name:
            raise SchemaError(f"{path}: feature without a usable name property")
        area_id = _slug(name)
        if area_id in seen:
            seen[area_id] += 1
            area_id = f"{area_id}_{seen[area_id]}"
            log.warning("duplicate neighborhood name %r; using id %r", name, area_id)
        else:
            seen[area_id] = 1
        entries.append(Neighborhood(area_id=area_id, name=name, rings=tuple(_rings_of(feature["geometry"], name))))
    return NeighborhoodSet(entries=tuple(entries))


def load_weather(path: str | Path, cmap: ColumnMap) -> WeatherSeries:
    """Hourly weather rows: truncated to the hour, sorted, last wins on dupes."""
    rows = _read_rows(Path(path))
    parser = _RowParser(cmap, next(rows), "weather", Path(path))
    by_hour: dict[datetime, WeatherRecord] = {}
    for row in rows:
        if not any(cell.strip() for cell in row):
            continue
        try:
            hour = parser.ts(row, "hour_ts").replace(minute=0, second=0, microsecond=0)
            temp = parser.number(row, "temp_f")
            precip = parser.nonneg(row, "precip_in", 0.0)
        except (ValueError, IndexError):
            continue
        if temp is None:
            continue
        by_hour[hour] = WeatherRecord(hour_ts=hour, temp_f=temp, precip_in=precip)
    return WeatherSeries(records=tuple(by_hour[h] for h in sorted(by_hour)))


def load_location_pings(path: str | Path, cmap: ColumnMap) -> PingLoadResult:
    """Timestamped coordinates; sorted, trimmed to the trailing 30-day window."""
    rows = _read_rows(Path(path))
    parser = _RowParser(cmap, next(rows), "pings", Path(path))
    result = PingLoadResult(series=PingSeries(pings=()))
    pings: list[Ping] = []
    for row in rows:
        result.raw_rows += 1
        try:
            ts = parser.ts(row, "ts")
            lat = parser.number(row, "lat")
            lon = parser.number(row, "lon")
            if lat is None or lon is None:
                raise ValueError("missing coordinate")
        except (ValueError, IndexError):
            result.skipped += 1
            continue
        pings.append(Ping(ts=ts, point=(lat, lon)))
    if not pings:
        raise EmptyInputError(f"{path}: no usable pings")
    pings.sort(key=lambda p: p.ts)
    cutoff = pings[-1].ts - timedelta(days=PING_WINDOW_DAYS)
    kept = [p for p in pings if p.ts >= cutoff]
    result.dropped_old = len(pings) - len(kept)
    if result.dropped_old:
        log.warning("dropped %d ping(s) older than the %d-day window", result.dropped_old, PING_WINDOW_DAYS)
    result.series = PingSeries(pings=tuple(kept))
    return result


def _tally(reasons: dict[str, int], key: str) -> None:
    reasons[key] = reasons.get(key, 0) + 1
