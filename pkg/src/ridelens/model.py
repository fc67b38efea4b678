"""Canonical domain types: trips, neighborhoods, weather, location pings.

All timestamps are naive datetimes in the configured city timezone
(wall-clock semantics: hour-of-day and weekday bucketing follow the clock
on the wall, not UTC). Points are (lat, lon) in degrees; boundary ring
vertices are (lon, lat), matching the GeoJSON axis order they are loaded
from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta

SOURCE_PERSONAL = "personal"
SOURCE_CITY = "city"

WEEKDAY_LABELS = ("mon", "tue", "wed", "thu", "fri", "sat", "sun")

_EPOCH = datetime(1970, 1, 1)


def to_epoch_us(ts: datetime) -> int:
    """Naive local datetime -> microseconds since a fixed naive epoch."""
    delta = ts - _EPOCH
    return (delta.days * 86_400 + delta.seconds) * 1_000_000 + delta.microseconds


def from_epoch_us(us: int) -> datetime:
    return _EPOCH + timedelta(microseconds=int(us))


def shifted_day(ts: datetime, day_start_offset_hours: int = 0):
    """Calendar date owning ``ts`` once the day boundary is moved.

    With an offset of 4, times before 4 AM belong to the previous date
    (drivers' "Friday" runs 4 AM Friday to 4 AM Saturday).
    """
    return (ts - timedelta(hours=day_start_offset_hours)).date()


def shifted_weekday(ts: datetime, day_start_offset_hours: int = 0) -> int:
    """Weekday index (Mon=0) under the shifted day boundary."""
    return (ts - timedelta(hours=day_start_offset_hours)).weekday()


@dataclass(frozen=True, slots=True, kw_only=True)
class Trip:
    """One ride, from either the city open dataset or a personal export."""

    trip_id: str
    start_ts: datetime
    end_ts: datetime
    duration_s: float
    miles: float
    fare: float
    tip: float
    additional_charges: float
    total: float
    pickup_point: tuple[float, float] | None = None  # (lat, lon)
    dropoff_point: tuple[float, float] | None = None
    pickup_area: str | None = None
    dropoff_area: str | None = None
    source: str = SOURCE_CITY
    temp_f: float | None = None
    precip_in: float | None = None


@dataclass(frozen=True, slots=True)
class Neighborhood:
    """One named boundary; ``rings`` are closed (lon, lat) vertex loops."""

    area_id: str
    name: str
    rings: tuple[tuple[tuple[float, float], ...], ...]


@dataclass(frozen=True)
class NeighborhoodSet:
    """Official city neighborhoods, ordered by ascending id."""

    entries: tuple[Neighborhood, ...]
    _by_id: dict[str, Neighborhood] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ordered = tuple(sorted(self.entries, key=lambda e: e.area_id))
        object.__setattr__(self, "entries", ordered)
        object.__setattr__(self, "_by_id", {e.area_id: e for e in ordered})
        if len(self._by_id) != len(ordered):
            raise ValueError("neighborhood ids must be unique")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def get(self, area_id: str) -> Neighborhood | None:
        return self._by_id.get(area_id)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(e.area_id for e in self.entries)


@dataclass(frozen=True, slots=True)
class WeatherRecord:
    hour_ts: datetime  # truncated to the hour
    temp_f: float
    precip_in: float


@dataclass(frozen=True)
class WeatherSeries:
    """Hourly weather, strictly increasing, no duplicate hours."""

    records: tuple[WeatherRecord, ...]

    def __post_init__(self):
        hours = [r.hour_ts for r in self.records]
        if any(b <= a for a, b in zip(hours, hours[1:])):
            raise ValueError("weather records must be strictly increasing by hour")

    def __len__(self) -> int:
        return len(self.records)

    def by_hour(self) -> dict[datetime, WeatherRecord]:
        return {r.hour_ts: r for r in self.records}


@dataclass(frozen=True, slots=True)
class Ping:
    ts: datetime
    point: tuple[float, float]  # (lat, lon)


@dataclass(frozen=True)
class PingSeries:
    """Time-ordered location pings (trailing export window, ~30 days)."""

    pings: tuple[Ping, ...]

    def __post_init__(self):
        times = [p.ts for p in self.pings]
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("pings must be time-ordered")

    def __len__(self) -> int:
        return len(self.pings)
