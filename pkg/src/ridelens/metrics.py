"""Probe statistics: hourly series, calendar aggregates, weekday matrix,
per-neighborhood stats with linkage, shading, and weather enrichment.

Fare per minute is a ratio of sums by default (total fares over total
on-trip minutes within a bucket), which is robust to near-zero-duration
outliers; the per-trip-mean alternative stays available behind
``fpm_method="mean_of_ratios"`` for sensitivity checks. Zero-duration
trips never enter per-minute figures but always count toward volume.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import fsum
from datetime import date, datetime, timedelta
from typing import Iterable, Sequence

from .model import WEEKDAY_LABELS, Trip, WeatherSeries, shifted_day, shifted_weekday

RATIO_OF_SUMS = "ratio_of_sums"
MEAN_OF_RATIOS = "mean_of_ratios"


@dataclass(frozen=True, slots=True)
class HourlyStat:
    hour: int  # wall-clock hour the bucket displays at
    trip_count: int
    fare_per_minute: float | None
    avg_fare: float | None
    avg_duration_min: float | None


@dataclass(frozen=True, slots=True)
class DayStat:
    day: date
    trip_count: int
    total_earnings: float
    fare_per_minute: float | None
    avg_fare: float
    shade: int


@dataclass(frozen=True, slots=True)
class WeekdayStat:
    weekday: int  # Mon=0
    label: str
    total_trips: int
    avg_fare: float | None
    avg_duration_min: float | None
    fare_per_minute: float | None


@dataclass(frozen=True, slots=True)
class NeighborhoodStat:
    area_id: str
    trip_count: int
    fare_per_minute: float | None
    avg_fare: float
    avg_miles_per_trip: float
    shade: int


@dataclass(frozen=True)
class WeatherAttachResult:
    trips: list[Trip]
    unmatched: int


@dataclass(frozen=True)
class AreaStatsResult:
    stats: dict[str, NeighborhoodStat]
    unclassified: int


def attach_weather(trips: Sequence[Trip], weather: WeatherSeries) -> WeatherAttachResult:
    """Join each trip to the weather record of its floor-to-hour start time."""
    by_hour = weather.by_hour()
    out: list[Trip] = []
    unmatched = 0
    for trip in trips:
        record = by_hour.get(trip.start_ts.replace(minute=0, second=0, microsecond=0))
        if record is None:
            unmatched += 1
            out.append(trip)
        else:
            out.append(replace(trip, temp_f=record.temp_f, precip_in=record.precip_in))
    return WeatherAttachResult(trips=out, unmatched=unmatched)


def _fare_per_minute(trips: Iterable[Trip], method: str) -> float | None:
    """Per-minute earnings over positive-duration trips; None when there are none."""
    positive = [t for t in trips if t.duration_s > 0]
    if not positive:
        return None
    if method == MEAN_OF_RATIOS:
        return fsum(t.fare / (t.duration_s / 60.0) for t in positive) / len(positive)
    return fsum(t.fare for t in positive) / fsum(t.duration_s / 60.0 for t in positive)


def hourly_stats(
    trips: Sequence[Trip],
    day_start_offset_hours: int = 0,
    fpm_method: str = RATIO_OF_SUMS,
) -> list[HourlyStat]:
    """24 buckets keyed by wall-clock start hour.

    The day-start offset rotates the returned order so the series begins at
    the driver's day boundary (hours before it trail as the previous day's
    late-night block); bucket membership itself is pure wall-clock hour.
    """
    buckets: dict[int, list[Trip]] = {h: [] for h in range(24)}
    for trip in trips:
        buckets[trip.start_ts.hour].append(trip)

    out = []
    for i in range(24):
        hour = (day_start_offset_hours + i) % 24
        members = buckets[hour]
        if members:
            out.append(
                HourlyStat(
                    hour=hour,
                    trip_count=len(members),
                    fare_per_minute=_fare_per_minute(members, fpm_method),
                    avg_fare=fsum(t.fare for t in members) / len(members),
                    avg_duration_min=fsum(t.duration_s for t in members) / 60.0 / len(members),
                )
            )
        else:
            out.append(HourlyStat(hour=hour, trip_count=0, fare_per_minute=None, avg_fare=None, avg_duration_min=None))
    return out


def trip_earnings(trip: Trip, definition: str = "fare_plus_tip") -> float:
    return trip.total if definition == "trip_total" else trip.fare + trip.tip


def daily_stats(
    trips: Sequence[Trip],
    date_range: tuple[date, date],
    n_shades: int = 5,
    day_start_offset_hours: int = 0,
    earnings: str = "fare_plus_tip",
    fpm_method: str = RATIO_OF_SUMS,
) -> dict[date, DayStat]:
    """One entry per in-range date with at least one trip; no-trip days are
    absent, which renderers draw as blank rather than zero-earning."""
    start, end = date_range
    if end < start:
        raise ValueError("empty date range")
    by_day: dict[date, list[Trip]] = {}
    for trip in trips:
        day = shifted_day(trip.start_ts, day_start_offset_hours)
        if start <= day <= end:
            by_day.setdefault(day, []).append(trip)

    days = sorted(by_day)
    if not days:
        return {}
    totals = {d: fsum(trip_earnings(t, earnings) for t in by_day[d]) for d in days}
    shades = shade_scale([totals[d] for d in days], n_shades)
    out: dict[date, DayStat] = {}
    for i, day in enumerate(days):
        members = by_day[day]
        out[day] = DayStat(
            day=day,
            trip_count=len(members),
            total_earnings=totals[day],
            fare_per_minute=_fare_per_minute(members, fpm_method),
            avg_fare=fsum(t.fare for t in members) / len(members),
            shade=shades[i],
        )
    return out


def weekday_stats(
    trips: Sequence[Trip],
    day_start_offset_hours: int = 0,
    fpm_method: str = RATIO_OF_SUMS,
) -> list[WeekdayStat]:
    """Always 7 entries, Monday through Sunday."""
    by_weekday: dict[int, list[Trip]] = {wd: [] for wd in range(7)}
    for trip in trips:
        by_weekday[shifted_weekday(trip.start_ts, day_start_offset_hours)].append(trip)

    out = []
    for wd in range(7):
        members = by_weekday[wd]
        if members:
            out.append(
                WeekdayStat(
                    weekday=wd,
                    label=WEEKDAY_LABELS[wd],
                    total_trips=len(members),
                    avg_fare=fsum(t.fare for t in members) / len(members),
                    avg_duration_min=fsum(t.duration_s for t in members) / 60.0 / len(members),
                    fare_per_minute=_fare_per_minute(members, fpm_method),
                )
            )
        else:
            out.append(WeekdayStat(weekday=wd, label=WEEKDAY_LABELS[wd], total_trips=0, avg_fare=None, avg_duration_min=None, fare_per_minute=None))
    return out


def _area_stats(groups: dict[str, list[Trip]], unclassified: int, n_shades: int, fpm_method: str) -> AreaStatsResult:
    ids = sorted(groups)
    fpm = {a: _fare_per_minute(groups[a], fpm_method) for a in ids}
    shaded_ids = [a for a in ids if fpm[a] is not None]
    shades = dict(zip(shaded_ids, shade_scale([fpm[a] for a in shaded_ids], n_shades))) if shaded_ids else {}
    stats = {}
    for a in ids:
        members = groups[a]
        stats[a] = NeighborhoodStat(
            area_id=a,
            trip_count=len(members),
            fare_per_minute=fpm[a],
            avg_fare=fsum(t.fare for t in members) / len(members),
            avg_miles_per_trip=fsum(t.miles for t in members) / len(members),
            shade=shades.get(a, 0),
        )
    return AreaStatsResult(stats=stats, unclassified=unclassified)


def neighborhood_stats(
    trips: Sequence[Trip],
    end: str = "pickup",
    n_shades: int = 5,
    fpm_method: str = RATIO_OF_SUMS,
) -> AreaStatsResult:
    """Aggregates keyed by pickup_area or dropoff_area; shades over fare/min.

    Trips without a label at the chosen end are excluded and counted.
    """
    if end not in ("pickup", "dropoff"):
        raise ValueError("end must be 'pickup' or 'dropoff'")
    groups: dict[str, list[Trip]] = {}
    unclassified = 0
    for trip in trips:
        area = trip.pickup_area if end == "pickup" else trip.dropoff_area
        if area is None:
            unclassified += 1
        else:
            groups.setdefault(area, []).append(trip)
    return _area_stats(groups, unclassified, n_shades, fpm_method)


def linked_dropoff_stats(
    trips: Sequence[Trip],
    pickup_id: str,
    n_shades: int = 5,
    fpm_method: str = RATIO_OF_SUMS,
) -> AreaStatsResult:
    """Drop-off aggregates over trips that begin in ``pickup_id``.

    An unknown pickup id yields an empty map, indistinguishable here from
    "no trips"; resolving bad ids is the caller's lookup.
    """
    subset = [t for t in trips if t.pickup_area == pickup_id]
    return neighborhood_stats(subset, end="dropoff", n_shades=n_shades, fpm_method=fpm_method)


def shade_scale(values: Sequence[float], n_shades: int) -> list[int]:
    """Linear bins from min to max; the max (and any constant run) gets the
    darkest shade so a lone profitable value never renders as faint."""
    if n_shades < 2:
        raise ValueError("n_shades must be at least 2")
    if len(values) == 0:
        raise ValueError("values must be non-empty")
    lo = min(values)
    hi = max(values)
    if hi == lo:
        return [n_shades - 1] * len(values)
    span = hi - lo
    return [min(int((v - lo) / span * n_shades), n_shades - 1) for v in values]


def month_range(month: str) -> tuple[date, date]:
    """"YYYY-MM" -> (first day, last day) of that month."""
    first = datetime.strptime(month, "%Y-%m").date()
    if first.month == 12:
        nxt = first.replace(year=first.year + 1, month=1)
    else:
        nxt = first.replace(month=first.month + 1)
    return first, nxt - timedelta(days=1)
