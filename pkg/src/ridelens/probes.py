"""Assemble the five probe artifacts and serialize them for the CLI and UI.

Artifacts are plain JSON documents, version-tagged "probe/1", with sorted
keys so identical inputs export byte-identical files. Hours with no
personal trips are flagged as gaps, never written as zeros: a blank hour
may simply be work on another platform, and a zero would fabricate a
"no earnings" claim. Timestamps in meta derive from the data (newest
record), keeping builds reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import date, datetime, timedelta
from pathlib import Path
from typing import Sequence

from .errors import EmptyDayError, ProbeFormatError
from .metrics import (
    RATIO_OF_SUMS,
    AreaStatsResult,
    DayStat,
    HourlyStat,
    NeighborhoodStat,
    WeekdayStat,
    daily_stats,
    hourly_stats,
    neighborhood_stats,
    shade_scale,
    weekday_stats,
)
from .model import (
    NeighborhoodSet,
    PingSeries,
    Trip,
    shifted_day,
)
from .planner import DEFAULT_PLATFORM_CUT, DEFAULT_TPC

PROBE_VERSION = "probe/1"

KIND_HOURLY = "hourly"
KIND_CALENDAR = "calendar"
KIND_MAP = "map"
KIND_ANIMATION = "animation"
KIND_PLANNER_DEFAULTS = "planner_defaults"

ALL_KINDS = (KIND_HOURLY, KIND_CALENDAR, KIND_MAP, KIND_ANIMATION, KIND_PLANNER_DEFAULTS)

ANIMATION_GAP_HOLD_S = 900  # ping gaps longer than this render as held position


@dataclass(frozen=True)
class ProbeArtifact:
    kind: str
    scope: str  # personal | city | both
    payload: dict
    meta: dict


def _as_of(*trip_lists: Sequence[Trip], pings: PingSeries | None = None) -> str | None:
    """Newest timestamp across the inputs; deterministic build stamp."""
    newest: datetime | None = None
    for trips in trip_lists:
        for t in trips:
            if newest is None or t.start_ts > newest:
                newest = t.start_ts
    if pings is not None and len(pings):
        last = pings.pings[-1].ts
        if newest is None or last > newest:
            newest = last
    return newest.isoformat() if newest else None


def _hourly_row(stat: HourlyStat) -> dict:
    return {
        "hour": stat.hour,
        "trip_count": stat.trip_count,
        "fare_per_minute": stat.fare_per_minute,
        "avg_fare": stat.avg_fare,
        "avg_duration_min": stat.avg_duration_min,
    }


def build_hourly_probe(
    personal_trips: Sequence[Trip],
    city_trips: Sequence[Trip],
    day_start_offset: int = 0,
    fpm_method: str = RATIO_OF_SUMS,
) -> ProbeArtifact:
    """Side-by-side 24-bucket series; zero-trip hours are explicit gaps."""
    payload: dict = {"day_start_offset": day_start_offset}
    for label, trips in (("personal", personal_trips), ("city", city_trips)):
        series = hourly_stats(trips, day_start_offset_hours=day_start_offset, fpm_method=fpm_method)
        payload[label] = [_hourly_row(s) for s in series]
        payload[f"{label}_gap_hours"] = sorted(s.hour for s in series if s.trip_count == 0)
    return ProbeArtifact(
        kind=KIND_HOURLY,
        scope="both",
        payload=payload,
        meta={
            "rows": {"personal": len(personal_trips), "city": len(city_trips)},
            "generated_at": _as_of(personal_trips, city_trips),
        },
    )


def _day_row(stat: DayStat) -> dict:
    return {
        "trip_count": stat.trip_count,
        "total_earnings": stat.total_earnings,
        "fare_per_minute": stat.fare_per_minute,
        "avg_fare": stat.avg_fare,
        "shade": stat.shade,
    }


def _weekday_row(stat: WeekdayStat) -> dict:
    return {
        "weekday": stat.weekday,
        "label": stat.label,
        "total_trips": stat.total_trips,
        "avg_fare": stat.avg_fare,
        "avg_duration_min": stat.avg_duration_min,
        "fare_per_minute": stat.fare_per_minute,
    }


def build_calendar_probe(
    personal_trips: Sequence[Trip],
    city_trips: Sequence[Trip],
    date_range: tuple[date, date],
    n_shades: int = 5,
    day_start_offset: int = 0,
    earnings: str = "fare_plus_tip",
    fpm_method: str = RATIO_OF_SUMS,
) -> ProbeArtifact:
    """Monthly personal grid (shaded by earnings) plus the weekly comparison
    matrix of the four per-weekday variables for both scopes."""
    start, end = date_range
    days = daily_stats(
        personal_trips,
        date_range,
        n_shades=n_shades,
        day_start_offset_hours=day_start_offset,
        earnings=earnings,
        fpm_method=fpm_method,
    )
    payload = {
        "month": {
            "start": start.isoformat(),
            "end": end.isoformat(),
            "n_days": (end - start).days + 1,
            "n_shades": n_shades,
            "days": {d.isoformat(): _day_row(s) for d, s in sorted(days.items())},
        },
        "week": {
            label: [
                _weekday_row(s)
                for s in weekday_stats(trips, day_start_offset_hours=day_start_offset, fpm_method=fpm_method)
            ]
            for label, trips in (("personal", personal_trips), ("city", city_trips))
        },
        "day_start_offset": day_start_offset,
    }
    return ProbeArtifact(
        kind=KIND_CALENDAR,
        scope="both",
        payload=payload,
        meta={
            "date_range": [start.isoformat(), end.isoformat()],
            "rows": {"personal": len(personal_trips), "city": len(city_trips)},
            "generated_at": _as_of(personal_trips, city_trips),
        },
    )


def _area_row(stat: NeighborhoodStat) -> dict:
    return {
        "trip_count": stat.trip_count,
        "fare_per_minute": stat.fare_per_minute,
        "avg_fare": stat.avg_fare,
        "avg_miles_per_trip": stat.avg_miles_per_trip,
        "shade": stat.shade,
    }


def _area_map(result: AreaStatsResult) -> dict:
    return {area_id: _area_row(stat) for area_id, stat in sorted(result.stats.items())}


def _scope_maps(trips: Sequence[Trip], n_shades: int, fpm_method: str) -> dict:
    pickups = neighborhood_stats(trips, end="pickup", n_shades=n_shades, fpm_method=fpm_method)
    dropoffs = neighborhood_stats(trips, end="dropoff", n_shades=n_shades, fpm_method=fpm_method)

    # One pass of grouping; per-group dropoff stats gives every linked map
    # without rescanning the corpus per neighborhood.
    by_pickup: dict[str, list[Trip]] = {}
    for t in trips:
        if t.pickup_area is not None:
            by_pickup.setdefault(t.pickup_area, []).append(t)
    linked = {
        pickup_id: _area_map(
            neighborhood_stats(group, end="dropoff", n_shades=n_shades, fpm_method=fpm_method)
        )
        for pickup_id, group in sorted(by_pickup.items())
    }
    return {
        "pickups": _area_map(pickups),
        "dropoffs": _area_map(dropoffs),
        "linked_dropoffs": linked,
        "unclassified_pickups": pickups.unclassified,
        "unclassified_dropoffs": dropoffs.unclassified,
    }


def build_map_probe(
    personal_trips: Sequence[Trip],
    city_trips: Sequence[Trip],
    boundaries: NeighborhoodSet,
    n_shades: int = 5,
    fpm_method: str = RATIO_OF_SUMS,
) -> ProbeArtifact:
    """Pickup map, unfiltered drop-off map, and a precomputed linked
    drop-off map per pickup neighborhood, for both scopes; boundary
    geometry embedded once by id (including zero-trip polygons)."""
    payload = {
        "scopes": {
            "personal": _scope_maps(personal_trips, n_shades, fpm_method),
            "city": _scope_maps(city_trips, n_shades, fpm_method),
        },
        "geometry": {
            e.area_id: {"name": e.name, "rings": [[list(v) for v in ring] for ring in e.rings]}
            for e in boundaries
        },
        "n_shades": n_shades,
    }
    return ProbeArtifact(
        kind=KIND_MAP,
        scope="both",
        payload=payload,
        meta={
            "rows": {"personal": len(personal_trips), "city": len(city_trips)},
            "neighborhoods": len(boundaries),
            "generated_at": _as_of(personal_trips, city_trips),
        },
    )


def build_animation_probe(
    pings: PingSeries,
    trips: Sequence[Trip],
    day: date,
    frame_step_s: int = 30,
    day_start_offset: int = 0,
    gap_hold_s: int = ANIMATION_GAP_HOLD_S,
) -> ProbeArtifact:
    """Fixed-step movement trace for one (offset-bounded) day.

    Positions interpolate linearly between surrounding pings; across gaps
    longer than ``gap_hold_s`` the position holds at the last ping and the
    frame is flagged non-interpolated. ``trip_active`` marks frames inside
    any trip interval so renderers can color paid time differently.
    """
    window_start = datetime.combine(day, datetime.min.time()) + timedelta(hours=day_start_offset)
    window_end = window_start + timedelta(days=1)
    day_pings = [p for p in pings.pings if window_start <= p.ts < window_end]
    if len(day_pings) < 2:
        available = sorted({shifted_day(p.ts, day_start_offset).isoformat() for p in pings.pings})
        raise EmptyDayError(
            f"not enough pings on {day.isoformat()} (need >= 2, found {len(day_pings)})",
            available=available,
        )

    intervals = sorted((t.start_ts, t.end_ts) for t in trips)
    t0, t1 = day_pings[0].ts, day_pings[-1].ts
    n_frames = int((t1 - t0).total_seconds() // frame_step_s) + 1

    frames = []
    seg = 0  # index of the ping segment containing the frame time
    for k in range(n_frames):
        t = t0 + timedelta(seconds=k * frame_step_s)
        while seg + 1 < len(day_pings) - 1 and day_pings[seg + 1].ts <= t:
            seg += 1
        prev_ping, next_ping = day_pings[seg], day_pings[seg + 1]
        gap_s = (next_ping.ts - prev_ping.ts).total_seconds()
        if t <= prev_ping.ts or gap_s == 0:
            lat, lon = prev_ping.point
            interpolated = True
        elif t >= next_ping.ts:
            lat, lon = next_ping.point  # frame lands exactly on the last ping
            interpolated = True
        elif gap_s > gap_hold_s:
            lat, lon = prev_ping.point  # hold through the gap, flag it
            interpolated = False
        else:
            frac = (t - prev_ping.ts).total_seconds() / gap_s
            lat = prev_ping.point[0] + frac * (next_ping.point[0] - prev_ping.point[0])
            lon = prev_ping.point[1] + frac * (next_ping.point[1] - prev_ping.point[1])
            interpolated = True
        frames.append(
            {
                "t": t.isoformat(),
                "lat": lat,
                "lon": lon,
                "trip_active": any(start <= t <= end for start, end in intervals),
                "interpolated": interpolated,
            }
        )

    payload = {
        "date": day.isoformat(),
        "frame_step_s": frame_step_s,
        "day_start_offset": day_start_offset,
        "frames": frames,
    }
    return ProbeArtifact(
        kind=KIND_ANIMATION,
        scope="personal",
        payload=payload,
        meta={
            "pings_on_day": len(day_pings),
            "n_frames": n_frames,
            "generated_at": _as_of(trips, pings=pings),
        },
    )


def build_planner_defaults_probe(
    boundaries: NeighborhoodSet,
    city_trips: Sequence[Trip],
    platform_cut: float = DEFAULT_PLATFORM_CUT,
    tpc: float = DEFAULT_TPC,
    day_start_offset: int = 0,
) -> ProbeArtifact:
    """Form bootstrap for the planner UI: defaults plus selectable values."""
    payload = {
        "platform_cut": platform_cut,
        "tpc": tpc,
        "day_start_offset": day_start_offset,
        "days": ["mon", "tue", "wed", "thu", "fri", "sat", "sun"],
        "hours": list(range(24)),
        "precip_options": ["any", "dry", "wet"],
        "neighborhoods": [{"id": e.area_id, "name": e.name} for e in boundaries],
        "temp_range_seen_f": _temp_extent(city_trips),
    }
    return ProbeArtifact(
        kind=KIND_PLANNER_DEFAULTS,
        scope="city",
        payload=payload,
        meta={"rows": {"city": len(city_trips)}, "generated_at": _as_of(city_trips)},
    )


def _temp_extent(trips: Sequence[Trip]) -> list[float] | None:
    temps = [t.temp_f for t in trips if t.temp_f is not None]
    if not temps:
        return None
    return [min(temps), max(temps)]


def artifact_to_doc(artifact: ProbeArtifact) -> dict:
    return {
        "version": PROBE_VERSION,
        "kind": artifact.kind,
        "scope": artifact.scope,
        "meta": artifact.meta,
        "payload": artifact.payload,
    }


def doc_to_artifact(doc: dict) -> ProbeArtifact:
    version = doc.get("version")
    if version != PROBE_VERSION:
        raise ProbeFormatError(f"unsupported probe version {version!r} (expected {PROBE_VERSION!r})")
    for key in ("kind", "scope", "payload", "meta"):
        if key not in doc:
            raise ProbeFormatError(f"probe document missing {key!r}")
    return ProbeArtifact(kind=doc["kind"], scope=doc["scope"], payload=doc["payload"], meta=doc["meta"])


def export_probe(artifact: ProbeArtifact, path: str | Path) -> Path:
    """Deterministic serialization: sorted keys, compact separators."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(artifact_to_doc(artifact), sort_keys=True, separators=(",", ":")) + "\n"
    path.write_text(text, encoding="utf-8")
    return path


def import_probe(path: str | Path) -> ProbeArtifact:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ProbeFormatError(f"{path}: not valid JSON: {exc}") from exc
    return doc_to_artifact(doc)


def verify_artifact(
    artifact: ProbeArtifact,
    personal_trips: Sequence[Trip],
    city_trips: Sequence[Trip],
    rng,
    n_cells: int = 100,
    day_start_offset: int = 0,
    n_shades: int = 5,
    earnings: str = "fare_plus_tip",
    fpm_method: str = RATIO_OF_SUMS,
) -> list[str]:
    """Recompute randomly sampled payload cells straight from the trips.

    Returns a list of mismatch descriptions (empty means the artifact agrees
    with the aggregation layer cell-for-cell). Guards probe builds against
    payload-assembly drift.
    """
    corpora = {"personal": personal_trips, "city": city_trips}
    mismatches: list[str] = []

    def check(label: str, rendered, recomputed) -> None:
        if rendered != recomputed:
            mismatches.append(f"{label}: payload={rendered!r} recomputed={recomputed!r}")

    for _ in range(n_cells):
        if artifact.kind == KIND_HOURLY:
            scope = rng.choice(["personal", "city"])
            row = rng.choice(artifact.payload[scope])
            series = hourly_stats(corpora[scope], day_start_offset_hours=day_start_offset, fpm_method=fpm_method)
            stat = next(s for s in series if s.hour == row["hour"])
            check(f"hourly {scope} h{stat.hour}", row, _hourly_row(stat))
        elif artifact.kind == KIND_CALENDAR:
            section = rng.choice(["month", "week"])
            if section == "month" and artifact.payload["month"]["days"]:
                day_key = rng.choice(sorted(artifact.payload["month"]["days"]))
                rng_dates = artifact.payload["month"]
                days = daily_stats(
                    corpora["personal"],
                    (date.fromisoformat(rng_dates["start"]), date.fromisoformat(rng_dates["end"])),
                    n_shades=n_shades,
                    day_start_offset_hours=day_start_offset,
                    earnings=earnings,
                    fpm_method=fpm_method,
                )
                check(
                    f"calendar month {day_key}",
                    artifact.payload["month"]["days"][day_key],
                    _day_row(days[date.fromisoformat(day_key)]),
                )
            else:
                scope = rng.choice(["personal", "city"])
                row = rng.choice(artifact.payload["week"][scope])
                series = weekday_stats(corpora[scope], day_start_offset_hours=day_start_offset, fpm_method=fpm_method)
                check(f"calendar week {scope} wd{row['weekday']}", row, _weekday_row(series[row["weekday"]]))
        elif artifact.kind == KIND_MAP:
            scope = rng.choice(["personal", "city"])
            scope_payload = artifact.payload["scopes"][scope]
            kind = rng.choice(["pickups", "dropoffs", "linked"])
            if kind == "linked" and scope_payload["linked_dropoffs"]:
                pickup_id = rng.choice(sorted(scope_payload["linked_dropoffs"]))
                recomputed = _area_map(
                    neighborhood_stats(
                        [t for t in corpora[scope] if t.pickup_area == pickup_id],
                        end="dropoff",
                        n_shades=n_shades,
                        fpm_method=fpm_method,
                    )
                )
                check(f"map {scope} linked {pickup_id}", scope_payload["linked_dropoffs"][pickup_id], recomputed)
            elif kind != "linked" and scope_payload[kind]:
                area_id = rng.choice(sorted(scope_payload[kind]))
                end = "pickup" if kind == "pickups" else "dropoff"
                recomputed = _area_map(
                    neighborhood_stats(corpora[scope], end=end, n_shades=n_shades, fpm_method=fpm_method)
                )
                check(f"map {scope} {kind} {area_id}", scope_payload[kind][area_id], recomputed[area_id])
        else:
            break  # animation and defaults carry no metrics-derived cells
    return mismatches
