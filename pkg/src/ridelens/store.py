"""Canonical intermediate store: one columnar file per entity plus a manifest.

The manifest lists source paths, content digests, row counts, and the
column maps used, serialized with a stable key order; its hash is the
idempotence check (re-running ingest over unchanged inputs must reproduce
it exactly). Trips round-trip losslessly: timestamps as integer epoch
microseconds of the naive local wall-clock value, money and miles as
float64 bit patterns.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError
from .model import (
    Neighborhood,
    NeighborhoodSet,
    Ping,
    PingSeries,
    Trip,
    WeatherRecord,
    WeatherSeries,
    from_epoch_us,
    to_epoch_us,
)

STORE_VERSION = "store/1"

_TRIP_FILES = {"city": "city_trips.npz", "personal": "personal_trips.npz"}


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class StoreState:
    """Everything downstream consumers read; immutable by convention."""

    city_trips: list[Trip]
    personal_trips: list[Trip]
    boundaries: NeighborhoodSet
    weather: WeatherSeries
    pings: PingSeries | None
    manifest: dict


def _trips_to_arrays(trips: Sequence[Trip]) -> dict[str, np.ndarray]:
    n = len(trips)

    def strings(values: list[str]) -> np.ndarray:
        return np.asarray(values, dtype="U") if n else np.zeros(0, dtype="U1")

    def floats(getter) -> np.ndarray:
        return np.fromiter((getter(t) for t in trips), dtype=np.float64, count=n)

    nan = float("nan")

    def opt(value):
        return value if value is not None else nan

    return {
        "trip_id": strings([t.trip_id for t in trips]),
        "start_us": np.fromiter((to_epoch_us(t.start_ts) for t in trips), dtype=np.int64, count=n),
        "end_us": np.fromiter((to_epoch_us(t.end_ts) for t in trips), dtype=np.int64, count=n),
        "duration_s": floats(lambda t: t.duration_s),
        "miles": floats(lambda t: t.miles),
        "fare": floats(lambda t: t.fare),
        "tip": floats(lambda t: t.tip),
        "additional_charges": floats(lambda t: t.additional_charges),
        "total": floats(lambda t: t.total),
        "pickup_lat": floats(lambda t: opt(t.pickup_point[0] if t.pickup_point else None)),
        "pickup_lon": floats(lambda t: opt(t.pickup_point[1] if t.pickup_point else None)),
        "dropoff_lat": floats(lambda t: opt(t.dropoff_point[0] if t.dropoff_point else None)),
        "dropoff_lon": floats(lambda t: opt(t.dropoff_point[1] if t.dropoff_point else None)),
        "pickup_area": strings([t.pickup_area or "" for t in trips]),
        "dropoff_area": strings([t.dropoff_area or "" for t in trips]),
        "temp_f": floats(lambda t: opt(t.temp_f)),
        "precip_in": floats(lambda t: opt(t.precip_in)),
    }


def _trips_from_arrays(cols: dict[str, np.ndarray], source: str) -> list[Trip]:
    n = len(cols["start_us"])

    def point(lat: float, lon: float):
        return None if np.isnan(lat) or np.isnan(lon) else (float(lat), float(lon))

    def opt(value: float):
        return None if np.isnan(value) else float(value)

    trips = []
    for i in range(n):
        trips.append(
            Trip(
                trip_id=str(cols["trip_id"][i]),
                start_ts=from_epoch_us(int(cols["start_us"][i])),
                end_ts=from_epoch_us(int(cols["end_us"][i])),
                duration_s=float(cols["duration_s"][i]),
                miles=float(cols["miles"][i]),
                fare=float(cols["fare"][i]),
                tip=float(cols["tip"][i]),
                additional_charges=float(cols["additional_charges"][i]),
                total=float(cols["total"][i]),
                pickup_point=point(cols["pickup_lat"][i], cols["pickup_lon"][i]),
                dropoff_point=point(cols["dropoff_lat"][i], cols["dropoff_lon"][i]),
                pickup_area=str(cols["pickup_area"][i]) or None,
                dropoff_area=str(cols["dropoff_area"][i]) or None,
                source=source,
                temp_f=opt(cols["temp_f"][i]),
                precip_in=opt(cols["precip_in"][i]),
            )
        )
    return trips


def _boundaries_to_doc(nset: NeighborhoodSet) -> dict:
    return {
        "entries": [
            {"id": e.area_id, "name": e.name, "rings": [[list(v) for v in ring] for ring in e.rings]}
            for e in nset
        ]
    }


def _boundaries_from_doc(doc: dict) -> NeighborhoodSet:
    entries = tuple(
        Neighborhood(
            area_id=entry["id"],
            name=entry["name"],
            rings=tuple(tuple((float(lon), float(lat)) for lon, lat in ring) for ring in entry["rings"]),
        )
        for entry in doc["entries"]
    )
    return NeighborhoodSet(entries=entries)


def write_store(
    store_dir: str | Path,
    city_trips: Sequence[Trip],
    personal_trips: Sequence[Trip],
    boundaries: NeighborhoodSet,
    weather: WeatherSeries,
    pings: PingSeries | None,
    sources: dict,
    settings: dict,
) -> dict:
    """Write all entity files plus the manifest; returns the manifest."""
    store_dir = Path(store_dir)
    store_dir.mkdir(parents=True, exist_ok=True)

    np.savez(store_dir / _TRIP_FILES["city"], **_trips_to_arrays(city_trips))
    np.savez(store_dir / _TRIP_FILES["personal"], **_trips_to_arrays(personal_trips))

    np.savez(
        store_dir / "weather.npz",
        hour_us=np.fromiter((to_epoch_us(r.hour_ts) for r in weather.records), dtype=np.int64, count=len(weather)),
        temp_f=np.fromiter((r.temp_f for r in weather.records), dtype=np.float64, count=len(weather)),
        precip_in=np.fromiter((r.precip_in for r in weather.records), dtype=np.float64, count=len(weather)),
    )

    if pings is not None:
        np.savez(
            store_dir / "pings.npz",
            ts_us=np.fromiter((to_epoch_us(p.ts) for p in pings.pings), dtype=np.int64, count=len(pings)),
            lat=np.fromiter((p.point[0] for p in pings.pings), dtype=np.float64, count=len(pings)),
            lon=np.fromiter((p.point[1] for p in pings.pings), dtype=np.float64, count=len(pings)),
        )
    elif (store_dir / "pings.npz").exists():
        (store_dir / "pings.npz").unlink()

    boundaries_text = canonical_json(_boundaries_to_doc(boundaries))
    (store_dir / "boundaries.json").write_text(boundaries_text, encoding="utf-8")

    manifest = {
        "version": STORE_VERSION,
        "sources": sources,
        "settings": settings,
        "counts": {
            "city_trips": len(city_trips),
            "personal_trips": len(personal_trips),
            "neighborhoods": len(boundaries),
            "weather_hours": len(weather),
            "pings": len(pings) if pings is not None else 0,
        },
        "files": sorted(p.name for p in store_dir.iterdir() if p.name != "manifest.json"),
    }
    manifest["manifest_hash"] = sha256_text(canonical_json(manifest))
    (store_dir / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return manifest


def read_store(store_dir: str | Path) -> StoreState:
    store_dir = Path(store_dir)
    manifest_path = store_dir / "manifest.json"
    if not manifest_path.exists():
        raise ConfigError(f"no store at {store_dir} (run ingest first)")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    if manifest.get("version") != STORE_VERSION:
        raise ConfigError(f"unsupported store version {manifest.get('version')!r}")

    def load_trips(name: str, source: str) -> list[Trip]:
        with np.load(store_dir / _TRIP_FILES[name]) as data:
            return _trips_from_arrays(dict(data), source)

    city = load_trips("city", "city")
    personal = load_trips("personal", "personal")

    with np.load(store_dir / "weather.npz") as data:
        weather = WeatherSeries(
            records=tuple(
                WeatherRecord(hour_ts=from_epoch_us(int(us)), temp_f=float(t), precip_in=float(p))
                for us, t, p in zip(data["hour_us"], data["temp_f"], data["precip_in"])
            )
        )

    pings = None
    if (store_dir / "pings.npz").exists():
        with np.load(store_dir / "pings.npz") as data:
            pings = PingSeries(
                pings=tuple(
                    Ping(ts=from_epoch_us(int(us)), point=(float(lat), float(lon)))
                    for us, lat, lon in zip(data["ts_us"], data["lat"], data["lon"])
                )
            )

    boundaries = _boundaries_from_doc(json.loads((store_dir / "boundaries.json").read_text(encoding="utf-8")))
    return StoreState(
        city_trips=city,
        personal_trips=personal,
        boundaries=boundaries,
        weather=weather,
        pings=pings,
        manifest=manifest,
    )
