"""Neighborhood classification: point-in-polygon tests over boundary sets.

Containment uses the even-odd (ray crossing) rule across all rings of an
entry, so holes subtract. Points exactly on an edge or vertex count as
inside; overlapping entries resolve to the lowest id. Geometry is planar
in degree space: city neighborhoods span well under half a degree, where
the flat-earth error is far below parcel resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from ..errors import GeometryError
from ..model import NeighborhoodSet, Trip
from .engine import active_backend, available_backends, classify_batch
from .index import NeighborhoodIndex

__all__ = [
    "ClassificationResult",
    "NeighborhoodIndex",
    "active_backend",
    "available_backends",
    "classify_batch",
    "classify_point",
    "classify_trips",
    "point_in_polygon",
]

Ring = Sequence[tuple[float, float]]


def _check_ring(ring: Ring) -> None:
    if len(ring) < 4:
        raise GeometryError(f"degenerate ring: {len(ring)} vertices (need >= 4, closed)")
    if tuple(ring[0]) != tuple(ring[-1]):
        raise GeometryError("ring is not closed (first vertex != last)")


def point_in_polygon(point: tuple[float, float], rings: Iterable[Ring]) -> bool:
    """Even-odd containment of a (lat, lon) point in (lon, lat) rings.

    One cross product per edge drives both tests: a zero cross with the
    point inside the edge's bounding box is the on-boundary tie-break
    (inside); otherwise edges straddling the point's latitude toggle
    parity when the crossing lies to the point's east.
    """
    lat, lon = point
    x, y = lon, lat
    inside = False
    for ring in rings:
        _check_ring(ring)
        for (x1, y1), (x2, y2) in zip(ring, ring[1:]):
            cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
            if cross == 0.0 and min(x1, x2) <= x <= max(x1, x2) and min(y1, y2) <= y <= max(y1, y2):
                return True
            if (y1 > y) != (y2 > y) and (cross > 0.0) == (y2 > y1):
                inside = not inside
    return inside


def classify_point(point: tuple[float, float], nset: NeighborhoodSet) -> str | None:
    """Id of the first containing entry in ascending id order, else None."""
    if len(nset) == 0:
        raise ValueError("neighborhood set is empty")
    for entry in nset:
        if point_in_polygon(point, entry.rings):
            return entry.area_id
    return None


@dataclass(frozen=True)
class ClassificationResult:
    trips: list[Trip]
    unclassified_pickups: int
    unclassified_dropoffs: int


def classify_trips(
    trips: Sequence[Trip],
    nset: NeighborhoodSet,
    index: NeighborhoodIndex | None = None,
    backend: str | None = None,
    use_grid: bool = True,
) -> ClassificationResult:
    """Populate pickup_area/dropoff_area from trip coordinates.

    Trips already carrying an area label pass through untouched; trips with
    a coordinate that falls in no entry stay unlabeled and are counted.
    """
    for entry in nset:
        for ring in entry.rings:
            _check_ring(ring)
    if index is None:
        index = NeighborhoodIndex(nset)

    pick_rows: list[int] = []
    drop_rows: list[int] = []
    for i, trip in enumerate(trips):
        if trip.pickup_area is None and trip.pickup_point is not None:
            pick_rows.append(i)
        if trip.dropoff_area is None and trip.dropoff_point is not None:
            drop_rows.append(i)

    n_pick = len(pick_rows)
    lats = np.empty(n_pick + len(drop_rows), dtype=np.float64)
    lons = np.empty_like(lats)
    for j, i in enumerate(pick_rows):
        lats[j], lons[j] = trips[i].pickup_point
    for j, i in enumerate(drop_rows, start=n_pick):
        lats[j], lons[j] = trips[i].dropoff_point

    if lats.size and index.n_entries:
        hits = classify_batch(lons, lats, index, use_grid=use_grid, backend=backend)
    else:
        hits = np.full(lats.size, -1, dtype=np.int32)

    pickup_label: dict[int, str] = {}
    dropoff_label: dict[int, str] = {}
    for j, i in enumerate(pick_rows):
        if hits[j] >= 0:
            pickup_label[i] = index.ids[hits[j]]
    for j, i in enumerate(drop_rows, start=n_pick):
        if hits[j] >= 0:
            dropoff_label[i] = index.ids[hits[j]]

    out: list[Trip] = []
    unclassified_pickups = 0
    unclassified_dropoffs = 0
    for i, trip in enumerate(trips):
        new_pickup = pickup_label.get(i)
        new_dropoff = dropoff_label.get(i)
        if new_pickup is not None or new_dropoff is not None:
            trip = replace(
                trip,
                pickup_area=new_pickup if new_pickup is not None else trip.pickup_area,
                dropoff_area=new_dropoff if new_dropoff is not None else trip.dropoff_area,
            )
        if trip.pickup_point is not None and trip.pickup_area is None:
            unclassified_pickups += 1
        if trip.dropoff_point is not None and trip.dropoff_area is None:
            unclassified_dropoffs += 1
        out.append(trip)

    return ClassificationResult(out, unclassified_pickups, unclassified_dropoffs)
