"""What-if weekly earnings simulation over the city trip corpus.

A hypothetical schedule filters the corpus down to matching trips; the
subset's average fare and average trip duration drive the projection

    projected_trips = (60 / avg_trip_duration_min) * utilization * hours_per_week
    gross_fares     = avg_fare * projected_trips

with tips and mileage scaled the same way, then the expense model (gas,
platform cut, fixed weekly costs) yields net profit. Projected trips stay
fractional internally and are rounded only for display, so rounding never
compounds into the dollar figures.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import NoMatchingTripsError, RideLensError
from .model import WEEKDAY_LABELS, Trip, shifted_weekday, to_epoch_us

DEFAULT_PLATFORM_CUT = 0.25  # fraction of fares the platform withholds
DEFAULT_TPC = 0.55  # fraction of working time spent with a passenger

LOW_CONFIDENCE_N = 30  # below this, the subset is too thin to trust

_US_PER_HOUR = 3_600_000_000
_US_PER_DAY = 86_400_000_000


class PlannerInputError(RideLensError):
    """Invalid planner input; ``field_errors`` pairs field names with messages."""

    def __init__(self, field_errors: list[tuple[str, str]]):
        super().__init__("; ".join(f"{f}: {m}" for f, m in field_errors))
        self.field_errors = field_errors


@dataclass(frozen=True, kw_only=True)
class PlannerInput:
    """A driver's hypothetical week plus expense and platform parameters."""

    hpw: float
    days: frozenset[int] = frozenset(range(7))  # Mon=0
    hours: frozenset[int] = frozenset(range(24))  # wall-clock start hours
    pickup_neighborhoods: frozenset[str] = frozenset()  # empty = all
    temp_range_f: tuple[float, float] | None = None
    precip: str = "any"  # any | dry | wet
    gas_price: float = 0.0
    mpg: float = 25.0
    insurance_weekly: float = 0.0
    misc_weekly: float = 0.0
    platform_cut: float = DEFAULT_PLATFORM_CUT
    tpc: float = DEFAULT_TPC

    def __post_init__(self):
        errors: list[tuple[str, str]] = []
        if not (isinstance(self.hpw, (int, float)) and np.isfinite(self.hpw) and self.hpw > 0):
            errors.append(("hpw", "must be a positive number of hours"))
        if not self.days:
            errors.append(("days", "must name at least one day"))
        elif not all(isinstance(d, int) and 0 <= d <= 6 for d in self.days):
            errors.append(("days", "entries must be weekday indices 0..6 (Mon=0)"))
        if not self.hours:
            errors.append(("hours", "must name at least one hour"))
        elif not all(isinstance(h, int) and 0 <= h <= 23 for h in self.hours):
            errors.append(("hours", "entries must be hours 0..23"))
        if self.temp_range_f is not None:
            lo, hi = self.temp_range_f
            if not (np.isfinite(lo) and np.isfinite(hi) and lo <= hi):
                errors.append(("temp_range_f", "must be [min, max] with min <= max"))
        if self.precip not in ("any", "dry", "wet"):
            errors.append(("precip", "must be any, dry, or wet"))
        if not (np.isfinite(self.gas_price) and self.gas_price >= 0):
            errors.append(("gas_price", "must be >= 0"))
        if not (np.isfinite(self.mpg) and self.mpg > 0):
            errors.append(("mpg", "must be > 0"))
        if not (np.isfinite(self.insurance_weekly) and self.insurance_weekly >= 0):
            errors.append(("insurance_weekly", "must be >= 0"))
        if not (np.isfinite(self.misc_weekly) and self.misc_weekly >= 0):
            errors.append(("misc_weekly", "must be >= 0"))
        if not (np.isfinite(self.platform_cut) and 0 <= self.platform_cut < 1):
            errors.append(("platform_cut", "must be in [0, 1)"))
        if not (np.isfinite(self.tpc) and 0 < self.tpc <= 1):
            errors.append(("tpc", "must be in (0, 1]"))
        if errors:
            raise PlannerInputError(errors)

    def describe_filters(self) -> dict:
        """Echo of the schedule filters, for errors and summaries."""
        return {
            "days": [WEEKDAY_LABELS[d] for d in sorted(self.days)],
            "hours": sorted(self.hours),
            "pickup_neighborhoods": sorted(self.pickup_neighborhoods),
            "temp_range_f": list(self.temp_range_f) if self.temp_range_f else None,
            "precip": self.precip,
        }


_FIELD_NAMES = (
    "hpw",
    "days",
    "hours",
    "pickup_neighborhoods",
    "temp_range_f",
    "precip",
    "gas_price",
    "mpg",
    "insurance_weekly",
    "misc_weekly",
    "platform_cut",
    "tpc",
)

_LABEL_TO_WEEKDAY = {label: i for i, label in enumerate(WEEKDAY_LABELS)}


def _coerce_days(raw, errors) -> frozenset[int]:
    days = set()
    for item in raw:
        if isinstance(item, bool):
            errors.append(("days", f"not a weekday: {item!r}"))
        elif isinstance(item, int):
            days.add(item)
        elif isinstance(item, str) and item.strip().lower()[:3] in _LABEL_TO_WEEKDAY:
            days.add(_LABEL_TO_WEEKDAY[item.strip().lower()[:3]])
        else:
            errors.append(("days", f"not a weekday: {item!r}"))
    return frozenset(days)


def planner_input_from_dict(doc: dict) -> PlannerInput:
    """Build and validate a PlannerInput from a request/flag document.

    Unknown fields are rejected so typos fail loudly instead of silently
    falling back to defaults.
    """
    if not isinstance(doc, dict):
        raise PlannerInputError([("body", "expected a JSON object")])
    errors: list[tuple[str, str]] = []
    for key in doc:
        if key not in _FIELD_NAMES:
            errors.append((key, "unknown field"))

    kwargs: dict = {}
    if "hpw" not in doc:
        errors.append(("hpw", "required"))

    def _num(name):
        value = doc[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            errors.append((name, "must be a number"))
            return None
        return float(value)

    for name in ("hpw", "gas_price", "mpg", "insurance_weekly", "misc_weekly", "platform_cut", "tpc"):
        if name in doc:
            value = _num(name)
            if value is not None:
                kwargs[name] = value
    if "days" in doc:
        if isinstance(doc["days"], (list, tuple, set)):
            kwargs["days"] = _coerce_days(doc["days"], errors)
        else:
            errors.append(("days", "must be a list"))
    if "hours" in doc:
        if isinstance(doc["hours"], (list, tuple, set)) and all(
            isinstance(h, int) and not isinstance(h, bool) for h in doc["hours"]
        ):
            kwargs["hours"] = frozenset(doc["hours"])
        else:
            errors.append(("hours", "must be a list of integers"))
    if "pickup_neighborhoods" in doc:
        if isinstance(doc["pickup_neighborhoods"], (list, tuple, set)) and all(
            isinstance(a, str) for a in doc["pickup_neighborhoods"]
        ):
            kwargs["pickup_neighborhoods"] = frozenset(doc["pickup_neighborhoods"])
        else:
            errors.append(("pickup_neighborhoods", "must be a list of neighborhood ids"))
    if "temp_range_f" in doc and doc["temp_range_f"] is not None:
        rng = doc["temp_range_f"]
        if isinstance(rng, (list, tuple)) and len(rng) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in rng):
            kwargs["temp_range_f"] = (float(rng[0]), float(rng[1]))
        else:
            errors.append(("temp_range_f", "must be [min, max] or null"))
    if "precip" in doc:
        if isinstance(doc["precip"], str):
            kwargs["precip"] = doc["precip"]
        else:
            errors.append(("precip", "must be a string"))

    if errors:
        raise PlannerInputError(errors)
    return PlannerInput(**kwargs)


@dataclass(frozen=True, slots=True)
class SubsetStats:
    """Descriptives of the filtered corpus the projection rests on."""

    n: int
    af: float  # average fare, dollars
    atd: float  # average trip duration, minutes (positive durations only)
    avg_tip: float
    avg_miles: float


@dataclass(frozen=True, slots=True)
class Projection:
    pt: float  # projected trips/week, fractional
    gross_fares: float
    tips: float
    paid_miles: float
    total_miles: float


@dataclass(frozen=True, slots=True)
class PlannerOutput:
    pt: float
    gross_fares: float
    driver_fares: float
    tips: float
    paid_miles: float
    total_miles: float
    gas_cost: float
    fixed_cost: float
    net: float
    subset: SubsetStats
    summary: str


class TripCorpus:
    """Immutable trip list with cached column arrays for fast filtering."""

    def __init__(self, trips: Sequence[Trip]):
        self._trips = list(trips)
        self._arrays: dict[str, np.ndarray] | None = None
        self._area_to_idx: dict[str, int] | None = None

    def __len__(self) -> int:
        return len(self._trips)

    def __iter__(self):
        return iter(self._trips)

    def __getitem__(self, i):
        return self._trips[i]

    @property
    def trips(self) -> list[Trip]:
        return self._trips

    def _build(self) -> None:
        trips = self._trips
        n = len(trips)
        start_us = np.fromiter((to_epoch_us(t.start_ts) for t in trips), dtype=np.int64, count=n)
        areas = sorted({t.pickup_area for t in trips if t.pickup_area is not None})
        self._area_to_idx = {a: i for i, a in enumerate(areas)}
        lookup = self._area_to_idx
        pickup_idx = np.fromiter(
            (lookup[t.pickup_area] if t.pickup_area is not None else -1 for t in trips),
            dtype=np.int32,
            count=n,
        )
        nan = float("nan")
        self._arrays = {
            "start_us": start_us,
            "fare": np.fromiter((t.fare for t in trips), dtype=np.float64, count=n),
            "tip": np.fromiter((t.tip for t in trips), dtype=np.float64, count=n),
            "miles": np.fromiter((t.miles for t in trips), dtype=np.float64, count=n),
            "duration_s": np.fromiter((t.duration_s for t in trips), dtype=np.float64, count=n),
            "pickup_idx": pickup_idx,
            "temp_f": np.fromiter((t.temp_f if t.temp_f is not None else nan for t in trips), dtype=np.float64, count=n),
            "precip_in": np.fromiter((t.precip_in if t.precip_in is not None else nan for t in trips), dtype=np.float64, count=n),
        }

    @property
    def arrays(self) -> dict[str, np.ndarray]:
        if self._arrays is None:
            self._build()
        return self._arrays

    @property
    def weather_attached(self) -> bool:
        return bool(np.any(~np.isnan(self.arrays["temp_f"])))

    def area_indices(self, area_ids) -> np.ndarray:
        if self._area_to_idx is None:
            self._build()
        return np.asarray(
            sorted(self._area_to_idx[a] for a in area_ids if a in self._area_to_idx),
            dtype=np.int32,
        )


def _weather_filters_active(inp: PlannerInput) -> bool:
    return inp.temp_range_f is not None or inp.precip != "any"


def _warn_weather_ignored() -> None:
    warnings.warn(
        "weather filters ignored: corpus has no attached weather",
        stacklevel=3,
    )


def filter_mask(corpus: TripCorpus, inp: PlannerInput, day_start_offset: int = 0) -> np.ndarray:
    """Boolean mask of corpus trips matching the schedule filters."""
    cols = corpus.arrays
    start_us = cols["start_us"]
    hour = (start_us % _US_PER_DAY) // _US_PER_HOUR
    weekday = ((start_us - day_start_offset * _US_PER_HOUR) // _US_PER_DAY + 3) % 7

    mask = np.isin(weekday, np.asarray(sorted(inp.days), dtype=np.int64))
    mask &= np.isin(hour, np.asarray(sorted(inp.hours), dtype=np.int64))
    if inp.pickup_neighborhoods:
        mask &= np.isin(cols["pickup_idx"], corpus.area_indices(inp.pickup_neighborhoods))
    if _weather_filters_active(inp):
        if not corpus.weather_attached:
            _warn_weather_ignored()
        else:
            if inp.temp_range_f is not None:
                lo, hi = inp.temp_range_f
                mask &= (cols["temp_f"] >= lo) & (cols["temp_f"] <= hi)
            if inp.precip == "dry":
                mask &= cols["precip_in"] < 0.01
            elif inp.precip == "wet":
                mask &= cols["precip_in"] >= 0.01
    return mask


def filter_trips(trips: Sequence[Trip], inp: PlannerInput, day_start_offset: int = 0) -> list[Trip]:
    """Row-level filter; the corpus fast path must agree with this exactly."""
    corpus_attached = any(t.temp_f is not None for t in trips)
    weather_active = _weather_filters_active(inp)
    if weather_active and not corpus_attached:
        _warn_weather_ignored()
        weather_active = False

    out = []
    for t in trips:
        if shifted_weekday(t.start_ts, day_start_offset) not in inp.days:
            continue
        if t.start_ts.hour not in inp.hours:
            continue
        if inp.pickup_neighborhoods and t.pickup_area not in inp.pickup_neighborhoods:
            continue
        if weather_active:
            if inp.temp_range_f is not None:
                if t.temp_f is None or not (inp.temp_range_f[0] <= t.temp_f <= inp.temp_range_f[1]):
                    continue
            if inp.precip == "dry" and not (t.precip_in is not None and t.precip_in < 0.01):
                continue
            if inp.precip == "wet" and not (t.precip_in is not None and t.precip_in >= 0.01):
                continue
        out.append(t)
    return out


def subset_stats(subset: Sequence[Trip]) -> SubsetStats:
    """Mean fare/duration/tip/miles of a non-empty subset.

    Zero-duration trips count toward n but not toward average duration.
    """
    n = len(subset)
    if n == 0:
        raise NoMatchingTripsError("no trips match this plan")
    durations = [t.duration_s for t in subset if t.duration_s > 0]
    if not durations:
        raise NoMatchingTripsError("no matching trips have a positive duration")
    return SubsetStats(
        n=n,
        af=sum(t.fare for t in subset) / n,
        atd=sum(durations) / len(durations) / 60.0,
        avg_tip=sum(t.tip for t in subset) / n,
        avg_miles=sum(t.miles for t in subset) / n,
    )


def _stats_from_mask(corpus: TripCorpus, mask: np.ndarray) -> SubsetStats:
    cols = corpus.arrays
    n = int(mask.sum())
    if n == 0:
        raise NoMatchingTripsError("no trips match this plan")
    duration = cols["duration_s"][mask]
    positive = duration[duration > 0]
    if positive.size == 0:
        raise NoMatchingTripsError("no matching trips have a positive duration")
    return SubsetStats(
        n=n,
        af=float(cols["fare"][mask].mean()),
        atd=float(positive.mean()) / 60.0,
        avg_tip=float(cols["tip"][mask].mean()),
        avg_miles=float(cols["miles"][mask].mean()),
    )


def project(stats: SubsetStats, inp: PlannerInput, deadhead_from_tpc: bool = True) -> Projection:
    """Scale subset averages to a week of work.

    Total (deadhead-inclusive) miles assume miles scale with time share:
    paid_miles / tpc. Disable to count paid miles only.
    """
    if stats.atd <= 0:
        raise ValueError("average trip duration must be positive")
    pt = (60.0 / stats.atd) * inp.tpc * inp.hpw
    paid_miles = stats.avg_miles * pt
    return Projection(
        pt=pt,
        gross_fares=stats.af * pt,
        tips=stats.avg_tip * pt,
        paid_miles=paid_miles,
        total_miles=paid_miles / inp.tpc if deadhead_from_tpc else paid_miles,
    )


@dataclass(frozen=True, slots=True)
class ExpenseBreakdown:
    gas_cost: float
    fixed_cost: float
    driver_fares: float
    tips_kept: float
    net: float


def expenses(projection: Projection, inp: PlannerInput, tips_subject_to_cut: bool = False) -> ExpenseBreakdown:
    """Apply the expense model; tips pass through the platform cut untouched
    unless the platform-cut-on-tips flag is set."""
    gas_cost = (projection.total_miles / inp.mpg) * inp.gas_price
    fixed_cost = inp.insurance_weekly + inp.misc_weekly
    driver_fares = projection.gross_fares * (1.0 - inp.platform_cut)
    tips_kept = projection.tips * (1.0 - inp.platform_cut) if tips_subject_to_cut else projection.tips
    net = driver_fares + tips_kept - gas_cost - fixed_cost
    return ExpenseBreakdown(
        gas_cost=gas_cost,
        fixed_cost=fixed_cost,
        driver_fares=driver_fares,
        tips_kept=tips_kept,
        net=net,
    )


def simulate(
    corpus: TripCorpus | Sequence[Trip],
    inp: PlannerInput,
    day_start_offset: int = 0,
    tips_subject_to_cut: bool = False,
    deadhead_from_tpc: bool = True,
) -> PlannerOutput:
    """filter -> subset stats -> projection -> expenses -> summary."""
    if isinstance(corpus, TripCorpus):
        try:
            stats = _stats_from_mask(corpus, filter_mask(corpus, inp, day_start_offset))
        except NoMatchingTripsError as exc:
            raise NoMatchingTripsError(str(exc), filters=inp.describe_filters()) from None
    else:
        try:
            stats = subset_stats(filter_trips(corpus, inp, day_start_offset))
        except NoMatchingTripsError as exc:
            raise NoMatchingTripsError(str(exc), filters=inp.describe_filters()) from None

    projection = project(stats, inp, deadhead_from_tpc=deadhead_from_tpc)
    costs = expenses(projection, inp, tips_subject_to_cut=tips_subject_to_cut)
    output = PlannerOutput(
        pt=projection.pt,
        gross_fares=projection.gross_fares,
        driver_fares=costs.driver_fares,
        tips=costs.tips_kept,
        paid_miles=projection.paid_miles,
        total_miles=projection.total_miles,
        gas_cost=costs.gas_cost,
        fixed_cost=costs.fixed_cost,
        net=costs.net,
        subset=stats,
        summary="",
    )
    return replace(output, summary=render_summary(output))


def planner_output_to_dict(output: PlannerOutput) -> dict:
    return {
        "pt": output.pt,
        "gross_fares": output.gross_fares,
        "driver_fares": output.driver_fares,
        "tips": output.tips,
        "paid_miles": output.paid_miles,
        "total_miles": output.total_miles,
        "gas_cost": output.gas_cost,
        "fixed_cost": output.fixed_cost,
        "net": output.net,
        "subset": {
            "n": output.subset.n,
            "af": output.subset.af,
            "atd": output.subset.atd,
            "avg_tip": output.subset.avg_tip,
            "avg_miles": output.subset.avg_miles,
        },
        "summary": output.summary,
    }


def render_summary(output: PlannerOutput) -> str:
    """One deterministic paragraph; currency to cents, trips rounded for
    display only."""
    parts = [
        f"This plan projects {round(output.pt)} trips for the week, "
        f"grossing ${output.gross_fares:,.2f} in fares plus ${output.tips:,.2f} in tips.",
        f"After the platform cut, fares come to ${output.driver_fares:,.2f}; "
        f"gas runs ${output.gas_cost:,.2f} over {output.total_miles:,.1f} miles "
        f"({output.paid_miles:,.1f} with a passenger) and fixed costs add ${output.fixed_cost:,.2f}.",
        f"Estimated net profit: ${output.net:,.2f} for the week.",
        f"The estimate is based on {output.subset.n:,} matching city trips.",
    ]
    if output.subset.n < LOW_CONFIDENCE_N:
        parts.append(
            f"Caution: fewer than {LOW_CONFIDENCE_N} trips match these filters, "
            "so this projection is low-confidence."
        )
    return " ".join(parts)
