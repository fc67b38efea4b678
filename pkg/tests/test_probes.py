"""Probe artifact assembly, serialization, and the payload verifier."""

import random
from datetime import date, datetime, timedelta

import pytest

from ridelens.errors import EmptyDayError, ProbeFormatError
from ridelens.model import Ping, PingSeries
from ridelens.probes import (
    build_animation_probe,
    build_calendar_probe,
    build_hourly_probe,
    build_map_probe,
    build_planner_defaults_probe,
    export_probe,
    import_probe,
    verify_artifact,
)

from synthdata import BASE, make_trip, random_corpus, small_neighborhood_set


class TestHourlyProbe:
    def test_gap_hours_flagged(self):
        personal = [
            make_trip(i=i, start=BASE.replace(hour=h)) for i, h in enumerate((8, 9, 10))
        ]
        city = random_corpus(random.Random(0), 200, zero_duration_rate=0)
        artifact = build_hourly_probe(personal, city)
        assert artifact.kind == "hourly"
        assert artifact.scope == "both"
        assert len(artifact.payload["personal_gap_hours"]) == 21
        assert set(artifact.payload["personal_gap_hours"]) == set(range(24)) - {8, 9, 10}
        assert len(artifact.payload["personal"]) == 24

    def test_identical_corpora_identical_series(self):
        trips = random_corpus(random.Random(1), 100)
        artifact = build_hourly_probe(trips, trips)
        assert artifact.payload["personal"] == artifact.payload["city"]

    def test_empty_personal_side_all_gaps(self):
        city = random_corpus(random.Random(2), 50)
        artifact = build_hourly_probe([], city)
        assert artifact.payload["personal_gap_hours"] == list(range(24))
        assert artifact.meta["rows"]["personal"] == 0

    def test_gaps_are_not_zero_stats(self):
        artifact = build_hourly_probe([], random_corpus(random.Random(3), 50))
        gap_row = artifact.payload["personal"][0]
        assert gap_row["trip_count"] == 0
        assert gap_row["fare_per_minute"] is None


class TestCalendarProbe:
    def test_june_grid_span(self):
        personal = [make_trip(start=BASE + timedelta(days=3))]
        artifact = build_calendar_probe(personal, [], (date(2022, 6, 1), date(2022, 6, 30)))
        assert artifact.kind == "calendar"
        assert artifact.payload["month"]["n_days"] == 30
        assert artifact.payload["month"]["start"] == "2022-06-01"

    def test_no_data_days_blank(self):
        personal = [make_trip(start=BASE)]
        artifact = build_calendar_probe(personal, [], (date(2022, 6, 1), date(2022, 6, 30)))
        days = artifact.payload["month"]["days"]
        assert "2022-06-01" in days
        assert "2022-06-02" not in days

    def test_weekly_matrix_is_7_by_4_per_scope(self):
        trips = random_corpus(random.Random(4), 80)
        artifact = build_calendar_probe(trips, trips, (date(2022, 6, 1), date(2022, 6, 30)))
        for scope in ("personal", "city"):
            rows = artifact.payload["week"][scope]
            assert len(rows) == 7
            for row in rows:
                for metric in ("total_trips", "avg_fare", "avg_duration_min", "fare_per_minute"):
                    assert metric in row


class TestMapProbe:
    def test_two_pickups_two_linked_maps(self):
        trips = [
            make_trip(i=1, pickup_area="loop", dropoff_area="hyde_park"),
            make_trip(i=2, pickup_area="loop", dropoff_area="loop"),
            make_trip(i=3, pickup_area="hyde_park", dropoff_area="loop"),
        ]
        artifact = build_map_probe(trips, [], small_neighborhood_set())
        scope = artifact.payload["scopes"]["personal"]
        assert set(scope["pickups"]) == {"loop", "hyde_park"}
        assert set(scope["linked_dropoffs"]) == {"loop", "hyde_park"}

    def test_linked_map_matches_filtered_stats(self):
        from ridelens.metrics import neighborhood_stats

        trips = random_corpus(random.Random(5), 150)
        artifact = build_map_probe(trips, [], small_neighborhood_set())
        linked = artifact.payload["scopes"]["personal"]["linked_dropoffs"]
        for pickup_id, rendered in linked.items():
            manual = neighborhood_stats(
                [t for t in trips if t.pickup_area == pickup_id], end="dropoff"
            )
            assert set(rendered) == set(manual.stats)
            for area_id, row in rendered.items():
                assert row["trip_count"] == manual.stats[area_id].trip_count
                assert row["fare_per_minute"] == manual.stats[area_id].fare_per_minute

    def test_zero_pickup_polygon_still_in_geometry(self):
        trips = [make_trip(pickup_area="loop", dropoff_area="loop")]
        artifact = build_map_probe(trips, [], small_neighborhood_set())
        assert "uptown" not in artifact.payload["scopes"]["personal"]["pickups"]
        assert "uptown" in artifact.payload["geometry"]
        assert artifact.payload["geometry"]["uptown"]["name"] == "Uptown"

    def test_unclassified_counted(self):
        trips = [make_trip(pickup_area=None, dropoff_area="loop")]
        artifact = build_map_probe(trips, [], small_neighborhood_set())
        assert artifact.payload["scopes"]["personal"]["unclassified_pickups"] == 1


def _pings(day: datetime, *offsets_s: int) -> PingSeries:
    return PingSeries(
        pings=tuple(
            Ping(day + timedelta(seconds=s), (41.88 + s * 1e-5, -87.63 - s * 1e-5))
            for s in offsets_s
        )
    )


class TestAnimationProbe:
    def test_three_frames_with_midpoint(self):
        start = BASE + timedelta(hours=9)
        pings = _pings(start, 0, 60)
        artifact = build_animation_probe(pings, [], date(2022, 6, 1), frame_step_s=30)
        frames = artifact.payload["frames"]
        assert len(frames) == 3
        assert frames[1]["lat"] == pytest.approx((pings.pings[0].point[0] + pings.pings[1].point[0]) / 2)
        assert frames[1]["interpolated"] is True

    def test_frame_count_invariant(self):
        rng = random.Random(6)
        start = BASE + timedelta(hours=7)
        offsets = sorted(rng.sample(range(0, 7200), 50))
        pings = _pings(start, *offsets)
        artifact = build_animation_probe(pings, [], date(2022, 6, 1), frame_step_s=30)
        span = offsets[-1] - offsets[0]
        assert len(artifact.payload["frames"]) == span // 30 + 1

    def test_long_gap_holds_position_flagged(self):
        start = BASE + timedelta(hours=9)
        pings = _pings(start, 0, 1200)  # 20 min gap
        artifact = build_animation_probe(pings, [], date(2022, 6, 1), frame_step_s=30)
        frames = artifact.payload["frames"]
        middle = frames[1:-1]
        assert all(f["interpolated"] is False for f in middle)
        assert all(f["lat"] == pings.pings[0].point[0] for f in middle)
        assert frames[-1]["interpolated"] is True

    def test_trip_active_flag(self):
        start = BASE + timedelta(hours=9)
        pings = _pings(start, 0, 60, 120, 180)
        trips = [make_trip(start=start + timedelta(seconds=50), duration_s=60)]
        artifact = build_animation_probe(pings, trips, date(2022, 6, 1), frame_step_s=30)
        active = [f["trip_active"] for f in artifact.payload["frames"]]
        assert active == [False, False, True, True, False, False, False]

    def test_empty_day_lists_available_dates(self):
        pings = _pings(BASE + timedelta(hours=9), 0, 60)
        with pytest.raises(EmptyDayError) as err:
            build_animation_probe(pings, [], date(2022, 6, 25))
        assert err.value.available == ["2022-06-01"]

    def test_day_start_offset_bounds_the_day(self):
        # Pings at 2 AM belong to the previous (offset) day when offset=4.
        pings = _pings(BASE + timedelta(days=1, hours=2), 0, 60)
        artifact = build_animation_probe(pings, [], date(2022, 6, 1), day_start_offset=4)
        assert len(artifact.payload["frames"]) == 3
        with pytest.raises(EmptyDayError):
            build_animation_probe(pings, [], date(2022, 6, 2), day_start_offset=4)


class TestPlannerDefaultsProbe:
    def test_paper_default_fractions(self):
        artifact = build_planner_defaults_probe(small_neighborhood_set(), [])
        assert artifact.payload["platform_cut"] == 0.25
        assert artifact.payload["tpc"] == 0.55
        assert {n["id"] for n in artifact.payload["neighborhoods"]} == {
            "loop",
            "hyde_park",
            "pilsen",
            "uptown",
        }


class TestExportImport:
    def _artifact(self):
        trips = random_corpus(random.Random(7), 60)
        return build_hourly_probe(trips, trips)

    def test_round_trip(self, tmp_path):
        artifact = self._artifact()
        path = export_probe(artifact, tmp_path / "hourly.json")
        loaded = import_probe(path)
        assert loaded == artifact

    def test_byte_identical_exports(self, tmp_path):
        artifact = self._artifact()
        a = export_probe(artifact, tmp_path / "a.json").read_bytes()
        b = export_probe(artifact, tmp_path / "b.json").read_bytes()
        assert a == b

    def test_rebuilt_artifact_exports_identically(self, tmp_path):
        trips = random_corpus(random.Random(8), 60)
        a = export_probe(build_hourly_probe(trips, trips), tmp_path / "a.json").read_bytes()
        b = export_probe(build_hourly_probe(trips, trips), tmp_path / "b.json").read_bytes()
        assert a == b

    def test_unknown_version_rejected(self, tmp_path):
        artifact = self._artifact()
        path = export_probe(artifact, tmp_path / "h.json")
        doc = path.read_text().replace('"probe/1"', '"probe/9"')
        path.write_text(doc)
        with pytest.raises(ProbeFormatError, match="probe/9"):
            import_probe(path)

    def test_not_json_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json at all")
        with pytest.raises(ProbeFormatError):
            import_probe(path)


class TestVerifier:
    def test_clean_artifacts_verify(self):
        rng = random.Random(9)
        personal = random_corpus(rng, 80)
        city = random_corpus(rng, 200)
        checks = random.Random(10)
        for artifact in (
            build_hourly_probe(personal, city),
            build_calendar_probe(personal, city, (date(2022, 6, 1), date(2022, 6, 30))),
            build_map_probe(personal, city, small_neighborhood_set()),
        ):
            assert verify_artifact(artifact, personal, city, checks, n_cells=100) == []

    def test_tampered_payload_detected(self):
        rng = random.Random(11)
        personal = random_corpus(rng, 80)
        city = random_corpus(rng, 200)
        artifact = build_hourly_probe(personal, city)
        artifact.payload["city"][12]["trip_count"] += 1
        problems = verify_artifact(artifact, personal, city, random.Random(12), n_cells=200)
        assert problems
