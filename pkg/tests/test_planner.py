"""Simulation engine: filters, projection formulas, expenses, summary."""

import random
import warnings
from datetime import datetime, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ridelens.errors import NoMatchingTripsError
from ridelens.planner import (
    PlannerInput,
    PlannerInputError,
    SubsetStats,
    TripCorpus,
    expenses,
    filter_trips,
    planner_input_from_dict,
    planner_output_to_dict,
    project,
    render_summary,
    simulate,
    subset_stats,
)

from oracles import naive_simulate
from synthdata import BASE, make_trip, random_corpus

MONDAY = datetime(2022, 6, 6, 10)

OUTPUT_FIELDS = (
    "pt",
    "gross_fares",
    "driver_fares",
    "tips",
    "paid_miles",
    "total_miles",
    "gas_cost",
    "fixed_cost",
    "net",
)


def uniform_corpus(n=100):
    """Every trip $15 fare, 20 min, $2 tip, 5 miles, spread over hours/days."""
    return [
        make_trip(i=i, start=BASE + timedelta(hours=i % 168), duration_s=1200, fare=15.0, tip=2.0, miles=5.0)
        for i in range(n)
    ]


class TestPlannerInput:
    def test_defaults(self):
        inp = PlannerInput(hpw=40)
        assert inp.platform_cut == 0.25
        assert inp.tpc == 0.55
        assert inp.days == frozenset(range(7))
        assert inp.hours == frozenset(range(24))
        assert inp.precip == "any"

    def test_validation_collects_field_errors(self):
        with pytest.raises(PlannerInputError) as err:
            PlannerInput(hpw=-1, tpc=0.0, platform_cut=1.0, days=frozenset())
        fields = {f for f, _ in err.value.field_errors}
        assert fields == {"hpw", "tpc", "platform_cut", "days"}

    def test_tpc_bounds(self):
        assert PlannerInput(hpw=1, tpc=1.0).tpc == 1.0
        with pytest.raises(PlannerInputError):
            PlannerInput(hpw=1, tpc=0.0)
        with pytest.raises(PlannerInputError):
            PlannerInput(hpw=1, tpc=1.2)

    def test_from_dict_day_labels(self):
        inp = planner_input_from_dict({"hpw": 40, "days": ["Mon", "tuesday", 5]})
        assert inp.days == frozenset({0, 1, 5})

    def test_from_dict_rejects_unknown_fields(self):
        with pytest.raises(PlannerInputError) as err:
            planner_input_from_dict({"hpw": 40, "hours_per_week": 40})
        assert err.value.field_errors[0][0] == "hours_per_week"

    def test_from_dict_requires_hpw(self):
        with pytest.raises(PlannerInputError) as err:
            planner_input_from_dict({})
        assert ("hpw", "required") in err.value.field_errors

    def test_from_dict_temp_range(self):
        inp = planner_input_from_dict({"hpw": 10, "temp_range_f": [50, 80]})
        assert inp.temp_range_f == (50.0, 80.0)


class TestFilterTrips:
    def test_identity_filter(self):
        trips = uniform_corpus(50)
        assert filter_trips(trips, PlannerInput(hpw=40)) == trips

    def test_day_filter(self):
        trips = [make_trip(i=i, start=MONDAY) for i in range(3)] + [
            make_trip(i=10 + i, start=MONDAY + timedelta(days=1)) for i in range(7)
        ]
        out = filter_trips(trips, PlannerInput(hpw=40, days=frozenset({0})))
        assert len(out) == 3

    def test_added_hour_filter_never_grows(self):
        trips = random_corpus(random.Random(0), 400)
        base = PlannerInput(hpw=40, days=frozenset({0}))
        tighter = PlannerInput(hpw=40, days=frozenset({0}), hours=frozenset({8}))
        assert len(filter_trips(trips, tighter)) <= len(filter_trips(trips, base))

    def test_neighborhood_filter(self):
        trips = [make_trip(i=1, pickup_area="loop"), make_trip(i=2, pickup_area="pilsen"), make_trip(i=3)]
        out = filter_trips(trips, PlannerInput(hpw=40, pickup_neighborhoods=frozenset({"loop"})))
        assert [t.trip_id for t in out] == ["t000001"]

    def test_precip_bands(self):
        trips = [
            make_trip(i=1, temp_f=70.0, precip_in=0.0),
            make_trip(i=2, temp_f=70.0, precip_in=0.009),
            make_trip(i=3, temp_f=70.0, precip_in=0.01),
        ]
        dry = filter_trips(trips, PlannerInput(hpw=1, precip="dry"))
        wet = filter_trips(trips, PlannerInput(hpw=1, precip="wet"))
        assert [t.trip_id for t in dry] == ["t000001", "t000002"]
        assert [t.trip_id for t in wet] == ["t000003"]

    def test_weather_filters_ignored_when_unattached(self):
        trips = uniform_corpus(10)  # no weather attached
        with pytest.warns(UserWarning, match="weather filters ignored"):
            out = filter_trips(trips, PlannerInput(hpw=1, precip="dry"))
        assert len(out) == 10

    def test_weekday_offset_shifts_day_membership(self):
        # Saturday 3:30 AM belongs to Friday when the day starts at 4 AM.
        trip = make_trip(start=datetime(2022, 6, 4, 3, 30))
        fri_only = PlannerInput(hpw=1, days=frozenset({4}))
        assert filter_trips([trip], fri_only, day_start_offset=4) == [trip]
        assert filter_trips([trip], fri_only, day_start_offset=0) == []


class TestSubsetStats:
    def test_hand_means(self):
        trips = [
            make_trip(fare=10.0, duration_s=600),
            make_trip(fare=20.0, duration_s=1200),
        ]
        stats = subset_stats(trips)
        assert stats.af == pytest.approx(15.0)
        assert stats.atd == pytest.approx(15.0)

    def test_single_trip(self):
        stats = subset_stats([make_trip(fare=9.5, duration_s=300, tip=1.0, miles=2.0)])
        assert stats == SubsetStats(n=1, af=9.5, atd=5.0, avg_tip=1.0, avg_miles=2.0)

    def test_empty_raises(self):
        with pytest.raises(NoMatchingTripsError):
            subset_stats([])

    def test_zero_duration_excluded_from_atd(self):
        trips = [make_trip(duration_s=0.0, fare=5.0), make_trip(duration_s=600, fare=10.0)]
        stats = subset_stats(trips)
        assert stats.n == 2
        assert stats.atd == pytest.approx(10.0)


class TestProjection:
    def test_projected_trips_formula(self):
        stats = SubsetStats(n=500, af=15.0, atd=20.0, avg_tip=2.0, avg_miles=5.0)
        out = project(stats, PlannerInput(hpw=40))
        assert out.pt == pytest.approx(3 * 0.55 * 40, rel=1e-12)
        assert out.gross_fares == pytest.approx(15.0 * 66.0, rel=1e-12)

    def test_full_utilization_no_deadhead(self):
        stats = SubsetStats(n=10, af=15.0, atd=20.0, avg_tip=0.0, avg_miles=5.0)
        out = project(stats, PlannerInput(hpw=40, tpc=1.0))
        assert out.total_miles == pytest.approx(out.paid_miles)

    def test_deadhead_flag_off(self):
        stats = SubsetStats(n=10, af=15.0, atd=20.0, avg_tip=0.0, avg_miles=5.0)
        out = project(stats, PlannerInput(hpw=40), deadhead_from_tpc=False)
        assert out.total_miles == out.paid_miles


class TestExpenses:
    def _projection(self, gross=990.0, tips=132.0, total_miles=400.0):
        from ridelens.planner import Projection

        return Projection(pt=66.0, gross_fares=gross, tips=tips, paid_miles=total_miles * 0.55, total_miles=total_miles)

    def test_gas_cost(self):
        out = expenses(self._projection(), PlannerInput(hpw=40, gas_price=4.0, mpg=25.0))
        assert out.gas_cost == pytest.approx(64.0)

    def test_platform_cut(self):
        out = expenses(self._projection(gross=990.0), PlannerInput(hpw=40))
        assert out.driver_fares == pytest.approx(742.50)

    def test_zero_expense_identity(self):
        out = expenses(self._projection(), PlannerInput(hpw=40, platform_cut=0.0))
        assert out.net == pytest.approx(990.0 + 132.0)

    def test_tips_cut_flag(self):
        out = expenses(self._projection(tips=100.0), PlannerInput(hpw=40), tips_subject_to_cut=True)
        assert out.tips_kept == pytest.approx(75.0)


class TestSimulate:
    def test_uniform_corpus_anchor(self):
        output = simulate(uniform_corpus(), PlannerInput(hpw=40))
        assert output.pt == pytest.approx(66.0, rel=1e-12)
        assert output.gross_fares == pytest.approx(990.0, rel=1e-12)
        assert output.tips == pytest.approx(132.0, rel=1e-12)
        assert output.paid_miles == pytest.approx(330.0, rel=1e-12)
        assert output.total_miles == pytest.approx(600.0, rel=1e-12)

    def test_determinism(self):
        trips = random_corpus(random.Random(4), 500)
        inp = PlannerInput(hpw=35, days=frozenset({0, 4, 5}), gas_price=4.2)
        assert simulate(trips, inp) == simulate(trips, inp)

    def test_corpus_and_list_paths_agree(self):
        trips = random_corpus(random.Random(6), 800)
        corpus = TripCorpus(trips)
        inp = PlannerInput(
            hpw=25,
            days=frozenset({1, 2, 5}),
            hours=frozenset(range(7, 20)),
            pickup_neighborhoods=frozenset({"loop", "pilsen"}),
            temp_range_f=(50.0, 85.0),
            precip="dry",
            gas_price=4.5,
            mpg=28.0,
            insurance_weekly=30.0,
            misc_weekly=12.0,
        )
        fast = simulate(corpus, inp)
        slow = simulate(trips, inp)
        for field_name in OUTPUT_FIELDS:
            assert getattr(fast, field_name) == pytest.approx(getattr(slow, field_name), rel=1e-9)
        assert fast.subset.n == slow.subset.n

    def test_no_match_carries_filter_echo(self):
        trips = uniform_corpus(10)
        inp = PlannerInput(hpw=40, pickup_neighborhoods=frozenset({"nowhere"}))
        with pytest.raises(NoMatchingTripsError) as err:
            simulate(trips, inp)
        assert err.value.filters["pickup_neighborhoods"] == ["nowhere"]

    def test_oracle_equivalence_sample(self):
        rng = random.Random(99)
        for _ in range(40):
            trips = random_corpus(rng, rng.randrange(20, 300))
            inp = _random_input(rng)
            expected = naive_simulate(trips, inp)
            corpus = TripCorpus(trips)
            if expected is None:
                with pytest.raises(NoMatchingTripsError):
                    simulate(corpus, inp)
                continue
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                output = simulate(corpus, inp)
            for field_name in OUTPUT_FIELDS:
                assert getattr(output, field_name) == pytest.approx(
                    expected[field_name], rel=1e-9
                ), field_name

    def test_output_invariants(self):
        output = simulate(
            uniform_corpus(),
            PlannerInput(hpw=40, gas_price=4.0, mpg=30.0, insurance_weekly=25.0, misc_weekly=10.0),
        )
        assert output.net == pytest.approx(
            output.driver_fares + output.tips - output.gas_cost - output.fixed_cost, rel=1e-12
        )
        assert output.total_miles >= output.paid_miles
        doc = planner_output_to_dict(output)
        assert doc["subset"]["n"] == 100


def _random_input(rng: random.Random) -> PlannerInput:
    maybe_temp = rng.random() < 0.4
    return PlannerInput(
        hpw=rng.uniform(1, 80),
        days=frozenset(rng.sample(range(7), rng.randrange(1, 8))),
        hours=frozenset(rng.sample(range(24), rng.randrange(1, 25))),
        pickup_neighborhoods=frozenset(
            rng.sample(["loop", "hyde_park", "pilsen", "uptown", "ghost"], rng.randrange(0, 3))
        ),
        temp_range_f=(lambda lo: (lo, lo + rng.uniform(0, 40)))(rng.uniform(30, 80)) if maybe_temp else None,
        precip=rng.choice(["any", "dry", "wet"]),
        gas_price=rng.uniform(0, 6),
        mpg=rng.uniform(15, 50),
        insurance_weekly=rng.uniform(0, 80),
        misc_weekly=rng.uniform(0, 60),
        platform_cut=rng.uniform(0, 0.6),
        tpc=rng.uniform(0.2, 1.0),
    )


@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 10**9), factor=st.integers(2, 5))
def test_linearity_in_hpw(seed, factor):
    """Scaling hours scales trips, fares, tips, and paid miles together."""
    rng = random.Random(seed)
    stats = SubsetStats(
        n=100,
        af=rng.uniform(3, 60),
        atd=rng.uniform(2, 90),
        avg_tip=rng.uniform(0, 12),
        avg_miles=rng.uniform(0.5, 25),
    )
    base = project(stats, PlannerInput(hpw=10))
    scaled = project(stats, PlannerInput(hpw=10 * factor))
    assert scaled.pt == pytest.approx(base.pt * factor, rel=1e-9)
    assert scaled.gross_fares == pytest.approx(base.gross_fares * factor, rel=1e-9)
    assert scaled.tips == pytest.approx(base.tips * factor, rel=1e-9)
    assert scaled.paid_miles == pytest.approx(base.paid_miles * factor, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10**9))
def test_net_non_increasing_in_costs(seed):
    rng = random.Random(seed)
    trips = uniform_corpus(40)
    base_kwargs = dict(hpw=30.0, gas_price=2.0, mpg=25.0, insurance_weekly=20.0, misc_weekly=5.0, platform_cut=0.2)
    base = simulate(trips, PlannerInput(**base_kwargs)).net
    bumped_field = rng.choice(["gas_price", "insurance_weekly", "misc_weekly", "platform_cut"])
    bump = rng.uniform(0.01, 0.5) if bumped_field == "platform_cut" else rng.uniform(0.1, 30)
    kwargs = dict(base_kwargs)
    kwargs[bumped_field] = min(kwargs[bumped_field] + bump, 0.99) if bumped_field == "platform_cut" else kwargs[bumped_field] + bump
    assert simulate(trips, PlannerInput(**kwargs)).net <= base + 1e-9


class TestRenderSummary:
    def test_rounded_trips_in_text(self):
        output = simulate(uniform_corpus(), PlannerInput(hpw=40))
        assert "66 trips" in output.summary

    def test_low_confidence_note(self):
        output = simulate(uniform_corpus(12), PlannerInput(hpw=40))
        assert output.subset.n == 12
        assert "low-confidence" in output.summary

    def test_no_note_at_threshold(self):
        output = simulate(uniform_corpus(30), PlannerInput(hpw=40))
        assert "low-confidence" not in output.summary

    def test_byte_identical(self):
        output = simulate(uniform_corpus(), PlannerInput(hpw=40))
        assert render_summary(output) == render_summary(output)
        assert render_summary(output) == output.summary
