/** Shared payload fixtures shaped exactly like the engine's documents. */

import type {
  AnimationPayload,
  CalendarPayload,
  HourlyPayload,
  HourlyRow,
  MapPayload,
  PlannerDefaultsPayload,
  PlannerOutputDoc,
} from "../src/types";

export const defaultsPayload: PlannerDefaultsPayload = {
  platform_cut: 0.25,
  tpc: 0.55,
  day_start_offset: 0,
  days: ["mon", "tue", "wed", "thu", "fri", "sat", "sun"],
  hours: Array.from({ length: 24 }, (_, h) => h),
  precip_options: ["any", "dry", "wet"],
  neighborhoods: [
    { id: "hyde_park", name: "Hyde Park" },
    { id: "loop", name: "Loop" },
    { id: "pilsen", name: "Pilsen" },
  ],
  temp_range_seen_f: [38.2, 95.1],
};

export function plannerOutput(overrides: Partial<PlannerOutputDoc> = {}): PlannerOutputDoc {
  return {
    pt: 66.0,
    gross_fares: 990.0,
    driver_fares: 742.5,
    tips: 132.0,
    paid_miles: 330.0,
    total_miles: 600.0,
    gas_cost: 96.0,
    fixed_cost: 45.0,
    net: 733.5,
    subset: { n: 246, af: 15.0, atd: 20.0, avg_tip: 2.0, avg_miles: 5.0 },
    summary: "This plan projects 66 trips for the week.",
    version: "probe/1",
    ...overrides,
  };
}

function hourlyRow(hour: number, fpm: number | null, n: number): HourlyRow {
  return {
    hour,
    trip_count: n,
    fare_per_minute: fpm,
    avg_fare: fpm === null ? null : fpm * 18,
    avg_duration_min: fpm === null ? null : 18,
  };
}

export const hourlyPayload: HourlyPayload = {
  day_start_offset: 0,
  personal: Array.from({ length: 24 }, (_, h) =>
    h >= 8 && h <= 10 ? hourlyRow(h, 1.0, 5) : hourlyRow(h, null, 0),
  ),
  city: Array.from({ length: 24 }, (_, h) => hourlyRow(h, h === 9 ? 1.0 : 0.5, 100)),
  personal_gap_hours: Array.from({ length: 24 }, (_, h) => h).filter((h) => h < 8 || h > 10),
  city_gap_hours: [],
};

export const calendarPayload: CalendarPayload = {
  day_start_offset: 0,
  month: {
    start: "2022-06-01",
    end: "2022-06-30",
    n_days: 30,
    n_shades: 5,
    days: {
      "2022-06-03": { trip_count: 9, total_earnings: 187.4, fare_per_minute: 0.9, avg_fare: 17.2, shade: 2 },
      "2022-06-10": { trip_count: 14, total_earnings: 301.25, fare_per_minute: 1.1, avg_fare: 19.0, shade: 4 },
    },
  },
  week: {
    personal: Array.from({ length: 7 }, (_, wd) => ({
      weekday: wd,
      label: ["mon", "tue", "wed", "thu", "fri", "sat", "sun"][wd]!,
      total_trips: wd === 4 ? 12 : 0,
      avg_fare: wd === 4 ? 16.5 : null,
      avg_duration_min: wd === 4 ? 19.2 : null,
      fare_per_minute: wd === 4 ? 0.86 : null,
    })),
    city: Array.from({ length: 7 }, (_, wd) => ({
      weekday: wd,
      label: ["mon", "tue", "wed", "thu", "fri", "sat", "sun"][wd]!,
      total_trips: 1000 + wd,
      avg_fare: 18.0,
      avg_duration_min: 17.0,
      fare_per_minute: 1.06,
    })),
  },
};

const square = (x0: number, y0: number): [number, number][] => [
  [x0, y0],
  [x0 + 0.02, y0],
  [x0 + 0.02, y0 + 0.02],
  [x0, y0 + 0.02],
  [x0, y0],
];

export const mapPayload: MapPayload = {
  n_shades: 5,
  geometry: {
    loop: { name: "Loop", rings: [square(-87.64, 41.87)] },
    hyde_park: { name: "Hyde Park", rings: [square(-87.61, 41.79)] },
    uptown: { name: "Uptown", rings: [square(-87.67, 41.96)] },
  },
  scopes: {
    personal: {
      pickups: {
        loop: { trip_count: 30, fare_per_minute: 1.2, avg_fare: 16, avg_miles_per_trip: 4.2, shade: 4 },
        hyde_park: { trip_count: 10, fare_per_minute: 0.8, avg_fare: 13, avg_miles_per_trip: 6.1, shade: 0 },
      },
      dropoffs: {
        loop: { trip_count: 22, fare_per_minute: 1.0, avg_fare: 15, avg_miles_per_trip: 4.0, shade: 3 },
        hyde_park: { trip_count: 18, fare_per_minute: 0.9, avg_fare: 14, avg_miles_per_trip: 5.0, shade: 1 },
      },
      linked_dropoffs: {
        loop: {
          hyde_park: { trip_count: 21, fare_per_minute: 1.4, avg_fare: 21, avg_miles_per_trip: 7.7, shade: 4 },
          loop: { trip_count: 9, fare_per_minute: 0.7, avg_fare: 9, avg_miles_per_trip: 1.8, shade: 0 },
        },
        hyde_park: {
          loop: { trip_count: 10, fare_per_minute: 1.05, avg_fare: 17, avg_miles_per_trip: 6.3, shade: 4 },
        },
      },
      unclassified_pickups: 2,
      unclassified_dropoffs: 1,
    },
    city: {
      pickups: {
        loop: { trip_count: 5000, fare_per_minute: 1.1, avg_fare: 17, avg_miles_per_trip: 4.4, shade: 4 },
        uptown: { trip_count: 900, fare_per_minute: 0.95, avg_fare: 15, avg_miles_per_trip: 5.2, shade: 1 },
      },
      dropoffs: {
        loop: { trip_count: 4100, fare_per_minute: 1.0, avg_fare: 16, avg_miles_per_trip: 4.1, shade: 4 },
      },
      linked_dropoffs: {
        loop: {
          uptown: { trip_count: 800, fare_per_minute: 1.3, avg_fare: 19, avg_miles_per_trip: 8.0, shade: 4 },
        },
        uptown: {
          loop: { trip_count: 640, fare_per_minute: 1.2, avg_fare: 18, avg_miles_per_trip: 7.5, shade: 4 },
        },
      },
      unclassified_pickups: 40,
      unclassified_dropoffs: 31,
    },
  },
};

export const animationPayload: AnimationPayload = {
  date: "2022-06-07",
  frame_step_s: 30,
  day_start_offset: 0,
  frames: Array.from({ length: 11 }, (_, i) => ({
    t: `2022-06-07T09:${String(i).padStart(2, "0")}:00`,
    lat: 41.87 + i * 0.001,
    lon: -87.64 + i * 0.001,
    trip_active: i >= 4 && i <= 7,
    interpolated: i !== 5,
  })),
};
