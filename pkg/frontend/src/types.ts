/** Wire types mirroring the engine's probe and planner documents. */

export const PROBE_VERSION = "probe/1";

export interface ProbeDoc<P> {
  version: string;
  kind: string;
  scope: string;
  meta: Record<string, unknown>;
  payload: P;
}

// ─── Planner ────────────────────────────────────────────────

export type Precip = "any" | "dry" | "wet";

/** Request document; field names are 1:1 with the engine's planner input. */
export interface PlannerInputDoc {
  hpw: number;
  days: number[];
  hours: number[];
  pickup_neighborhoods: string[];
  temp_range_f: [number, number] | null;
  precip: Precip;
  gas_price: number;
  mpg: number;
  insurance_weekly: number;
  misc_weekly: number;
  platform_cut: number;
  tpc: number;
}

export interface SubsetStatsDoc {
  n: number;
  af: number;
  atd: number;
  avg_tip: number;
  avg_miles: number;
}

export interface PlannerOutputDoc {
  pt: number;
  gross_fares: number;
  driver_fares: number;
  tips: number;
  paid_miles: number;
  total_miles: number;
  gas_cost: number;
  fixed_cost: number;
  net: number;
  subset: SubsetStatsDoc;
  summary: string;
  version?: string;
}

export interface FieldError {
  field: string;
  message: string;
}

export interface PlannerDefaultsPayload {
  platform_cut: number;
  tpc: number;
  day_start_offset: number;
  days: string[];
  hours: number[];
  precip_options: Precip[];
  neighborhoods: { id: string; name: string }[];
  temp_range_seen_f: [number, number] | null;
}

// ─── Probes ─────────────────────────────────────────────────

export interface HourlyRow {
  hour: number;
  trip_count: number;
  fare_per_minute: number | null;
  avg_fare: number | null;
  avg_duration_min: number | null;
}

export interface HourlyPayload {
  day_start_offset: number;
  personal: HourlyRow[];
  city: HourlyRow[];
  personal_gap_hours: number[];
  city_gap_hours: number[];
}

export interface DayCell {
  trip_count: number;
  total_earnings: number;
  fare_per_minute: number | null;
  avg_fare: number;
  shade: number;
}

export interface WeekdayRow {
  weekday: number;
  label: string;
  total_trips: number;
  avg_fare: number | null;
  avg_duration_min: number | null;
  fare_per_minute: number | null;
}

export interface CalendarPayload {
  day_start_offset: number;
  month: {
    start: string;
    end: string;
    n_days: number;
    n_shades: number;
    days: Record<string, DayCell>;
  };
  week: {
    personal: WeekdayRow[];
    city: WeekdayRow[];
  };
}

export interface AreaRow {
  trip_count: number;
  fare_per_minute: number | null;
  avg_fare: number;
  avg_miles_per_trip: number;
  shade: number;
}

export type AreaMap = Record<string, AreaRow>;

export interface ScopeMaps {
  pickups: AreaMap;
  dropoffs: AreaMap;
  linked_dropoffs: Record<string, AreaMap>;
  unclassified_pickups: number;
  unclassified_dropoffs: number;
}

export type Ring = [number, number][]; // closed (lon, lat) loop

export interface MapPayload {
  scopes: { personal: ScopeMaps; city: ScopeMaps };
  geometry: Record<string, { name: string; rings: Ring[] }>;
  n_shades: number;
}

export interface AnimationFrame {
  t: string;
  lat: number;
  lon: number;
  trip_active: boolean;
  interpolated: boolean;
}

export interface AnimationPayload {
  date: string;
  frame_step_s: number;
  day_start_offset: number;
  frames: AnimationFrame[];
}

export type Scope = "personal" | "city";
