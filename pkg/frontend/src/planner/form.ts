/** Planner form state: mirrors the engine's planner input field-for-field,
 * plus dirty/submitting flags and exactly two result slots so a driver can
 * compare an original schedule against a revised one. */

import type { FieldError, PlannerInputDoc, PlannerOutputDoc, Precip } from "../types";

export const DAY_LABELS = ["mon", "tue", "wed", "thu", "fri", "sat", "sun"] as const;

export interface PlannerFormState {
  hpw: number;
  days: Set<number>;
  hours: Set<number>;
  pickup_neighborhoods: Set<string>;
  temp_enabled: boolean;
  temp_min: number;
  temp_max: number;
  precip: Precip;
  gas_price: number;
  mpg: number;
  insurance_weekly: number;
  misc_weekly: number;
  platform_cut: number;
  tpc: number;
  dirty: boolean;
  submitting: boolean;
  /** [original, revised] — the co-design loop compares exactly two. */
  results: [PlannerOutputDoc | null, PlannerOutputDoc | null];
}

export function initialFormState(platformCut = 0.25, tpc = 0.55): PlannerFormState {
  return {
    hpw: 40,
    days: new Set([0, 1, 2, 3, 4, 5, 6]),
    hours: new Set(Array.from({ length: 24 }, (_, h) => h)),
    pickup_neighborhoods: new Set(),
    temp_enabled: false,
    temp_min: 40,
    temp_max: 90,
    precip: "any",
    gas_price: 0,
    mpg: 25,
    insurance_weekly: 0,
    misc_weekly: 0,
    platform_cut: platformCut,
    tpc,
    dirty: false,
    submitting: false,
    results: [null, null],
  };
}

/** Client-side mirror of the engine's input invariants; the request is not
 * sent unless this returns no errors. */
export function validateForm(state: PlannerFormState): FieldError[] {
  const errors: FieldError[] = [];
  if (!Number.isFinite(state.hpw) || state.hpw <= 0) {
    errors.push({ field: "hpw", message: "hours per week must be positive" });
  }
  if (state.days.size === 0) {
    errors.push({ field: "days", message: "pick at least one day" });
  }
  if (state.hours.size === 0) {
    errors.push({ field: "hours", message: "pick at least one hour" });
  }
  if (state.temp_enabled && !(state.temp_min <= state.temp_max)) {
    errors.push({ field: "temp_range_f", message: "min must not exceed max" });
  }
  if (!Number.isFinite(state.gas_price) || state.gas_price < 0) {
    errors.push({ field: "gas_price", message: "must be zero or more" });
  }
  if (!Number.isFinite(state.mpg) || state.mpg <= 0) {
    errors.push({ field: "mpg", message: "must be positive" });
  }
  if (!Number.isFinite(state.insurance_weekly) || state.insurance_weekly < 0) {
    errors.push({ field: "insurance_weekly", message: "must be zero or more" });
  }
  if (!Number.isFinite(state.misc_weekly) || state.misc_weekly < 0) {
    errors.push({ field: "misc_weekly", message: "must be zero or more" });
  }
  if (!(state.platform_cut >= 0 && state.platform_cut < 1)) {
    errors.push({ field: "platform_cut", message: "must be at least 0 and below 1" });
  }
  if (!(state.tpc > 0 && state.tpc <= 1)) {
    errors.push({ field: "tpc", message: "must be above 0 and at most 1" });
  }
  return errors;
}

/** Serialize to the wire document (canonical: sorted lists). */
export function toDoc(state: PlannerFormState): PlannerInputDoc {
  return {
    hpw: state.hpw,
    days: [...state.days].sort((a, b) => a - b),
    hours: [...state.hours].sort((a, b) => a - b),
    pickup_neighborhoods: [...state.pickup_neighborhoods].sort(),
    temp_range_f: state.temp_enabled ? [state.temp_min, state.temp_max] : null,
    precip: state.precip,
    gas_price: state.gas_price,
    mpg: state.mpg,
    insurance_weekly: state.insurance_weekly,
    misc_weekly: state.misc_weekly,
    platform_cut: state.platform_cut,
    tpc: state.tpc,
  };
}

/** Restore form fields from a wire document (round-trips with toDoc). */
export function fromDoc(doc: PlannerInputDoc, base?: PlannerFormState): PlannerFormState {
  const state = base ?? initialFormState();
  return {
    ...state,
    hpw: doc.hpw,
    days: new Set(doc.days),
    hours: new Set(doc.hours),
    pickup_neighborhoods: new Set(doc.pickup_neighborhoods),
    temp_enabled: doc.temp_range_f !== null,
    temp_min: doc.temp_range_f ? doc.temp_range_f[0] : state.temp_min,
    temp_max: doc.temp_range_f ? doc.temp_range_f[1] : state.temp_max,
    precip: doc.precip,
    gas_price: doc.gas_price,
    mpg: doc.mpg,
    insurance_weekly: doc.insurance_weekly,
    misc_weekly: doc.misc_weekly,
    platform_cut: doc.platform_cut,
    tpc: doc.tpc,
  };
}

/** First result becomes the original; later ones fill (and replace) the
 * revised slot, so the original stays pinned for comparison. */
export function recordResult(
  state: PlannerFormState,
  output: PlannerOutputDoc,
): PlannerFormState {
  const results: PlannerFormState["results"] =
    state.results[0] === null ? [output, null] : [state.results[0], output];
  return { ...state, results, dirty: false };
}

export function clearResults(state: PlannerFormState): PlannerFormState {
  return { ...state, results: [null, null] };
}
