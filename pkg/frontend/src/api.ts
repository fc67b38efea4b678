/** Typed client for the engine's read-only API. The UI never aggregates:
 * every number rendered comes from these documents verbatim. */

import type {
  AnimationPayload,
  CalendarPayload,
  FieldError,
  HourlyPayload,
  MapPayload,
  PlannerDefaultsPayload,
  PlannerInputDoc,
  PlannerOutputDoc,
  ProbeDoc,
} from "./types";
import { PROBE_VERSION } from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
  ) {
    super(message);
  }
}

/** 400: the engine rejected the request body, field by field. */
export class ValidationError extends ApiError {
  constructor(public errors: FieldError[]) {
    super("invalid input", 400);
  }
}

/** 422: the plan matched zero trips; filters echo what was applied. */
export class NoMatchError extends ApiError {
  constructor(
    message: string,
    public filters: Record<string, unknown>,
  ) {
    super(message, 422);
  }
}

export class VersionError extends ApiError {
  constructor(got: string) {
    super(`probe schema ${got} (this UI speaks ${PROBE_VERSION})`, 200);
  }
}

async function getProbe<P>(kind: string, query = ""): Promise<ProbeDoc<P>> {
  const response = await fetch(`/api/probes/${kind}${query}`);
  if (!response.ok) {
    const body = await response.json().catch(() => ({}));
    throw new ApiError(String(body.error ?? response.statusText), response.status);
  }
  const doc = (await response.json()) as ProbeDoc<P>;
  if (doc.version !== PROBE_VERSION) {
    throw new VersionError(doc.version);
  }
  return doc;
}

export const fetchHourly = () => getProbe<HourlyPayload>("hourly");
export const fetchCalendar = () => getProbe<CalendarPayload>("calendar");
export const fetchMap = () => getProbe<MapPayload>("map");
export const fetchPlannerDefaults = () => getProbe<PlannerDefaultsPayload>("planner_defaults");
export const fetchAnimation = (date?: string) =>
  getProbe<AnimationPayload>("animation", date ? `?date=${date}` : "");

export async function simulate(input: PlannerInputDoc): Promise<PlannerOutputDoc> {
  const response = await fetch("/api/planner/simulate", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(input),
  });
  if (response.status === 400) {
    const body = await response.json();
    throw new ValidationError(body.errors as FieldError[]);
  }
  if (response.status === 422) {
    const body = await response.json();
    throw new NoMatchError(String(body.error), body.filters ?? {});
  }
  if (!response.ok) {
    throw new ApiError(response.statusText, response.status);
  }
  return (await response.json()) as PlannerOutputDoc;
}
