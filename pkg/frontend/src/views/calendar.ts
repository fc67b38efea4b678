/** Calendar screen: monthly earnings heat map (personal) plus the weekly
 * 7x4 comparison matrix. Blank cells mean no data, not zero earnings. */

import { clear, el } from "../dom";
import { count, currency, minutes, perMinute } from "../format";
import { BLANK_FILL, shadeColor } from "../shade";
import type { CalendarPayload, DayCell, WeekdayRow } from "../types";

const WEEKDAY_HEADS = ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"];

export function mountCalendarView(root: HTMLElement, payload: CalendarPayload): void {
  const breakdown = el("div", { class: "day-breakdown", "data-testid": "day-breakdown" });
  root.append(
    el(
      "section",
      { class: "calendar" },
      el("h3", {}, `Your days, ${payload.month.start} to ${payload.month.end}`),
      monthGrid(payload, breakdown),
      breakdown,
      el("h3", {}, "Week at a glance: you vs the city"),
      weekMatrix(payload.week.personal, payload.week.city),
    ),
  );
}

function monthGrid(payload: CalendarPayload, breakdown: HTMLElement): HTMLElement {
  const { start, end, days, n_shades } = payload.month;
  const grid = el("div", { class: "month-grid", "data-testid": "month-grid" });
  for (const head of WEEKDAY_HEADS) {
    grid.append(el("div", { class: "month-head" }, head));
  }

  const first = new Date(`${start}T00:00:00`);
  const last = new Date(`${end}T00:00:00`);
  // Monday-first column offset for the first cell.
  const lead = (first.getDay() + 6) % 7;
  for (let i = 0; i < lead; i++) {
    grid.append(el("div", { class: "month-cell lead" }));
  }

  for (let t = new Date(first); t <= last; t.setDate(t.getDate() + 1)) {
    const iso = t.toISOString().slice(0, 10);
    const cell = days[iso];
    if (!cell) {
      grid.append(
        el("div", { class: "month-cell blank", "data-date": iso, style: `background:${BLANK_FILL}` },
          el("span", { class: "day-number" }, String(t.getDate()))),
      );
      continue;
    }
    const node = el(
      "div",
      {
        class: "month-cell active",
        "data-date": iso,
        "data-shade": cell.shade,
        style: `background:${shadeColor(cell.shade, n_shades)}`,
        onclick: () => renderBreakdown(breakdown, iso, cell),
      },
      el("span", { class: "day-number" }, String(t.getDate())),
    );
    grid.append(node);
  }
  return grid;
}

function renderBreakdown(box: HTMLElement, iso: string, cell: DayCell): void {
  clear(box);
  box.append(
    el("h4", {}, iso),
    el("p", { "data-testid": "breakdown-earnings" }, `Total earnings: ${currency(cell.total_earnings)}`),
    el("p", {}, `Trips: ${count(cell.trip_count)}`),
    el("p", {}, `Fare per minute: ${perMinute(cell.fare_per_minute)}`),
    el("p", {}, `Average fare: ${currency(cell.avg_fare)}`),
  );
}

function weekMatrix(personal: WeekdayRow[], city: WeekdayRow[]): HTMLElement {
  const table = el("table", { class: "week-matrix", "data-testid": "week-matrix" });
  table.append(
    el(
      "tr",
      {},
      el("th", {}, "Day"),
      ...["Trips", "Avg fare", "Avg duration", "Fare/min"].flatMap((metric) => [
        el("th", {}, `${metric} (you)`),
        el("th", {}, `${metric} (city)`),
      ]),
    ),
  );
  for (let wd = 0; wd < 7; wd++) {
    const mine = personal[wd];
    const theirs = city[wd];
    if (!mine || !theirs) continue;
    const fmt = {
      tripsOf: (r: WeekdayRow) => count(r.total_trips),
      fareOf: (r: WeekdayRow) => (r.avg_fare === null ? "—" : currency(r.avg_fare)),
      durOf: (r: WeekdayRow) => (r.avg_duration_min === null ? "—" : minutes(r.avg_duration_min)),
      fpmOf: (r: WeekdayRow) => perMinute(r.fare_per_minute),
    };
    table.append(
      el(
        "tr",
        { "data-weekday": wd },
        el("td", {}, WEEKDAY_HEADS[wd] ?? ""),
        el("td", {}, fmt.tripsOf(mine)),
        el("td", {}, fmt.tripsOf(theirs)),
        el("td", {}, fmt.fareOf(mine)),
        el("td", {}, fmt.fareOf(theirs)),
        el("td", {}, fmt.durOf(mine)),
        el("td", {}, fmt.durOf(theirs)),
        el("td", {}, fmt.fpmOf(mine)),
        el("td", {}, fmt.fpmOf(theirs)),
      ),
    );
  }
  return table;
}
