/** Side-by-side hourly bar charts (you vs the whole city), one shared
 * dollar-per-minute scale, gap hours hatched rather than drawn as zeros. */

import { clear, el, svg } from "../dom";
import { count, minutes, perMinute } from "../format";
import type { HourlyPayload, HourlyRow } from "../types";

const WIDTH = 520;
const HEIGHT = 220;
const PAD = { top: 14, right: 8, bottom: 26, left: 44 };

export function mountHourlyView(root: HTMLElement, payload: HourlyPayload): void {
  const sharedMax = Math.max(
    0,
    ...payload.personal.map((r) => r.fare_per_minute ?? 0),
    ...payload.city.map((r) => r.fare_per_minute ?? 0),
  );

  const tooltip = el("div", { class: "tooltip", "data-testid": "hourly-tooltip" });
  const charts = el(
    "div",
    { class: "chart-pair" },
    chartFor("You", payload.personal, new Set(payload.personal_gap_hours), sharedMax, tooltip, "personal"),
    chartFor("All city drivers", payload.city, new Set(payload.city_gap_hours), sharedMax, tooltip, "city"),
  );
  root.append(
    el(
      "section",
      { class: "hourly" },
      el("p", { class: "hint" },
        "Bars show average fare per minute by start hour. Hatched hours have no trips in the data — for multi-platform weeks that can simply be work on another app."),
      charts,
      tooltip,
    ),
  );
}

function chartFor(
  title: string,
  rows: HourlyRow[],
  gaps: Set<number>,
  sharedMax: number,
  tooltip: HTMLElement,
  scope: string,
): HTMLElement {
  const plotW = WIDTH - PAD.left - PAD.right;
  const plotH = HEIGHT - PAD.top - PAD.bottom;
  const barW = plotW / 24;

  const chart = svg("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "hourly-chart",
    "data-scope": scope,
    role: "img",
  });

  const patternId = `hatch-${scope}`;
  chart.append(
    svg(
      "defs",
      {},
      svg(
        "pattern",
        { id: patternId, width: 6, height: 6, patternUnits: "userSpaceOnUse", patternTransform: "rotate(45)" },
        svg("line", { x1: 0, y1: 0, x2: 0, y2: 6, stroke: "#b8b2a7", "stroke-width": 2 }),
      ),
    ),
  );

  chart.append(
    svg("line", {
      x1: PAD.left, y1: PAD.top + plotH, x2: PAD.left + plotW, y2: PAD.top + plotH,
      stroke: "#444", "stroke-width": 1,
    }),
    svg("text", { x: PAD.left, y: PAD.top - 4, class: "axis-label" }, `$/min (max ${sharedMax.toFixed(2)})`),
  );

  rows.forEach((row, i) => {
    const x = PAD.left + i * barW;
    const isGap = gaps.has(row.hour);
    const value = row.fare_per_minute ?? 0;
    const h = sharedMax > 0 ? (value / sharedMax) * plotH : 0;
    const bar = isGap
      ? svg("rect", {
          x: x + 1, y: PAD.top, width: barW - 2, height: plotH,
          fill: `url(#${patternId})`, class: "bar gap", "data-hour": row.hour, "data-gap": "true",
        })
      : svg("rect", {
          x: x + 1, y: PAD.top + plotH - h, width: barW - 2, height: Math.max(h, 0.5),
          fill: "rgba(13, 94, 175, 0.85)", class: "bar", "data-hour": row.hour,
          "data-count": row.trip_count,
        });
    bar.addEventListener("mouseenter", () => {
      tooltip.textContent = isGap
        ? `${row.hour}:00 — no trips recorded (gap)`
        : `${row.hour}:00 — ${count(row.trip_count)} trips, ${perMinute(row.fare_per_minute)}, ` +
          `avg fare ${row.avg_fare === null ? "—" : `$${row.avg_fare.toFixed(2)}`}, ` +
          `avg duration ${row.avg_duration_min === null ? "—" : minutes(row.avg_duration_min)}`;
      tooltip.setAttribute("data-hour", String(row.hour));
    });
    bar.addEventListener("mouseleave", () => {
      tooltip.textContent = "";
    });
    chart.append(bar);
    if (row.hour % 4 === 0) {
      chart.append(
        svg("text", { x: x + barW / 2, y: HEIGHT - 8, class: "axis-label", "text-anchor": "middle" }, String(row.hour)),
      );
    }
  });

  return el("figure", { class: "chart" }, el("figcaption", {}, title), chart);
}
