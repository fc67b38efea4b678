/** Linked choropleth pair: pick-up map on the left, drop-off map on the
 * right. Clicking a pick-up neighborhood swaps the drop-off map to that
 * neighborhood's precomputed linked map — a pure payload lookup, no math. */

import { clear, el, svg } from "../dom";
import { count, currency, miles, perMinute } from "../format";
import { BLANK_FILL, shadeColor } from "../shade";
import type { AreaMap, MapPayload, Ring, Scope } from "../types";

const VIEW = 420;

interface Projection {
  x(lon: number): number;
  y(lat: number): number;
}

function projectionFor(payload: MapPayload): Projection {
  let minLon = Infinity, maxLon = -Infinity, minLat = Infinity, maxLat = -Infinity;
  for (const geom of Object.values(payload.geometry)) {
    for (const ring of geom.rings) {
      for (const [lon, lat] of ring) {
        minLon = Math.min(minLon, lon);
        maxLon = Math.max(maxLon, lon);
        minLat = Math.min(minLat, lat);
        maxLat = Math.max(maxLat, lat);
      }
    }
  }
  const span = Math.max(maxLon - minLon, maxLat - minLat) || 1;
  const pad = 10;
  const scale = (VIEW - 2 * pad) / span;
  return {
    x: (lon) => pad + (lon - minLon) * scale,
    y: (lat) => VIEW - pad - (lat - minLat) * scale, // north up
  };
}

function ringPath(rings: Ring[], proj: Projection): string {
  return rings
    .map(
      (ring) =>
        "M" + ring.map(([lon, lat]) => `${proj.x(lon).toFixed(2)},${proj.y(lat).toFixed(2)}`).join("L") + "Z",
    )
    .join(" ");
}

export interface MapViewHandle {
  selectedPickup(): string | null;
}

export function mountMapView(root: HTMLElement, payload: MapPayload): MapViewHandle {
  const proj = projectionFor(payload);
  let scope: Scope = "personal";
  let selected: string | null = null;

  const tooltip = el("div", { class: "tooltip", "data-testid": "map-tooltip" });
  const notice = el("p", { class: "notice", "data-testid": "map-notice" });
  const pickupBox = el("figure", { class: "map", "data-testid": "pickup-map" });
  const dropoffBox = el("figure", { class: "map", "data-testid": "dropoff-map" });

  const scopeToggle = el(
    "div",
    { class: "scope-toggle" },
    ...(["personal", "city"] as Scope[]).map((s) =>
      el(
        "button",
        {
          type: "button",
          "data-scope-button": s,
          onclick: () => {
            scope = s;
            selected = null;
            renderBoth();
          },
        },
        s === "personal" ? "You" : "City",
      ),
    ),
  );

  const clearButton = el(
    "button",
    {
      type: "button",
      "data-testid": "clear-selection",
      onclick: () => {
        selected = null;
        notice.textContent = "";
        renderBoth();
      },
    },
    "Clear selection",
  );

  function drawMap(
    box: HTMLElement,
    title: string,
    stats: AreaMap,
    onClick: ((areaId: string) => void) | null,
    testId: string,
  ): void {
    clear(box);
    const chart = svg("svg", { viewBox: `0 0 ${VIEW} ${VIEW}`, class: "choropleth", "data-testid": testId });
    for (const [areaId, geom] of Object.entries(payload.geometry)) {
      const row = stats[areaId];
      const path = svg("path", {
        d: ringPath(geom.rings, proj),
        class: row ? "area" : "area empty",
        fill: row ? shadeColor(row.shade, payload.n_shades) : BLANK_FILL,
        stroke: "#7a7468",
        "stroke-width": 0.6,
        "data-area": areaId,
        ...(row ? { "data-count": row.trip_count } : {}),
      });
      path.addEventListener("mouseenter", () => {
        tooltip.setAttribute("data-area", areaId);
        tooltip.textContent = row
          ? `${geom.name}: ${count(row.trip_count)} trips, ${perMinute(row.fare_per_minute)}, ` +
            `avg fare ${currency(row.avg_fare)}, ${miles(row.avg_miles_per_trip)}/trip`
          : `${geom.name}: no trips`;
      });
      path.addEventListener("mouseleave", () => {
        tooltip.textContent = "";
      });
      if (onClick) {
        path.addEventListener("click", () => onClick(areaId));
      }
      chart.append(path);
    }
    box.append(el("figcaption", {}, title), chart);
  }

  function renderBoth(): void {
    const maps = payload.scopes[scope];
    drawMap(pickupBox, "Pick-ups", maps.pickups, (areaId) => {
      if (!(areaId in maps.pickups)) {
        notice.textContent = `No pickups here (${payload.geometry[areaId]?.name ?? areaId}).`;
        return;
      }
      selected = areaId;
      notice.textContent = "";
      renderDropoffs();
    }, "pickup-svg");
    renderDropoffs();
  }

  function renderDropoffs(): void {
    const maps = payload.scopes[scope];
    const linked = selected !== null ? maps.linked_dropoffs[selected] : undefined;
    const showing = linked ?? maps.dropoffs;
    const title =
      selected !== null && linked
        ? `Drop-offs for trips starting in ${payload.geometry[selected]?.name ?? selected}`
        : "Drop-offs (all trips)";
    dropoffBox.setAttribute("data-selected", selected ?? "");
    drawMap(dropoffBox, title, showing, null, "dropoff-svg");
  }

  renderBoth();
  root.append(
    el(
      "section",
      { class: "maps" },
      el("div", { class: "map-controls" }, scopeToggle, clearButton),
      notice,
      el("div", { class: "map-pair" }, pickupBox, dropoffBox),
      tooltip,
    ),
  );
  return { selectedPickup: () => selected };
}
