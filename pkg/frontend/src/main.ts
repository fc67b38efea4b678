/** App shell: tabbed screens, one fetch per probe, blocking banner on any
 * schema-version mismatch. */

import {
  ApiError,
  VersionError,
  fetchAnimation,
  fetchCalendar,
  fetchHourly,
  fetchMap,
  fetchPlannerDefaults,
} from "./api";
import { clear, el } from "./dom";
import { mountAnimationView } from "./views/animation";
import { mountCalendarView } from "./views/calendar";
import { mountHourlyView } from "./views/hourly";
import { mountMapView } from "./views/map";
import { mountPlannerView } from "./planner/view";
import type { MapPayload } from "./types";

const TABS = ["Planner", "Hourly", "Calendar", "Map", "Animation"] as const;
type Tab = (typeof TABS)[number];

async function boot(root: HTMLElement): Promise<void> {
  const banner = el("div", { class: "banner", "data-testid": "banner" });
  const nav = el("nav", { class: "tabs" });
  const stage = el("main", { class: "stage" });
  root.append(el("header", {}, el("h1", {}, "ridelens"), banner), nav, stage);

  const panels = new Map<Tab, HTMLElement>();
  for (const tab of TABS) {
    const panel = el("div", { class: "panel", "data-panel": tab });
    panels.set(tab, panel);
    stage.append(panel);
    nav.append(
      el(
        "button",
        { type: "button", "data-tab": tab, onclick: () => select(tab) },
        tab,
      ),
    );
  }

  function select(tab: Tab): void {
    for (const [name, panel] of panels) {
      panel.style.display = name === tab ? "block" : "none";
    }
    for (const button of nav.querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.tab === tab);
    }
  }
  select("Planner");

  function fail(panel: HTMLElement, error: unknown): void {
    const message =
      error instanceof VersionError
        ? `Schema mismatch: ${error.message}. Rebuild the probes or update this UI.`
        : error instanceof ApiError
          ? error.message
          : String(error);
    if (error instanceof VersionError) {
      banner.textContent = message; // blocking: version skew affects everything
    }
    panel.append(el("p", { class: "error" }, message));
  }

  let mapPayload: MapPayload | null = null;

  try {
    const defaults = await fetchPlannerDefaults();
    mountPlannerView(panels.get("Planner")!, defaults.payload);
  } catch (error) {
    fail(panels.get("Planner")!, error);
  }
  try {
    mountHourlyView(panels.get("Hourly")!, (await fetchHourly()).payload);
  } catch (error) {
    fail(panels.get("Hourly")!, error);
  }
  try {
    mountCalendarView(panels.get("Calendar")!, (await fetchCalendar()).payload);
  } catch (error) {
    fail(panels.get("Calendar")!, error);
  }
  try {
    mapPayload = (await fetchMap()).payload;
    mountMapView(panels.get("Map")!, mapPayload);
  } catch (error) {
    fail(panels.get("Map")!, error);
  }
  try {
    const animation = await fetchAnimation();
    mountAnimationView(panels.get("Animation")!, animation.payload, mapPayload?.geometry ?? null);
  } catch (error) {
    const panel = panels.get("Animation")!;
    if (error instanceof ApiError && error.status === 404) {
      panel.append(
        el(
          "p",
          { class: "notice" },
          "No movement trace available. Ingest location pings and re-run the probes command.",
        ),
      );
    } else {
      fail(panel, error);
    }
  }
}

const rootNode = document.getElementById("app");
if (rootNode) {
  void boot(rootNode);
}

export { boot };
