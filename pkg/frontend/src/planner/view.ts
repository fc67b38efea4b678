/** Planner screen: schedule/expense form, results table + text summary,
 * and the original-vs-revised comparison columns. */

import { NoMatchError, ValidationError, simulate } from "../api";
import { clear, el } from "../dom";
import { count, currency, miles, minutes, trips } from "../format";
import type { PlannerDefaultsPayload, PlannerInputDoc, PlannerOutputDoc } from "../types";
import {
  DAY_LABELS,
  PlannerFormState,
  clearResults,
  initialFormState,
  recordResult,
  toDoc,
  validateForm,
} from "./form";

export interface PlannerViewHandle {
  state(): PlannerFormState;
  /** Resolves when the in-flight submit (if any) has settled. */
  lastSubmit: Promise<void>;
}

type SimulateFn = (input: PlannerInputDoc) => Promise<PlannerOutputDoc>;

const RESULT_ROWS: [string, (o: PlannerOutputDoc) => string][] = [
  ["Projected trips", (o) => trips(o.pt)],
  ["Gross fares", (o) => currency(o.gross_fares)],
  ["Driver fares (after cut)", (o) => currency(o.driver_fares)],
  ["Tips", (o) => currency(o.tips)],
  ["Paid miles", (o) => miles(o.paid_miles)],
  ["Total miles", (o) => miles(o.total_miles)],
  ["Gas cost", (o) => currency(o.gas_cost)],
  ["Fixed costs", (o) => currency(o.fixed_cost)],
  ["Net profit", (o) => currency(o.net)],
  ["Matching trips (n)", (o) => count(o.subset.n)],
  ["Avg fare (AF)", (o) => currency(o.subset.af)],
  ["Avg duration (ATD)", (o) => minutes(o.subset.atd)],
];

export function mountPlannerView(
  root: HTMLElement,
  defaults: PlannerDefaultsPayload,
  simulateFn: SimulateFn = simulate,
): PlannerViewHandle {
  let state = initialFormState(defaults.platform_cut, defaults.tpc);
  const handle: PlannerViewHandle = { state: () => state, lastSubmit: Promise.resolve() };

  const errorsBox = el("div", { class: "form-errors", "data-testid": "form-errors" });
  const resultsBox = el("div", { class: "results", "data-testid": "results" });

  const numberInput = (field: string, value: number, step = "any") =>
    el("input", {
      type: "number",
      step,
      value: String(value),
      "data-field": field,
      onchange: (event: Event) => {
        const raw = (event.target as HTMLInputElement).value;
        (state as unknown as Record<string, unknown>)[field] = raw === "" ? NaN : Number(raw);
        state.dirty = true;
      },
    });

  const labeled = (text: string, node: Node) =>
    el("label", { class: "field" }, el("span", {}, text), node);

  const dayBoxes = DAY_LABELS.map((label, index) =>
    el(
      "label",
      { class: "check" },
      el("input", {
        type: "checkbox",
        checked: state.days.has(index),
        "data-day": index,
        onchange: (event: Event) => {
          const on = (event.target as HTMLInputElement).checked;
          if (on) state.days.add(index);
          else state.days.delete(index);
          state.dirty = true;
        },
      }),
      label,
    ),
  );

  const hourBoxes = Array.from({ length: 24 }, (_, hour) =>
    el(
      "label",
      { class: "check hour" },
      el("input", {
        type: "checkbox",
        checked: state.hours.has(hour),
        "data-hour": hour,
        onchange: (event: Event) => {
          const on = (event.target as HTMLInputElement).checked;
          if (on) state.hours.add(hour);
          else state.hours.delete(hour);
          state.dirty = true;
        },
      }),
      String(hour),
    ),
  );

  const hoodSelect = el("select", {
    multiple: true,
    size: 6,
    "data-field": "pickup_neighborhoods",
    onchange: (event: Event) => {
      const options = (event.target as HTMLSelectElement).selectedOptions;
      state.pickup_neighborhoods = new Set([...options].map((o) => o.value));
      state.dirty = true;
    },
  });
  for (const hood of defaults.neighborhoods) {
    hoodSelect.append(el("option", { value: hood.id }, hood.name));
  }

  const tempToggle = el("input", {
    type: "checkbox",
    "data-field": "temp_enabled",
    onchange: (event: Event) => {
      state.temp_enabled = (event.target as HTMLInputElement).checked;
      state.dirty = true;
    },
  });

  const precipSelect = el(
    "select",
    {
      "data-field": "precip",
      onchange: (event: Event) => {
        state.precip = (event.target as HTMLSelectElement).value as PlannerFormState["precip"];
        state.dirty = true;
      },
    },
    ...defaults.precip_options.map((option) => el("option", { value: option }, option)),
  );

  const submitButton = el("button", { type: "submit", "data-testid": "submit" }, "Simulate week");

  const form = el(
    "form",
    {
      class: "planner-form",
      onsubmit: (event: Event) => {
        event.preventDefault();
        handle.lastSubmit = submit();
      },
    },
    labeled("Hours per week", numberInput("hpw", state.hpw)),
    el("fieldset", { class: "days" }, el("legend", {}, "Days"), ...dayBoxes),
    el("fieldset", { class: "hours" }, el("legend", {}, "Start hours"), ...hourBoxes),
    labeled("Pickup neighborhoods (empty = all)", hoodSelect),
    el(
      "fieldset",
      { class: "weather" },
      el("legend", {}, "Weather"),
      el("label", { class: "check" }, tempToggle, "limit temperature"),
      labeled("Min °F", numberInput("temp_min", state.temp_min)),
      labeled("Max °F", numberInput("temp_max", state.temp_max)),
      labeled("Precipitation", precipSelect),
    ),
    el(
      "fieldset",
      { class: "expenses" },
      el("legend", {}, "Expenses & platform"),
      labeled("Gas $/gallon", numberInput("gas_price", state.gas_price)),
      labeled("Vehicle MPG", numberInput("mpg", state.mpg)),
      labeled("Insurance $/week", numberInput("insurance_weekly", state.insurance_weekly)),
      labeled("Misc $/week (amortize non-weekly costs here)", numberInput("misc_weekly", state.misc_weekly)),
      labeled("Platform cut (0–1)", numberInput("platform_cut", state.platform_cut, "0.01")),
      labeled("Time with passenger (0–1)", numberInput("tpc", state.tpc, "0.01")),
    ),
    submitButton,
    el("button", {
      type: "button",
      "data-testid": "clear-results",
      onclick: () => {
        state = clearResults(state);
        renderResults();
      },
    }, "Clear comparison"),
  );

  async function submit(): Promise<void> {
    if (state.submitting) return; // single in-flight request
    renderErrors([]);
    const problems = validateForm(state);
    if (problems.length > 0) {
      renderErrors(problems.map((p) => `${p.field}: ${p.message}`));
      return;
    }
    state.submitting = true;
    submitButton.setAttribute("disabled", "");
    try {
      const output = await simulateFn(toDoc(state));
      state = recordResult({ ...state, submitting: true }, output);
      renderResults();
    } catch (error) {
      if (error instanceof NoMatchError) {
        renderErrors([
          `No trips match this plan. Applied filters: ${JSON.stringify(error.filters)}`,
        ]);
      } else if (error instanceof ValidationError) {
        renderErrors(error.errors.map((e) => `${e.field}: ${e.message}`));
      } else {
        renderErrors([`request failed: ${(error as Error).message}`]);
      }
    } finally {
      state.submitting = false;
      submitButton.removeAttribute("disabled");
    }
  }

  function renderErrors(messages: string[]): void {
    clear(errorsBox);
    for (const message of messages) {
      errorsBox.append(el("p", { class: "error" }, message));
    }
  }

  function renderResults(): void {
    clear(resultsBox);
    const slots = state.results;
    if (slots[0] === null) return;
    const titles = ["Original schedule", "Revised schedule"];
    const columns = el("div", { class: "result-columns" });
    slots.forEach((output, index) => {
      if (output === null) return;
      const table = el("table", { class: "result-table" });
      for (const [label, render] of RESULT_ROWS) {
        table.append(
          el(
            "tr",
            {},
            el("td", {}, label),
            el("td", { "data-row": label, "data-slot": index }, render(output)),
          ),
        );
      }
      columns.append(
        el(
          "section",
          { class: "result-column", "data-testid": `result-${index}` },
          el("h3", {}, titles[index] ?? ""),
          table,
          el("p", { class: "summary", "data-testid": `summary-${index}` }, output.summary),
        ),
      );
    });
    resultsBox.append(columns);
  }

  root.append(el("section", { class: "planner" }, form, errorsBox, resultsBox));
  return handle;
}
