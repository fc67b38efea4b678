/** Integration: the form drives simulation and renders results verbatim.
 * The simulate stub stands in for the engine; fidelity means the rendered
 * figures equal the response fields to the cent. */

import { beforeEach, describe, expect, it, vi } from "vitest";

import { NoMatchError } from "../src/api";
import { mountPlannerView } from "../src/planner/view";
import type { PlannerInputDoc, PlannerOutputDoc } from "../src/types";
import { defaultsPayload, plannerOutput } from "./fixtures";

function setNumber(root: HTMLElement, field: string, value: string): void {
  const input = root.querySelector<HTMLInputElement>(`input[data-field="${field}"]`)!;
  input.value = value;
  input.dispatchEvent(new Event("change"));
}

function submit(root: HTMLElement): void {
  root.querySelector("form")!.dispatchEvent(new Event("submit", { cancelable: true }));
}

function cell(root: HTMLElement, slot: number, row: string): string {
  return root.querySelector(`[data-slot="${slot}"][data-row="${row}"]`)!.textContent ?? "";
}

describe("planner view", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = "";
    root = document.createElement("div");
    document.body.append(root);
  });

  it("renders the service response to the cent", async () => {
    const response = plannerOutput({ net: 733.51, gross_fares: 1390.26 });
    const simulate = vi.fn(async (_input: PlannerInputDoc): Promise<PlannerOutputDoc> => response);
    const handle = mountPlannerView(root, defaultsPayload, simulate);

    setNumber(root, "hpw", "40");
    submit(root);
    await handle.lastSubmit;

    expect(simulate).toHaveBeenCalledOnce();
    expect(cell(root, 0, "Net profit")).toBe("$733.51");
    expect(cell(root, 0, "Gross fares")).toBe("$1,390.26");
    expect(cell(root, 0, "Projected trips")).toBe("66");
    expect(root.querySelector('[data-testid="summary-0"]')!.textContent).toBe(response.summary);
  });

  it("sends the serialized form as the request document", async () => {
    const simulate = vi.fn(async (_input: PlannerInputDoc) => plannerOutput());
    const handle = mountPlannerView(root, defaultsPayload, simulate);

    setNumber(root, "hpw", "25");
    setNumber(root, "gas_price", "4.25");
    root.querySelector<HTMLInputElement>('input[data-day="0"]')!.click();
    root.querySelector<HTMLInputElement>('input[data-day="1"]')!.click();
    submit(root);
    await handle.lastSubmit;

    const sent = simulate.mock.calls[0]![0];
    expect(sent.hpw).toBe(25);
    expect(sent.gas_price).toBe(4.25);
    expect(sent.days).toEqual([2, 3, 4, 5, 6]);
    expect(sent.platform_cut).toBe(0.25);
    expect(sent.tpc).toBe(0.55);
  });

  it("two submissions render side-by-side comparison columns", async () => {
    const nets = [500.0, 650.25];
    let call = 0;
    const simulate = vi.fn(async () => plannerOutput({ net: nets[call++]! }));
    const handle = mountPlannerView(root, defaultsPayload, simulate);

    setNumber(root, "hpw", "30");
    submit(root);
    await handle.lastSubmit;
    expect(root.querySelectorAll(".result-column")).toHaveLength(1);

    setNumber(root, "hpw", "45");
    submit(root);
    await handle.lastSubmit;

    const columns = root.querySelectorAll(".result-column");
    expect(columns).toHaveLength(2);
    expect(cell(root, 0, "Net profit")).toBe("$500.00");
    expect(cell(root, 1, "Net profit")).toBe("$650.25");
    expect(columns[0]!.querySelector("h3")!.textContent).toBe("Original schedule");
    expect(columns[1]!.querySelector("h3")!.textContent).toBe("Revised schedule");
  });

  it("client validation blocks the request and shows an inline error", async () => {
    const simulate = vi.fn(async () => plannerOutput());
    const handle = mountPlannerView(root, defaultsPayload, simulate);

    setNumber(root, "tpc", "0");
    submit(root);
    await handle.lastSubmit;

    expect(simulate).not.toHaveBeenCalled();
    const errors = root.querySelector('[data-testid="form-errors"]')!.textContent;
    expect(errors).toContain("tpc");
  });

  it("renders the no-match message with the echoed filters", async () => {
    const simulate = vi.fn(async () => {
      throw new NoMatchError("no trips match this plan", { days: ["mon"], precip: "wet" });
    });
    const handle = mountPlannerView(root, defaultsPayload, simulate);

    setNumber(root, "hpw", "40");
    submit(root);
    await handle.lastSubmit;

    const text = root.querySelector('[data-testid="form-errors"]')!.textContent!;
    expect(text).toContain("No trips match this plan");
    expect(text).toContain("wet");
  });

  it("clear comparison empties both slots", async () => {
    const simulate = vi.fn(async () => plannerOutput());
    const handle = mountPlannerView(root, defaultsPayload, simulate);
    setNumber(root, "hpw", "40");
    submit(root);
    await handle.lastSubmit;
    root.querySelector<HTMLButtonElement>('[data-testid="clear-results"]')!.click();
    expect(root.querySelectorAll(".result-column")).toHaveLength(0);
    expect(handle.state().results).toEqual([null, null]);
  });
});
