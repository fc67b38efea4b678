/** Hourly, calendar, animation: rendering faithfulness to the payloads. */

import { beforeEach, describe, expect, it } from "vitest";

import { mountAnimationView } from "../src/views/animation";
import { mountCalendarView } from "../src/views/calendar";
import { mountHourlyView } from "../src/views/hourly";
import { AnimationPlayer, BASE_RATE } from "../src/views/player";
import { animationPayload, calendarPayload, hourlyPayload, mapPayload } from "./fixtures";

let root: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = "";
  root = document.createElement("div");
  document.body.append(root);
});

describe("hourly view", () => {
  it("renders gap hours hatched, not as zero-height bars", () => {
    mountHourlyView(root, hourlyPayload);
    const gap = root.querySelector('[data-scope="personal"] rect[data-hour="3"]')!;
    expect(gap.getAttribute("data-gap")).toBe("true");
    expect(gap.getAttribute("fill")).toContain("url(#hatch-personal)");
    const filled = root.querySelector('[data-scope="personal"] rect[data-hour="9"]')!;
    expect(filled.getAttribute("data-gap")).toBeNull();
  });

  it("shares one scale: equal values have equal bar heights across charts", () => {
    mountHourlyView(root, hourlyPayload);
    const mine = root.querySelector('[data-scope="personal"] rect[data-hour="9"]')!;
    const city = root.querySelector('[data-scope="city"] rect[data-hour="9"]')!;
    expect(mine.getAttribute("height")).toBe(city.getAttribute("height"));
  });

  it("hover reveals the bucket's stats", () => {
    mountHourlyView(root, hourlyPayload);
    const bar = root.querySelector('[data-scope="city"] rect[data-hour="9"]')!;
    bar.dispatchEvent(new MouseEvent("mouseenter"));
    const tip = root.querySelector('[data-testid="hourly-tooltip"]')!.textContent!;
    expect(tip).toContain("100 trips");
    expect(tip).toContain("$1.00/min");
  });
});

describe("calendar view", () => {
  it("renders 30 day cells for June, blanks where there is no data", () => {
    mountCalendarView(root, calendarPayload);
    const cells = root.querySelectorAll(".month-cell[data-date]");
    expect(cells).toHaveLength(30);
    expect(root.querySelectorAll(".month-cell.active")).toHaveLength(2);
    expect(root.querySelector('[data-date="2022-06-02"]')!.classList.contains("blank")).toBe(true);
  });

  it("darker shade goes to the higher-earning day", () => {
    mountCalendarView(root, calendarPayload);
    const low = root.querySelector('[data-date="2022-06-03"]')!;
    const high = root.querySelector('[data-date="2022-06-10"]')!;
    expect(Number(high.getAttribute("data-shade"))).toBeGreaterThan(Number(low.getAttribute("data-shade")));
  });

  it("clicking a day reveals its breakdown from the payload", () => {
    mountCalendarView(root, calendarPayload);
    (root.querySelector('[data-date="2022-06-10"]') as HTMLElement).click();
    const text = root.querySelector('[data-testid="day-breakdown"]')!.textContent!;
    expect(text).toContain("$301.25");
    expect(text).toContain("14");
  });

  it("weekly matrix shows 7 rows with the four labeled variables twice", () => {
    mountCalendarView(root, calendarPayload);
    const rows = root.querySelectorAll('[data-testid="week-matrix"] tr[data-weekday]');
    expect(rows).toHaveLength(7);
    const header = root.querySelector('[data-testid="week-matrix"] tr')!.textContent!;
    for (const metric of ["Trips", "Avg fare", "Avg duration", "Fare/min"]) {
      expect(header).toContain(`${metric} (you)`);
      expect(header).toContain(`${metric} (city)`);
    }
  });
});

describe("animation player", () => {
  it("4x speed quarters the wall time", () => {
    const player = new AnimationPlayer(animationPayload.frames, 30);
    expect(player.wallDurationS(4)).toBeCloseTo(player.wallDurationS(1) / 4, 12);
  });

  it("advance accumulates trace time at rate x speed", () => {
    const player = new AnimationPlayer(animationPayload.frames, 30);
    // 1 wall second at 1x = BASE_RATE trace seconds = 2 frames of 30s.
    expect(player.advance(1, 1)).toBe(BASE_RATE / 30);
    expect(player.advance(0.5, 2)).toBe(2 * (BASE_RATE / 30));
  });

  it("seek clamps to the frame range", () => {
    const player = new AnimationPlayer(animationPayload.frames, 30);
    expect(player.seekFrame(-3)).toBe(0);
    expect(player.seekFrame(99)).toBe(animationPayload.frames.length - 1);
  });
});

describe("animation view", () => {
  it("scrubbing moves the marker to the frame position", () => {
    const handle = mountAnimationView(root, animationPayload, mapPayload.geometry);
    const scrub = root.querySelector<HTMLInputElement>('[data-testid="scrub"]')!;
    scrub.value = "6";
    scrub.dispatchEvent(new Event("input"));
    const marker = root.querySelector('[data-testid="marker"]')!;
    expect(marker.getAttribute("data-frame")).toBe("6");
    expect(handle.player.frameIndex()).toBe(6);
  });

  it("on-trip frames color the marker distinctly", () => {
    mountAnimationView(root, animationPayload, mapPayload.geometry);
    const scrub = root.querySelector<HTMLInputElement>('[data-testid="scrub"]')!;
    const marker = root.querySelector('[data-testid="marker"]')!;
    scrub.value = "5";
    scrub.dispatchEvent(new Event("input"));
    expect(marker.getAttribute("class")).toContain("on-trip");
    scrub.value = "0";
    scrub.dispatchEvent(new Event("input"));
    expect(marker.getAttribute("class")).toContain("deadhead");
  });

  it("held frames are visually flagged", () => {
    mountAnimationView(root, animationPayload, mapPayload.geometry);
    const scrub = root.querySelector<HTMLInputElement>('[data-testid="scrub"]')!;
    scrub.value = "5"; // fixture marks frame 5 as non-interpolated
    scrub.dispatchEvent(new Event("input"));
    expect(root.querySelector('[data-testid="marker"]')!.getAttribute("class")).toContain("held");
  });
});
