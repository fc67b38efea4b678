/** Movement trace playback over the city outline. On-trip frames render
 * in a distinct color from deadhead movement; held (non-interpolated)
 * frames render hollow. */

import { el, svg } from "../dom";
import type { AnimationPayload, MapPayload } from "../types";
import { AnimationPlayer } from "./player";

const VIEW = 480;
const SPEEDS = [1, 2, 4, 8];

export interface AnimationViewHandle {
  player: AnimationPlayer;
  renderFrame(index: number): void;
}

export function mountAnimationView(
  root: HTMLElement,
  payload: AnimationPayload,
  geometry: MapPayload["geometry"] | null,
): AnimationViewHandle {
  const frames = payload.frames;
  const player = new AnimationPlayer(frames, payload.frame_step_s);

  let minLon = Infinity, maxLon = -Infinity, minLat = Infinity, maxLat = -Infinity;
  const include = (lon: number, lat: number) => {
    minLon = Math.min(minLon, lon);
    maxLon = Math.max(maxLon, lon);
    minLat = Math.min(minLat, lat);
    maxLat = Math.max(maxLat, lat);
  };
  for (const frame of frames) include(frame.lon, frame.lat);
  if (geometry) {
    for (const geom of Object.values(geometry)) {
      for (const ring of geom.rings) for (const [lon, lat] of ring) include(lon, lat);
    }
  }
  const span = Math.max(maxLon - minLon, maxLat - minLat) || 1;
  const pad = 12;
  const scale = (VIEW - 2 * pad) / span;
  const px = (lon: number) => pad + (lon - minLon) * scale;
  const py = (lat: number) => VIEW - pad - (lat - minLat) * scale;

  const stage = svg("svg", { viewBox: `0 0 ${VIEW} ${VIEW}`, class: "trace-stage" });
  if (geometry) {
    for (const geom of Object.values(geometry)) {
      for (const ring of geom.rings) {
        stage.append(
          svg("path", {
            d: "M" + ring.map(([lon, lat]) => `${px(lon).toFixed(1)},${py(lat).toFixed(1)}`).join("L") + "Z",
            class: "outline",
            fill: "none",
            stroke: "#d8d2c6",
            "stroke-width": 0.7,
          }),
        );
      }
    }
  }
  const trail = svg("polyline", { class: "trail", fill: "none", stroke: "#9cb8d4", "stroke-width": 1.2 });
  const marker = svg("circle", { r: 5, class: "marker deadhead", "data-testid": "marker" });
  stage.append(trail, marker);

  const clock = el("span", { class: "clock", "data-testid": "clock" });
  const scrub = el("input", {
    type: "range",
    min: 0,
    max: Math.max(0, frames.length - 1),
    value: 0,
    "data-testid": "scrub",
    oninput: (event: Event) => {
      pause();
      renderFrame(player.seekFrame(Number((event.target as HTMLInputElement).value)));
    },
  });

  let speed = 1;
  const speedSelect = el(
    "select",
    {
      "data-testid": "speed",
      onchange: (event: Event) => {
        speed = Number((event.target as HTMLSelectElement).value);
      },
    },
    ...SPEEDS.map((s) => el("option", { value: s }, `${s}x`)),
  );

  let timer: number | null = null;
  let lastTick = 0;
  const playButton = el(
    "button",
    {
      type: "button",
      "data-testid": "play",
      onclick: () => (timer === null ? play() : pause()),
    },
    "Play",
  );

  function play(): void {
    if (player.atEnd()) player.rewind();
    playButton.textContent = "Pause";
    lastTick = performance.now();
    timer = window.setInterval(() => {
      const now = performance.now();
      const index = player.advance((now - lastTick) / 1000, speed);
      lastTick = now;
      renderFrame(index);
      if (player.atEnd()) pause();
    }, 50);
  }

  function pause(): void {
    if (timer !== null) {
      window.clearInterval(timer);
      timer = null;
    }
    playButton.textContent = "Play";
  }

  const trailPoints: string[] = [];
  let trailUpto = -1;

  function renderFrame(index: number): void {
    const frame = frames[index];
    if (!frame) return;
    marker.setAttribute("cx", px(frame.lon).toFixed(1));
    marker.setAttribute("cy", py(frame.lat).toFixed(1));
    marker.setAttribute(
      "class",
      `marker ${frame.trip_active ? "on-trip" : "deadhead"}${frame.interpolated ? "" : " held"}`,
    );
    marker.setAttribute("data-frame", String(index));
    marker.setAttribute("data-trip-active", String(frame.trip_active));
    if (index > trailUpto) {
      for (let i = trailUpto + 1; i <= index; i++) {
        const step = frames[i];
        if (step) trailPoints.push(`${px(step.lon).toFixed(1)},${py(step.lat).toFixed(1)}`);
      }
      trailUpto = index;
    } else {
      trailPoints.length = 0;
      for (let i = 0; i <= index; i++) {
        const step = frames[i];
        if (step) trailPoints.push(`${px(step.lon).toFixed(1)},${py(step.lat).toFixed(1)}`);
      }
      trailUpto = index;
    }
    trail.setAttribute("points", trailPoints.join(" "));
    scrub.value = String(index);
    clock.textContent = frame.t.slice(11, 19);
  }

  renderFrame(0);
  root.append(
    el(
      "section",
      { class: "animation" },
      el("p", { class: "hint" },
        `One day of movement (${payload.date}), one frame every ${payload.frame_step_s}s. ` +
          "Blue = looking for riders, green = passenger on board, hollow = position held across a data gap."),
      el("div", { class: "controls" }, playButton, scrub, speedSelect, clock),
      stage,
    ),
  );
  return { player, renderFrame };
}
