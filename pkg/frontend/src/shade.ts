/** Shade index -> fill color. The engine assigns shades (0..n-1); the UI
 * only maps them to a ramp, darkest = most profitable. */

export function shadeColor(shade: number, nShades: number): string {
  const t = nShades <= 1 ? 1 : (shade + 1) / nShades;
  const alpha = 0.15 + 0.85 * t;
  return `rgba(13, 94, 175, ${alpha.toFixed(3)})`;
}

export const BLANK_FILL = "#f2f0ec";
export const NO_DATA_STROKE = "#b8b2a7";
