/** Display formatting only; values themselves always come from the engine. */

const usd = new Intl.NumberFormat("en-US", {
  style: "currency",
  currency: "USD",
  minimumFractionDigits: 2,
  maximumFractionDigits: 2,
});

export function currency(value: number): string {
  return usd.format(value);
}

export function miles(value: number): string {
  return `${value.toFixed(1)} mi`;
}

export function minutes(value: number): string {
  return `${value.toFixed(1)} min`;
}

export function perMinute(value: number | null): string {
  return value === null ? "—" : `${usd.format(value)}/min`;
}

export function count(value: number): string {
  return value.toLocaleString("en-US");
}

/** Projected trips are fractional in the engine; display rounds. */
export function trips(pt: number): string {
  return String(Math.round(pt));
}
