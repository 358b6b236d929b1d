/** Instant helpers; the wire speaks ISO-8601 UTC at second precision. */

export const HOUR_MS = 3_600_000;

export function parseInstant(value: string): number {
  const ms = Date.parse(value);
  if (Number.isNaN(ms)) {
    throw new Error(`cannot parse instant ${value}`);
  }
  return ms;
}

export function formatInstant(ms: number): string {
  return new Date(ms).toISOString().replace(/\.\d{3}Z$/, "Z");
}

export function formatShort(ms: number): string {
  const date = new Date(ms);
  const day = date.toISOString().slice(5, 10);
  const clock = date.toISOString().slice(11, 16);
  return `${day} ${clock}`;
}
