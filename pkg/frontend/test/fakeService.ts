/** In-memory stand-in for the query service: records every request and
 * answers with schema-shaped payloads whose window envelope applies the
 * same 1h..31h clamp the real service applies. */

import type { FetchLike } from "../src/api.js";
import type { WireWindow } from "../src/types.js";

export const HOUR_MS = 3_600_000;

export interface RecordedRequest {
  path: string;
  params: URLSearchParams;
  widthMs: number | null;
}

export interface FakeServiceOptions {
  extentMin?: string;
  extentMax?: string;
  /** Optional per-request delay in ms, keyed by request ordinal (1-based). */
  delays?: Map<number, number>;
}

function clampWindow(fromMs: number, toMs: number): { from: number; to: number; clamped: boolean } {
  const width = toMs - fromMs;
  if (width < HOUR_MS) {
    return { from: fromMs, to: fromMs + HOUR_MS, clamped: true };
  }
  if (width > 31 * HOUR_MS) {
    return { from: fromMs, to: fromMs + 31 * HOUR_MS, clamped: true };
  }
  return { from: fromMs, to: toMs, clamped: false };
}

function iso(ms: number): string {
  return new Date(ms).toISOString().replace(/\.\d{3}Z$/, "Z");
}

function windowEnvelope(params: URLSearchParams): WireWindow {
  const from = Date.parse(params.get("from") ?? "");
  const to = Date.parse(params.get("to") ?? "");
  const effective = clampWindow(from, to);
  return {
    from: iso(effective.from),
    to: iso(effective.to),
    clamped: effective.clamped,
    requested: { from: iso(from), to: iso(to) },
  };
}

function payloadFor(path: string, params: URLSearchParams, options: FakeServiceOptions): unknown {
  const window = path === "/api/extent" ? null : windowEnvelope(params);
  switch (path) {
    case "/api/extent":
      return {
        min: options.extentMin ?? "2020-04-06T00:00:00Z",
        max: options.extentMax ?? "2020-04-10T00:00:00Z",
        message_count: 1000,
      };
    case "/api/summary":
      return { window, bin_seconds: 3600, labels: ["water", "food"], bins: [] };
    case "/api/wordstream":
      return {
        window,
        canvas: [1600, 900],
        boxes: 1,
        bands: { terms: [{ top: 0, bottom: 10 }], locations: [{ top: 20, bottom: 30 }] },
        words: [],
        dropped: { terms: [0], locations: [0] },
        tables: { terms: { boxes: [] }, locations: { boxes: [] } },
      };
    case "/api/geo":
      return { window, counts: { Downtown: 5 }, unknown_count: 1 };
    case "/api/network":
      return { window, nodes: [], edges: [] };
    case "/api/ranking":
      return { window, entries: [{ account: "dot-sthimark", count: 25 }] };
    case "/api/messages":
      return {
        window,
        total: 0,
        page: 1,
        page_size: 50,
        filter: {},
        messages: [],
      };
    default:
      throw new Error(`unhandled path ${path}`);
  }
}

export function fakeService(
  requests: RecordedRequest[],
  options: FakeServiceOptions = {},
): FetchLike {
  let ordinal = 0;
  return async (url: string) => {
    ordinal += 1;
    const parsed = new URL(url, "http://fake");
    const params = parsed.searchParams;
    const from = params.get("from");
    const to = params.get("to");
    const widthMs = from && to ? Date.parse(to) - Date.parse(from) : null;
    requests.push({ path: parsed.pathname, params, widthMs });

    const delay = options.delays?.get(ordinal) ?? 0;
    if (delay > 0) {
      await new Promise((resolve) => setTimeout(resolve, delay));
    }
    const body = payloadFor(parsed.pathname, params, options);
    return {
      ok: true,
      status: 200,
      json: async () => body,
    };
  };
}
