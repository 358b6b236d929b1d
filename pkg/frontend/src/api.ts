/** Thin typed client for the query service. The fetch implementation is
 * injectable so the controller tests can record and fake traffic. */

import type {
  ExtentResponse,
  GeoResponse,
  MessagesResponse,
  NeighborhoodCollection,
  NetworkResponse,
  RankingResponse,
  SummaryResponse,
  TimeWindowMs,
  WordstreamResponse,
} from "./types.js";
import { formatInstant } from "./time.js";

export interface FetchResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponseLike>;

export interface Descriptor {
  window: TimeWindowMs;
  labels: ReadonlySet<string>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

function descriptorParams(descriptor: Descriptor): URLSearchParams {
  const params = new URLSearchParams();
  params.set("from", formatInstant(descriptor.window.start));
  params.set("to", formatInstant(descriptor.window.end));
  if (descriptor.labels.size > 0) {
    params.set("labels", [...descriptor.labels].sort().join(","));
  }
  return params;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike,
  ) {}

  private async get<T>(path: string, params?: URLSearchParams): Promise<T> {
    const query = params && [...params.keys()].length > 0 ? `?${params}` : "";
    const response = await this.fetchImpl(`${this.baseUrl}${path}${query}`);
    if (!response.ok) {
      const body = (await response.json().catch(() => null)) as {
        detail?: string;
      } | null;
      throw new ApiError(response.status, body?.detail ?? `HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  extent(): Promise<ExtentResponse> {
    return this.get("/api/extent");
  }

  neighborhoods(): Promise<NeighborhoodCollection> {
    return this.get("/api/neighborhoods");
  }

  summary(descriptor: Descriptor, binSeconds?: number): Promise<SummaryResponse> {
    const params = descriptorParams(descriptor);
    if (binSeconds !== undefined) {
      params.set("bin", String(binSeconds));
    }
    return this.get("/api/summary", params);
  }

  wordstream(descriptor: Descriptor): Promise<WordstreamResponse> {
    return this.get("/api/wordstream", descriptorParams(descriptor));
  }

  geo(descriptor: Descriptor): Promise<GeoResponse> {
    return this.get("/api/geo", descriptorParams(descriptor));
  }

  network(descriptor: Descriptor): Promise<NetworkResponse> {
    return this.get("/api/network", descriptorParams(descriptor));
  }

  ranking(descriptor: Descriptor, limit = 15): Promise<RankingResponse> {
    const params = descriptorParams(descriptor);
    params.set("limit", String(limit));
    return this.get("/api/ranking", params);
  }

  messages(
    descriptor: Descriptor,
    filter: { term?: string; location?: string; account?: string },
    page = 1,
    pageSize = 50,
  ): Promise<MessagesResponse> {
    const params = descriptorParams(descriptor);
    for (const [key, value] of Object.entries(filter)) {
      if (value !== undefined) {
        params.set(key, value);
      }
    }
    params.set("page", String(page));
    params.set("page_size", String(pageSize));
    return this.get("/api/messages", params);
  }
}
