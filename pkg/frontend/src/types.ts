/** Wire types for the /api/* endpoints (see docs/schemas in the repo root). */

export interface WireWindow {
  from: string;
  to: string;
  clamped: boolean;
  requested: { from: string; to: string };
}

export interface ExtentResponse {
  min: string;
  max: string;
  message_count: number;
}

export interface SummaryBin {
  start: string;
  counts: Record<string, number>;
  total: number;
}

export interface SummaryResponse {
  window: WireWindow;
  bin_seconds: number;
  labels: string[];
  bins: SummaryBin[];
}

export interface GeoResponse {
  window: WireWindow;
  counts: Record<string, number>;
  unknown_count: number;
}

export interface RankingEntry {
  account: string;
  count: number;
}

export interface RankingResponse {
  window: WireWindow;
  entries: RankingEntry[];
}

export interface NetworkNode {
  account: string;
  out_posts: number;
  weighted_degree: number;
  component: number;
}

export interface NetworkEdge {
  source: string;
  target: string;
  weight: number;
}

export interface NetworkResponse {
  window: WireWindow;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export type Topic = "terms" | "locations";

export interface BandSpan {
  top: number;
  bottom: number;
}

export interface WordBox {
  term: string;
  topic: Topic;
  box: number;
  frequency: number;
  font_size: number;
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface FreqBox {
  from: string;
  to: string;
  freqs: Record<string, number>;
  post_count: number;
}

export interface WordstreamResponse {
  window: WireWindow;
  canvas: [number, number];
  boxes: number;
  bands: Record<Topic, BandSpan[]>;
  words: WordBox[];
  dropped: Record<Topic, number[]>;
  tables: Record<Topic, { boxes: FreqBox[] }>;
}

export interface WireMessage {
  id: number;
  timestamp: string;
  location: string;
  account: string;
  content: string;
  labels: string[];
}

export interface MessagesResponse {
  window: WireWindow;
  total: number;
  page: number;
  page_size: number;
  filter: Record<string, string>;
  messages: WireMessage[];
}

export interface GeoFeature {
  type: "Feature";
  properties: { name: string };
  geometry: { type: "Polygon"; coordinates: number[][][] };
}

export interface NeighborhoodCollection {
  type: "FeatureCollection";
  features: GeoFeature[];
}

/** Client-side time window in epoch milliseconds, half-open [start, end). */
export interface TimeWindowMs {
  start: number;
  end: number;
}

export type HoverKind = "term" | "location" | "account";

export interface HoverTarget {
  kind: HoverKind;
  value: string;
}
