/** Linked-view orchestration.
 *
 * Every brush change issues one request per dependent panel (WordStream,
 * map, network, ranking) tagged with a generation counter; responses from
 * superseded generations are discarded, so panels only ever render the
 * most recent effective window. Category selection changes additionally
 * refresh the overview series. Hover state is pure presentation and never
 * refetches.
 */

import { ApiClient, Descriptor } from "./api.js";
import { snapWindow } from "./brush.js";
import type {
  GeoResponse,
  HoverTarget,
  NetworkResponse,
  RankingResponse,
  SummaryResponse,
  TimeWindowMs,
  WireWindow,
  WordstreamResponse,
} from "./types.js";
import { parseInstant } from "./time.js";

export type PanelName = "wordstream" | "geo" | "network" | "ranking";

export const LINKED_PANELS: readonly PanelName[] = [
  "wordstream",
  "geo",
  "network",
  "ranking",
];

export interface PanelDataMap {
  wordstream: WordstreamResponse;
  geo: GeoResponse;
  network: NetworkResponse;
  ranking: RankingResponse;
}

export interface RenderedPanel<P extends PanelName = PanelName> {
  panel: P;
  data: PanelDataMap[P];
  /** Effective window reported by the service (render truth, not intent). */
  window: WireWindow;
  generation: number;
}

export interface ViewState {
  window: TimeWindowMs;
  selectedLabels: Set<string>;
  hover: HoverTarget | null;
  pinned: HoverTarget | null;
}

export interface ControllerEvents {
  onPanel?: (rendered: RenderedPanel) => void;
  onOverview?: (summary: SummaryResponse) => void;
  onHover?: (target: HoverTarget | null) => void;
  onError?: (error: unknown) => void;
}

export class DashboardController {
  readonly state: ViewState;
  readonly rendered: Partial<Record<PanelName, RenderedPanel>> = {};

  private generation = 0;
  private extent: TimeWindowMs;

  constructor(
    private readonly api: ApiClient,
    extent: TimeWindowMs,
    initialWindow: TimeWindowMs,
    private readonly events: ControllerEvents = {},
  ) {
    this.extent = extent;
    this.state = {
      window: snapWindow(initialWindow, extent),
      selectedLabels: new Set(),
      hover: null,
      pinned: null,
    };
  }

  descriptor(): Descriptor {
    return { window: this.state.window, labels: this.state.selectedLabels };
  }

  /** Move/resize the sliding window and refresh panels B-E. */
  async brushWindow(raw: TimeWindowMs): Promise<void> {
    this.state.window = snapWindow(raw, this.extent);
    await this.refreshLinkedPanels();
  }

  /** Replace the category selection and refresh all five panels. */
  async setLabels(labels: Iterable<string>): Promise<void> {
    this.state.selectedLabels = new Set(labels);
    await Promise.all([this.refreshOverview(), this.refreshLinkedPanels()]);
  }

  async refreshOverview(): Promise<void> {
    const descriptor: Descriptor = {
      window: this.extent,
      labels: this.state.selectedLabels,
    };
    try {
      const summary = await this.api.summary(descriptor);
      this.events.onOverview?.(summary);
    } catch (error) {
      this.events.onError?.(error);
    }
  }

  async refreshLinkedPanels(): Promise<void> {
    const generation = ++this.generation;
    const descriptor = this.descriptor();
    await Promise.all(
      LINKED_PANELS.map((panel) => this.fetchPanel(panel, descriptor, generation)),
    );
  }

  private async fetchPanel(
    panel: PanelName,
    descriptor: Descriptor,
    generation: number,
  ): Promise<void> {
    try {
      const data = await this.dispatch(panel, descriptor);
      if (generation !== this.generation) {
        return; // superseded by a newer brush
      }
      const rendered: RenderedPanel = {
        panel,
        data,
        window: data.window,
        generation,
      };
      this.rendered[panel] = rendered;
      this.events.onPanel?.(rendered);
    } catch (error) {
      if (generation === this.generation) {
        this.events.onError?.(error);
      }
    }
  }

  private dispatch(
    panel: PanelName,
    descriptor: Descriptor,
  ): Promise<PanelDataMap[PanelName]> {
    switch (panel) {
      case "wordstream":
        return this.api.wordstream(descriptor);
      case "geo":
        return this.api.geo(descriptor);
      case "network":
        return this.api.network(descriptor);
      case "ranking":
        return this.api.ranking(descriptor);
    }
  }

  setHover(target: HoverTarget | null): void {
    this.state.hover = target;
    this.events.onHover?.(this.effectiveTarget());
  }

  togglePin(target: HoverTarget): void {
    const { pinned } = this.state;
    this.state.pinned =
      pinned && pinned.kind === target.kind && pinned.value === target.value
        ? null
        : target;
    this.events.onHover?.(this.effectiveTarget());
  }

  effectiveTarget(): HoverTarget | null {
    return this.state.hover ?? this.state.pinned;
  }

  /** The window every panel currently renders, or null while inconsistent. */
  consensusWindow(): WireWindow | null {
    const windows = LINKED_PANELS.map((panel) => this.rendered[panel]?.window);
    const first = windows[0];
    if (!first) {
      return null;
    }
    for (const window of windows) {
      if (!window || window.from !== first.from || window.to !== first.to) {
        return null;
      }
    }
    return first;
  }
}

export function windowFromWire(window: WireWindow): TimeWindowMs {
  return { start: parseInstant(window.from), end: parseInstant(window.to) };
}
