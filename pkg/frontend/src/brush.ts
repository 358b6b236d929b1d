/** Sliding-window brush math. The control enforces the 1h..31h width range
 * before any request leaves the client, so the service never sees a
 * sub-hour window from the brush path. All values are epoch ms. */

import type { TimeWindowMs } from "./types.js";
import { HOUR_MS } from "./time.js";

export const MIN_WIDTH_MS = HOUR_MS;
export const MAX_WIDTH_MS = 31 * HOUR_MS;

/** Snap a window into the legal width range, preferring to move the end,
 * then shift back inside the extent when one is given. */
export function snapWindow(
  raw: TimeWindowMs,
  extent?: TimeWindowMs,
): TimeWindowMs {
  let start = Math.min(raw.start, raw.end);
  let end = Math.max(raw.start, raw.end);
  if (end - start < MIN_WIDTH_MS) {
    end = start + MIN_WIDTH_MS;
  } else if (end - start > MAX_WIDTH_MS) {
    end = start + MAX_WIDTH_MS;
  }
  if (extent) {
    const width = end - start;
    if (end > extent.end) {
      end = extent.end;
      start = end - width;
    }
    if (start < extent.start) {
      start = extent.start;
      end = start + width;
    }
  }
  return { start, end };
}

export function windowWidthMs(window: TimeWindowMs): number {
  return window.end - window.start;
}

/** Maps pixel offsets on the timeline axis to a snapped window. */
export class BrushScale {
  constructor(
    private readonly extent: TimeWindowMs,
    private readonly widthPx: number,
  ) {}

  msAtPixel(px: number): number {
    const clamped = Math.max(0, Math.min(this.widthPx, px));
    const span = this.extent.end - this.extent.start;
    return this.extent.start + (clamped / this.widthPx) * span;
  }

  pixelAtMs(ms: number): number {
    const span = this.extent.end - this.extent.start;
    return ((ms - this.extent.start) / span) * this.widthPx;
  }

  windowFromDrag(anchorPx: number, currentPx: number): TimeWindowMs {
    return snapWindow(
      { start: this.msAtPixel(anchorPx), end: this.msAtPixel(currentPx) },
      this.extent,
    );
  }
}
