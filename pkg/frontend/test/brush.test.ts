import { describe, expect, it } from "vitest";

import { BrushScale, MAX_WIDTH_MS, MIN_WIDTH_MS, snapWindow } from "../src/brush.js";
import { HOUR_MS } from "../src/time.js";

const T0 = Date.parse("2020-04-06T00:00:00Z");

describe("snapWindow", () => {
  it("keeps a legal width untouched", () => {
    const window = { start: T0, end: T0 + 6 * HOUR_MS };
    expect(snapWindow(window)).toEqual(window);
  });

  it("snaps a sub-hour drag up to one hour", () => {
    const snapped = snapWindow({ start: T0, end: T0 + HOUR_MS / 2 });
    expect(snapped.end - snapped.start).toBe(MIN_WIDTH_MS);
  });

  it("caps an oversized drag at 31 hours", () => {
    const snapped = snapWindow({ start: T0, end: T0 + 40 * HOUR_MS });
    expect(snapped.end - snapped.start).toBe(MAX_WIDTH_MS);
  });

  it("normalizes a backwards drag", () => {
    const snapped = snapWindow({ start: T0 + 5 * HOUR_MS, end: T0 });
    expect(snapped).toEqual({ start: T0, end: T0 + 5 * HOUR_MS });
  });

  it("shifts back inside the extent after widening", () => {
    const extent = { start: T0, end: T0 + 10 * HOUR_MS };
    const snapped = snapWindow(
      { start: extent.end - HOUR_MS / 4, end: extent.end },
      extent,
    );
    expect(snapped.end).toBe(extent.end);
    expect(snapped.start).toBe(extent.end - MIN_WIDTH_MS);
  });
});

describe("BrushScale", () => {
  const extent = { start: T0, end: T0 + 10 * HOUR_MS };
  const scale = new BrushScale(extent, 1000);

  it("maps pixels to instants linearly", () => {
    expect(scale.msAtPixel(0)).toBe(extent.start);
    expect(scale.msAtPixel(1000)).toBe(extent.end);
    expect(scale.msAtPixel(500)).toBe(T0 + 5 * HOUR_MS);
  });

  it("round-trips through pixelAtMs", () => {
    expect(scale.pixelAtMs(scale.msAtPixel(437))).toBeCloseTo(437, 6);
  });

  it("produces a snapped window from a drag", () => {
    const window = scale.windowFromDrag(100, 110); // 6 minutes of drag
    expect(window.end - window.start).toBe(MIN_WIDTH_MS);
  });
});
