/** Panel A: stacked area chart over the full corpus extent with the
 * sliding-window brush on top. Stacking order follows the response's
 * label order (taxonomy config order), stable across refreshes. */

import { clear, svgEl } from "../dom.js";
import { BrushScale, MIN_WIDTH_MS } from "../brush.js";
import { linearScale, categoryColor } from "../scales.js";
import { formatShort, parseInstant } from "../time.js";
import type { SummaryResponse, TimeWindowMs } from "../types.js";

export interface AreaChartOptions {
  width: number;
  height: number;
  onBrush: (window: TimeWindowMs) => void;
}

export class AreaChart {
  private readonly svg: SVGSVGElement;
  private readonly bandLayer: SVGGElement;
  private readonly brushLayer: SVGGElement;
  private readonly axisLayer: SVGGElement;
  private scale: BrushScale | null = null;
  private extent: TimeWindowMs | null = null;
  private window: TimeWindowMs | null = null;

  constructor(
    private readonly host: HTMLElement,
    private readonly options: AreaChartOptions,
  ) {
    this.svg = svgEl("svg", {
      viewBox: `0 0 ${options.width} ${options.height}`,
      class: "area-chart",
    });
    this.bandLayer = svgEl("g");
    this.axisLayer = svgEl("g");
    this.brushLayer = svgEl("g", { class: "brush-layer" });
    this.svg.append(this.bandLayer, this.axisLayer, this.brushLayer);
    host.appendChild(this.svg);
    this.wireBrush();
  }

  render(summary: SummaryResponse, window: TimeWindowMs): void {
    const { width, height } = this.options;
    const bins = summary.bins;
    clear(this.bandLayer);
    clear(this.axisLayer);
    if (bins.length === 0) {
      return;
    }
    const starts = bins.map((bin) => parseInstant(bin.start));
    const binMs = summary.bin_seconds * 1000;
    this.extent = { start: starts[0], end: starts[starts.length - 1] + binMs };
    this.scale = new BrushScale(this.extent, width);
    this.window = window;

    const stackMax = Math.max(
      1,
      ...bins.map((bin) =>
        summary.labels.reduce((sum, label) => sum + (bin.counts[label] ?? 0), 0),
      ),
    );
    const yScale = linearScale(0, stackMax, height - 18, 4);

    const running = new Array<number>(bins.length).fill(0);
    summary.labels.forEach((label, labelIndex) => {
      const points: string[] = [];
      const base: string[] = [];
      bins.forEach((bin, i) => {
        const x0 = this.scale!.pixelAtMs(starts[i]);
        const x1 = this.scale!.pixelAtMs(starts[i] + binMs);
        const y0 = yScale(running[i]);
        running[i] += bin.counts[label] ?? 0;
        const y1 = yScale(running[i]);
        points.push(`${x0.toFixed(1)},${y1.toFixed(1)} ${x1.toFixed(1)},${y1.toFixed(1)}`);
        base.unshift(`${x1.toFixed(1)},${y0.toFixed(1)} ${x0.toFixed(1)},${y0.toFixed(1)}`);
      });
      const polygon = svgEl("polygon", {
        points: `${points.join(" ")} ${base.join(" ")}`,
        fill: categoryColor(labelIndex),
        "fill-opacity": 0.8,
        class: "series",
        "data-label": label,
      });
      const title = svgEl("title");
      title.textContent = label;
      polygon.appendChild(title);
      this.bandLayer.appendChild(polygon);
    });

    const tickCount = Math.min(8, bins.length);
    for (let i = 0; i <= tickCount; i++) {
      const ms = this.extent.start + ((this.extent.end - this.extent.start) * i) / tickCount;
      const x = this.scale.pixelAtMs(ms);
      const text = svgEl("text", {
        x,
        y: height - 4,
        class: "axis-label",
        "text-anchor": "middle",
      });
      text.textContent = formatShort(ms);
      this.axisLayer.appendChild(text);
    }
    this.drawBrush();
  }

  setWindow(window: TimeWindowMs): void {
    this.window = window;
    this.drawBrush();
  }

  private drawBrush(): void {
    clear(this.brushLayer);
    if (!this.scale || !this.window) {
      return;
    }
    const { height } = this.options;
    const x0 = this.scale.pixelAtMs(this.window.start);
    const x1 = this.scale.pixelAtMs(this.window.end);
    this.brushLayer.appendChild(
      svgEl("rect", {
        x: x0,
        y: 0,
        width: Math.max(1, x1 - x0),
        height: height - 18,
        class: "brush-rect",
      }),
    );
  }

  private wireBrush(): void {
    let anchor: number | null = null;
    const pixelOf = (event: PointerEvent): number => {
      const rect = this.svg.getBoundingClientRect();
      return ((event.clientX - rect.left) / rect.width) * this.options.width;
    };
    this.svg.addEventListener("pointerdown", (event) => {
      if (!this.scale) {
        return;
      }
      anchor = pixelOf(event);
      this.svg.setPointerCapture(event.pointerId);
    });
    this.svg.addEventListener("pointermove", (event) => {
      if (anchor === null || !this.scale) {
        return;
      }
      const window = this.scale.windowFromDrag(anchor, pixelOf(event));
      this.window = window;
      this.drawBrush();
    });
    this.svg.addEventListener("pointerup", (event) => {
      if (anchor === null || !this.scale) {
        return;
      }
      const current = pixelOf(event);
      let window: TimeWindowMs;
      if (Math.abs(current - anchor) < 2) {
        // click: recenter the existing window on the click point
        const widthMs = this.window
          ? this.window.end - this.window.start
          : MIN_WIDTH_MS;
        const center = this.scale.msAtPixel(current);
        window = { start: center - widthMs / 2, end: center + widthMs / 2 };
      } else {
        window = this.scale.windowFromDrag(anchor, current);
      }
      anchor = null;
      this.options.onBrush(window);
    });
  }
}
