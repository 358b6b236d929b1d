/** Panel C: choropleth over the schematic neighborhood polygons. Fill is a
 * sequential ramp over [0, max count]; unknown-location posts show as a
 * side badge rather than a region. */

import { clear, htmlEl, svgEl } from "../dom.js";
import { sequentialColor } from "../scales.js";
import type { Emphasis } from "../highlight.js";
import type {
  GeoResponse,
  HoverTarget,
  NeighborhoodCollection,
} from "../types.js";

export interface ChoroplethCallbacks {
  onHover: (target: HoverTarget | null) => void;
  onSelect: (target: HoverTarget) => void;
}

export class ChoroplethPanel {
  private readonly svg: SVGSVGElement;
  private readonly badge: HTMLElement;
  private regionEls = new Map<string, SVGPathElement>();
  private geometry: NeighborhoodCollection | null = null;

  constructor(
    host: HTMLElement,
    private readonly callbacks: ChoroplethCallbacks,
  ) {
    this.svg = svgEl("svg", { class: "choropleth", viewBox: "0 0 100 80" });
    this.badge = htmlEl("div", "unknown-badge");
    host.appendChild(this.svg);
    host.appendChild(this.badge);
  }

  setGeometry(geometry: NeighborhoodCollection): void {
    this.geometry = geometry;
    this.regionEls.clear();
    clear(this.svg);
    for (const feature of geometry.features) {
      const name = feature.properties.name;
      const ring = feature.geometry.coordinates[0];
      const path = svgEl("path", {
        d: `M${ring.map(([x, y]) => `${x},${y}`).join("L")}Z`,
        class: "region",
        fill: sequentialColor(0, 1),
      }) as SVGPathElement;
      const title = svgEl("title");
      title.textContent = name;
      path.appendChild(title);
      path.addEventListener("pointerenter", () =>
        this.callbacks.onHover({ kind: "location", value: name }),
      );
      path.addEventListener("pointerleave", () => this.callbacks.onHover(null));
      path.addEventListener("click", () =>
        this.callbacks.onSelect({ kind: "location", value: name }),
      );
      this.regionEls.set(name, path);
      this.svg.appendChild(path);
    }
  }

  render(geo: GeoResponse): void {
    const max = Math.max(0, ...Object.values(geo.counts));
    for (const [name, path] of this.regionEls) {
      const count = geo.counts[name] ?? 0;
      path.setAttribute("fill", sequentialColor(count, max));
      const title = path.querySelector("title");
      if (title) {
        title.textContent = `${name}: ${count} posts`;
      }
    }
    this.badge.textContent =
      geo.unknown_count > 0 ? `${geo.unknown_count} posts without location` : "";
  }

  applyEmphasis(emphasis: Emphasis): void {
    const active = emphasis.mapRegions.size > 0;
    for (const [name, path] of this.regionEls) {
      path.classList.toggle("emphasized", emphasis.mapRegions.has(name));
      path.classList.toggle("dimmed", active && !emphasis.mapRegions.has(name));
    }
  }
}
