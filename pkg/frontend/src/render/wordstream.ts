/** Panel B: WordStream. The server computes all geometry (bands and
 * collision-free word boxes in abstract units); this renderer scales it
 * through the SVG viewBox and applies emphasis classes. */

import { clear, svgEl } from "../dom.js";
import { wordKey, type Emphasis } from "../highlight.js";
import type { HoverTarget, Topic, WordstreamResponse } from "../types.js";

const BAND_FILL: Record<Topic, string> = {
  terms: "#9ecae1",
  locations: "#a1d99b",
};

export interface WordstreamCallbacks {
  onHover: (target: HoverTarget | null) => void;
  onSelect: (target: HoverTarget) => void;
}

export class WordstreamPanel {
  private readonly svg: SVGSVGElement;
  private wordEls = new Map<string, SVGTextElement>();

  constructor(
    host: HTMLElement,
    private readonly callbacks: WordstreamCallbacks,
  ) {
    this.svg = svgEl("svg", { class: "wordstream" });
    host.appendChild(this.svg);
  }

  render(layout: WordstreamResponse): void {
    clear(this.svg);
    this.wordEls.clear();
    const [width, height] = layout.canvas;
    this.svg.setAttribute("viewBox", `0 0 ${width} ${height}`);

    const bandLayer = svgEl("g");
    for (const topic of ["terms", "locations"] as const) {
      const bands = layout.bands[topic];
      const boxWidth = width / layout.boxes;
      bands.forEach((band, i) => {
        if (band.bottom - band.top <= 0) {
          return;
        }
        bandLayer.appendChild(
          svgEl("rect", {
            x: i * boxWidth,
            y: band.top,
            width: boxWidth,
            height: band.bottom - band.top,
            fill: BAND_FILL[topic],
            "fill-opacity": 0.3,
          }),
        );
      });
    }
    this.svg.appendChild(bandLayer);

    const wordLayer = svgEl("g", { class: "words" });
    for (const word of layout.words) {
      const text = svgEl("text", {
        x: word.x,
        y: word.y + word.height * 0.8,
        "font-size": word.font_size,
        textLength: word.width,
        lengthAdjust: "spacingAndGlyphs",
        class: `word word-${word.topic}`,
      }) as SVGTextElement;
      text.textContent = word.term;
      const kind = word.topic === "locations" ? "location" : "term";
      text.addEventListener("pointerenter", () =>
        this.callbacks.onHover({ kind, value: word.term }),
      );
      text.addEventListener("pointerleave", () => this.callbacks.onHover(null));
      text.addEventListener("click", () =>
        this.callbacks.onSelect({ kind, value: word.term }),
      );
      this.wordEls.set(wordKey(word.topic, word.box, word.term), text);
      wordLayer.appendChild(text);
    }
    this.svg.appendChild(wordLayer);
  }

  applyEmphasis(emphasis: Emphasis): void {
    const active = emphasis.wordKeys.size > 0;
    for (const [key, el] of this.wordEls) {
      el.classList.toggle("emphasized", emphasis.wordKeys.has(key));
      el.classList.toggle("dimmed", active && !emphasis.wordKeys.has(key));
    }
  }
}
