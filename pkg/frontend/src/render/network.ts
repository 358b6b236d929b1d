/** Panel D: mention network. Positions come from the deterministic force
 * layout; node radius grows with the square root of weighted degree. */

import { clear, svgEl } from "../dom.js";
import { forceLayout } from "../force.js";
import type { Emphasis } from "../highlight.js";
import type { HoverTarget, NetworkResponse } from "../types.js";

const WIDTH = 480;
const HEIGHT = 360;

export interface NetworkCallbacks {
  onHover: (target: HoverTarget | null) => void;
  onSelect: (target: HoverTarget) => void;
}

export class NetworkPanel {
  private readonly svg: SVGSVGElement;
  private nodeEls = new Map<string, SVGCircleElement>();

  constructor(
    host: HTMLElement,
    private readonly callbacks: NetworkCallbacks,
  ) {
    this.svg = svgEl("svg", {
      class: "network",
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    });
    host.appendChild(this.svg);
  }

  render(network: NetworkResponse): void {
    clear(this.svg);
    this.nodeEls.clear();
    const placed = forceLayout(network.nodes, network.edges, WIDTH, HEIGHT);
    const at = new Map(placed.map((p) => [p.account, p]));

    const edgeLayer = svgEl("g", { class: "edges" });
    const maxWeight = Math.max(1, ...network.edges.map((e) => e.weight));
    for (const edge of network.edges) {
      const a = at.get(edge.source);
      const b = at.get(edge.target);
      if (!a || !b) {
        continue;
      }
      edgeLayer.appendChild(
        svgEl("line", {
          x1: a.x,
          y1: a.y,
          x2: b.x,
          y2: b.y,
          "stroke-width": 0.5 + (edge.weight / maxWeight) * 2.5,
          class: "edge",
        }),
      );
    }
    this.svg.appendChild(edgeLayer);

    const nodeLayer = svgEl("g", { class: "nodes" });
    for (const node of placed) {
      const circle = svgEl("circle", {
        cx: node.x,
        cy: node.y,
        r: node.radius,
        class: "node",
        "data-account": node.account,
      }) as SVGCircleElement;
      const title = svgEl("title");
      title.textContent = `${node.account}: degree ${node.degree}`;
      circle.appendChild(title);
      circle.addEventListener("pointerenter", () =>
        this.callbacks.onHover({ kind: "account", value: node.account }),
      );
      circle.addEventListener("pointerleave", () => this.callbacks.onHover(null));
      circle.addEventListener("click", () =>
        this.callbacks.onSelect({ kind: "account", value: node.account }),
      );
      this.nodeEls.set(node.account, circle);
      nodeLayer.appendChild(circle);

      if (node.radius > 10) {
        const label = svgEl("text", {
          x: node.x,
          y: node.y - node.radius - 2,
          class: "node-label",
          "text-anchor": "middle",
        });
        label.textContent = node.account;
        nodeLayer.appendChild(label);
      }
    }
    this.svg.appendChild(nodeLayer);
  }

  applyEmphasis(emphasis: Emphasis): void {
    const active = emphasis.accounts.size > 0;
    for (const [account, el] of this.nodeEls) {
      el.classList.toggle("emphasized", emphasis.accounts.has(account));
      el.classList.toggle("dimmed", active && !emphasis.accounts.has(account));
    }
  }
}
