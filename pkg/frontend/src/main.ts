/** Dashboard bootstrap: wires the five panels to the controller. */

import { ApiClient } from "./api.js";
import { DashboardController, windowFromWire } from "./controller.js";
import { htmlEl } from "./dom.js";
import { resolveEmphasis } from "./highlight.js";
import { HOUR_MS, formatShort, parseInstant } from "./time.js";
import { AreaChart } from "./render/area.js";
import { ChoroplethPanel } from "./render/choropleth.js";
import { NetworkPanel } from "./render/network.js";
import { RankingPanel } from "./render/ranking.js";
import { MessageTooltip } from "./render/tooltip.js";
import { WordstreamPanel } from "./render/wordstream.js";
import type { HoverTarget, WordstreamResponse } from "./types.js";

const BASE_URL =
  new URLSearchParams(location.search).get("api") ?? "http://127.0.0.1:8787";

function mount(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing #${id}`);
  }
  return el;
}

async function boot(): Promise<void> {
  const api = new ApiClient(BASE_URL, (url) => fetch(url));
  const banner = mount("error-banner");
  const windowLabel = mount("window-label");

  const extentResponse = await api.extent();
  const extent = {
    start: parseInstant(extentResponse.min),
    end: parseInstant(extentResponse.max) + 1000,
  };
  const initialWindow = {
    start: Math.max(extent.start, extent.end - 6 * HOUR_MS),
    end: extent.end,
  };

  let latestLayout: WordstreamResponse | null = null;

  const tooltip = new MessageTooltip(document.body, api);
  const showDetail = (target: HoverTarget) => {
    tooltip.show(target, controller.descriptor()).catch((error) => {
      banner.textContent = String(error);
      banner.classList.remove("hidden");
    });
  };
  const hover = (target: HoverTarget | null) => controller.setHover(target);
  const callbacks = { onHover: hover, onSelect: showDetail };

  const wordstream = new WordstreamPanel(mount("panel-wordstream"), callbacks);
  const choropleth = new ChoroplethPanel(mount("panel-map"), callbacks);
  const network = new NetworkPanel(mount("panel-network"), callbacks);
  const ranking = new RankingPanel(mount("panel-ranking"), callbacks);

  const area = new AreaChart(mount("panel-area"), {
    width: 1200,
    height: 180,
    onBrush: (window) => {
      banner.classList.add("hidden");
      void controller.brushWindow(window);
    },
  });

  const controller = new DashboardController(api, extent, initialWindow, {
    onPanel: (rendered) => {
      const effective = windowFromWire(rendered.window);
      windowLabel.textContent = `${formatShort(effective.start)} – ${formatShort(effective.end)} UTC`;
      area.setWindow(effective);
      switch (rendered.panel) {
        case "wordstream":
          latestLayout = rendered.data as WordstreamResponse;
          wordstream.render(latestLayout);
          break;
        case "geo":
          choropleth.render(rendered.data as never);
          break;
        case "network":
          network.render(rendered.data as never);
          break;
        case "ranking":
          ranking.render(rendered.data as never);
          break;
      }
    },
    onOverview: (summary) => {
      area.render(summary, controller.state.window);
      renderLabelSelector(summary.labels);
    },
    onHover: (target) => {
      const emphasis = resolveEmphasis(target, latestLayout);
      wordstream.applyEmphasis(emphasis);
      choropleth.applyEmphasis(emphasis);
      network.applyEmphasis(emphasis);
      ranking.applyEmphasis(emphasis);
    },
    onError: (error) => {
      banner.textContent = String(error);
      banner.classList.remove("hidden");
    },
  });

  const selectorHost = mount("label-selector");
  let knownLabels: string[] = [];
  function renderLabelSelector(labels: string[]): void {
    if (labels.join(",") === knownLabels.join(",")) {
      return;
    }
    knownLabels = labels;
    selectorHost.textContent = "";
    for (const label of [...labels, "unclassified"]) {
      const wrapper = htmlEl("label", "label-toggle");
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = label !== "unclassified";
      box.addEventListener("change", () => {
        const selected = [
          ...selectorHost.querySelectorAll<HTMLInputElement>("input:checked"),
        ].map((input) => input.value);
        banner.classList.add("hidden");
        void controller.setLabels(selected);
      });
      box.value = label;
      wrapper.append(box, htmlEl("span", undefined, label));
      selectorHost.appendChild(wrapper);
    }
  }

  api
    .neighborhoods()
    .then((geometry) => choropleth.setGeometry(geometry))
    .catch(() => {
      banner.textContent = "neighborhood geometry unavailable";
      banner.classList.remove("hidden");
    });

  await controller.refreshOverview();
  await controller.brushWindow(initialWindow);
}

boot().catch((error) => {
  const banner = document.getElementById("error-banner");
  if (banner) {
    banner.textContent = `failed to start: ${error}`;
    banner.classList.remove("hidden");
  }
});
