/** Detail-on-demand popover: first page of matching messages for a term,
 * account, or location, with timestamps and label badges. */

import { ApiClient, Descriptor } from "../api.js";
import { clear, htmlEl } from "../dom.js";
import type { HoverTarget } from "../types.js";

export class MessageTooltip {
  private readonly root: HTMLElement;
  private requestSeq = 0;

  constructor(
    host: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.root = htmlEl("div", "tooltip hidden");
    host.appendChild(this.root);
    this.root.addEventListener("click", (event) => {
      if ((event.target as HTMLElement).classList.contains("tooltip-close")) {
        this.hide();
      }
    });
  }

  hide(): void {
    this.root.classList.add("hidden");
  }

  async show(target: HoverTarget, descriptor: Descriptor): Promise<void> {
    const seq = ++this.requestSeq;
    const filter =
      target.kind === "term"
        ? { term: target.value }
        : target.kind === "account"
          ? { account: target.value }
          : { location: target.value };
    const page = await this.api.messages(descriptor, filter, 1, 20);
    if (seq !== this.requestSeq) {
      return;
    }
    clear(this.root);
    this.root.classList.remove("hidden");

    const header = htmlEl("div", "tooltip-header");
    header.append(
      htmlEl("strong", undefined, `${target.kind}: ${target.value}`),
      htmlEl("span", "tooltip-total", `${page.total} messages`),
      htmlEl("button", "tooltip-close", "x"),
    );
    this.root.appendChild(header);

    if (page.messages.length === 0) {
      this.root.appendChild(htmlEl("div", "tooltip-empty", "no messages"));
      return;
    }
    const list = htmlEl("div", "tooltip-list");
    for (const message of page.messages) {
      const row = htmlEl("div", "tooltip-row");
      const meta = htmlEl("div", "tooltip-meta");
      meta.append(
        htmlEl("span", "tooltip-time", message.timestamp.replace("T", " ").replace("Z", "")),
        htmlEl("span", "tooltip-account", message.account),
      );
      for (const label of message.labels) {
        meta.appendChild(htmlEl("span", "label-badge", label));
      }
      row.append(meta, htmlEl("div", "tooltip-content", message.content));
      list.appendChild(row);
    }
    this.root.appendChild(list);
    if (page.total > page.messages.length) {
      this.root.appendChild(
        htmlEl(
          "div",
          "tooltip-more",
          `showing ${page.messages.length} of ${page.total}`,
        ),
      );
    }
  }
}
