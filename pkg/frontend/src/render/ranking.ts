/** Panel E: horizontal bars for the most active accounts. */

import { clear, htmlEl } from "../dom.js";
import type { Emphasis } from "../highlight.js";
import type { HoverTarget, RankingResponse } from "../types.js";

export interface RankingCallbacks {
  onHover: (target: HoverTarget | null) => void;
  onSelect: (target: HoverTarget) => void;
}

export class RankingPanel {
  private readonly list: HTMLElement;
  private rowEls = new Map<string, HTMLElement>();

  constructor(
    host: HTMLElement,
    private readonly callbacks: RankingCallbacks,
  ) {
    this.list = htmlEl("div", "ranking-list");
    host.appendChild(this.list);
  }

  render(ranking: RankingResponse): void {
    clear(this.list);
    this.rowEls.clear();
    const max = ranking.entries.length > 0 ? ranking.entries[0].count : 1;
    for (const entry of ranking.entries) {
      const row = htmlEl("div", "ranking-row");
      const name = htmlEl("span", "ranking-account", entry.account);
      const track = htmlEl("div", "ranking-track");
      const bar = htmlEl("div", "ranking-bar");
      bar.style.width = `${(entry.count / max) * 100}%`;
      const count = htmlEl("span", "ranking-count", String(entry.count));
      track.appendChild(bar);
      row.append(name, track, count);
      row.addEventListener("pointerenter", () =>
        this.callbacks.onHover({ kind: "account", value: entry.account }),
      );
      row.addEventListener("pointerleave", () => this.callbacks.onHover(null));
      row.addEventListener("click", () =>
        this.callbacks.onSelect({ kind: "account", value: entry.account }),
      );
      this.rowEls.set(entry.account, row);
      this.list.appendChild(row);
    }
  }

  applyEmphasis(emphasis: Emphasis): void {
    const active = emphasis.accounts.size > 0;
    for (const [account, row] of this.rowEls) {
      row.classList.toggle("emphasized", emphasis.accounts.has(account));
      row.classList.toggle("dimmed", active && !emphasis.accounts.has(account));
    }
  }
}
