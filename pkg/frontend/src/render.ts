import { colorFor } from "./colors.js";
import type { TemplateStore } from "./state.js";
import type { CounterpartDoc, OptionDoc } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function optionLabel(opt: OptionDoc, frequency: number, original: boolean): string {
  const body = opt.content === "" ? "(empty)" : opt.content.replace(/\s+/g, " ");
  const tag = original ? "original" : opt.category ?? "";
  return `${body}  [${frequency}]${tag ? ` ${tag}` : ""}`;
}

/** One dropdown per hot spot, fixed text in between. */
export function renderTemplate(doc: Document, store: TemplateStore): HTMLElement {
  const root = el(doc, "pre", "template");
  let hotspotIndex = 0;
  for (const seg of store.template.segments) {
    if (seg.kind === "text") {
      root.appendChild(doc.createTextNode(seg.text));
      continue;
    }
    const hi = hotspotIndex++;
    const hotspot = store.template.hotspots[hi];
    const chosen = store.chosenOption(hi);
    const select = el(doc, "select", "hotspot");
    select.dataset.hotspot = String(hi);
    hotspot.options.forEach((opt, oi) => {
      const item = el(doc, "option");
      item.value = String(oi);
      item.selected = oi === chosen;
      item.textContent = optionLabel(opt, store.relativeFrequency(hi, oi), oi === 0);
      item.style.backgroundColor = colorFor(oi === 0 ? null : opt.category, store.hideMisc);
      select.appendChild(item);
    });
    const chosenOpt = hotspot.options[chosen];
    select.style.backgroundColor = colorFor(
      chosen === 0 ? null : chosenOpt.category,
      store.hideMisc,
    );
    if (store.isAutoChosen(hi, chosen)) {
      select.classList.add("auto-chosen"); // distinct border so propagation is visible
    }
    select.addEventListener("change", () => {
      void store.select(hi, Number(select.value));
    });
    root.appendChild(select);
  }
  return root;
}

/** Star-ranked counterpart list; dims entries filtered out by selection. */
export function renderCounterpartList(doc: Document, store: TemplateStore): HTMLElement {
  const active = new Set(store.activeCounterparts());
  const list = el(doc, "ul", "counterparts");
  for (const c of store.template.counterparts) {
    const row = el(doc, "li", active.has(c.id) ? "counterpart active" : "counterpart inactive");
    row.dataset.counterpart = c.id;
    const title = el(doc, "span", "repo", c.repo ?? c.id);
    row.appendChild(title);
    row.appendChild(
      el(doc, "span", "metrics", ` ★${c.stars} 👥${c.contributors} 👁${c.watches}`),
    );
    if (c.url) {
      const link = el(doc, "a", "link", " source");
      link.setAttribute("href", c.url);
      row.appendChild(link);
    }
    row.addEventListener("click", () => store.showCounterpart(c.id));
    list.appendChild(row);
  }
  return list;
}

/**
 * Side-by-side style pane for one counterpart: the example with that
 * counterpart's option contents substituted, changed regions highlighted.
 */
export function renderCounterpartPane(doc: Document, store: TemplateStore): HTMLElement {
  const pane = el(doc, "div", "counterpart-pane");
  const id = store.shownCounterpart;
  if (!id) return pane;
  const info: CounterpartDoc | undefined = store.template.counterparts.find(
    (c) => c.id === id,
  );
  if (!info) return pane;
  pane.appendChild(
    el(doc, "div", "pane-title", `${info.repo ?? id} (★${info.stars})`),
  );
  const body = el(doc, "pre", "pane-body");
  let hotspotIndex = 0;
  for (const seg of store.template.segments) {
    if (seg.kind === "text") {
      body.appendChild(doc.createTextNode(seg.text));
      continue;
    }
    const hotspot = store.template.hotspots[hotspotIndex++];
    const theirs = hotspot.options.find((o, oi) => oi > 0 && o.contributors.includes(id));
    const opt = theirs ?? hotspot.options[0];
    const mark = el(doc, "mark", theirs ? "changed" : "unchanged", opt.content);
    mark.style.backgroundColor = colorFor(theirs ? opt.category : null, store.hideMisc);
    body.appendChild(mark);
  }
  pane.appendChild(body);
  return pane;
}

export function renderApp(doc: Document, store: TemplateStore): HTMLElement {
  const app = el(doc, "div", "app");

  const toolbar = el(doc, "div", "toolbar");
  const undoBtn = el(doc, "button", "undo", "Undo");
  undoBtn.addEventListener("click", () => void store.undo());
  const copyBtn = el(doc, "button", "copy", "Copy result");
  copyBtn.addEventListener("click", () => {
    void store.copyResult((text) => {
      const clip = (doc.defaultView as Window & typeof globalThis)?.navigator
        ?.clipboard;
      return clip ? clip.writeText(text) : Promise.resolve();
    });
  });
  const miscToggle = el(doc, "button", "toggle-misc", "Toggle misc highlights");
  miscToggle.addEventListener("click", () => store.toggleMisc());
  toolbar.append(undoBtn, copyBtn, miscToggle);
  if (store.lastError) {
    toolbar.appendChild(el(doc, "span", "error", store.lastError));
  }

  app.appendChild(toolbar);
  app.appendChild(renderTemplate(doc, store));
  app.appendChild(renderCounterpartList(doc, store));
  app.appendChild(renderCounterpartPane(doc, store));
  return app;
}

/** Repaint everything from the latest server response. */
export function mount(doc: Document, container: HTMLElement, store: TemplateStore): void {
  const repaint = () => {
    container.replaceChildren(renderApp(doc, store));
  };
  store.subscribe(repaint);
  repaint();
}
