/**
 * Thin DOM layer.  Only this module and main.ts touch the document: views
 * are built as markup strings by charts.ts and injected here, keeping all
 * presentation logic testable outside a browser.
 */

import { hoverReadout, pixelToX } from "./charts.js";
import type { Corners } from "./model.js";

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function setHtml(target: Element, markup: string): void {
  target.innerHTML = markup;
}

export interface Section {
  root: HTMLElement;
  body: HTMLElement;
}

export function section(id: string, title: string): Section {
  const body = el("div", { class: "section-body" });
  const root = el("section", { id }, el("h2", {}, title), body);
  return { root, body };
}

/** Full-width banner for an unreachable service, with a retry button. */
export function showBanner(host: HTMLElement, message: string, onRetry: () => void): void {
  host.replaceChildren();
  const button = el("button", { class: "retry" }, "retry");
  button.addEventListener("click", () => {
    host.replaceChildren();
    onRetry();
  });
  host.append(el("div", { class: "banner", role: "alert" }, el("span", {}, message), button));
}

export function clearBanner(host: HTMLElement): void {
  host.replaceChildren();
}

/** Inline notice (session closed, validation problem, ...). */
export function showNotice(host: HTMLElement, message: string, kind = "info"): void {
  host.replaceChildren(el("p", { class: `notice notice-${kind}` }, message));
}

/**
 * Wire live membership read-outs: moving the pointer across any `.sketch`
 * block under `container` shows μ(x) for the corners carried in its
 * `data-corners` attribute.
 */
export function attachHoverReadouts(container: HTMLElement): void {
  for (const sketch of container.querySelectorAll<HTMLElement>(".sketch[data-corners]")) {
    const raw = sketch.dataset["corners"];
    if (!raw) {
      continue;
    }
    const values = raw.split(",").map(Number);
    if (values.length !== 4 || values.some(Number.isNaN)) {
      continue;
    }
    const corners: Corners = [values[0]!, values[1]!, values[2]!, values[3]!];
    const svg = sketch.querySelector("svg");
    if (!svg) {
      continue;
    }
    const readout = el("output", { class: "readout" }, "");
    sketch.append(readout);
    svg.addEventListener("mousemove", (event) => {
      const rect = svg.getBoundingClientRect();
      const width = Number(svg.getAttribute("width") ?? rect.width);
      const px = (event.clientX - rect.left) * (width / rect.width);
      readout.value = hoverReadout(corners, pixelToX(px, width));
    });
    svg.addEventListener("mouseleave", () => {
      readout.value = "";
    });
  }
}
