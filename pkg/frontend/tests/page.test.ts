// @vitest-environment happy-dom
/**
 * The page itself, booted in a DOM shim against a live service process:
 * module import mounts the app, the query flow drives real confirm feedback,
 * and the similarity/partition/teach panels all round-trip the HTTP API.
 * Cross-origin enforcement in the shim also exercises the service's CORS
 * answers, which a real browser depends on.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { startService, waitFor, type RunningService } from "./fixture.js";

let service: RunningService;

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
}

beforeAll(async () => {
  service = await startService();
  const w = window as unknown as { happyDOM: { setURL: (url: string) => void } };
  w.happyDOM.setURL(`http://localhost/?api=${service.base}`);
  document.body.innerHTML = '<div id="app"></div>';
  await import("../src/main.js");
}, 60_000);

afterAll(async () => {
  await service?.stop();
});

describe("page boot", () => {
  it("shows the service status line once connected", async () => {
    await waitFor(
      () => byId("status").textContent?.includes("KB format v1") ?? false,
      "status line",
    );
    expect(byId("status").textContent).toContain(service.base);
  }, 30_000);

  it("fills the knowledge-base browser and the term selects", async () => {
    await waitFor(() => byId("kb-tree").querySelectorAll("details").length >= 2, "KB tree");
    const summaries = [...byId("kb-tree").querySelectorAll("summary")].map(
      (node) => node.textContent ?? "",
    );
    expect(summaries.some((text) => text.includes("to-gum"))).toBe(true);
    expect(summaries.some((text) => text.includes("to-rub"))).toBe(true);
    expect((byId<HTMLSelectElement>("term-a")).value).toBe("to-gum");
    expect((byId<HTMLSelectElement>("term-b")).value).toBe("to-rub");
  }, 30_000);

  it("renders the partition at the default threshold", async () => {
    await waitFor(
      () => byId("partition-result").textContent?.includes("group") ?? false,
      "partition panel",
    );
    const text = byId("partition-result").textContent ?? "";
    expect(text).toContain("θ = 0.90 → 3 group(s)");
    expect(text).toContain("{ gum-action, rub-action }");
  }, 30_000);
});

describe("dialogue flow on the page", () => {
  it('diagnosing "rub" renders ranked cards', async () => {
    byId<HTMLInputElement>("goal").value = "rub";
    byId("ask").click();
    await waitFor(() => byId("cards").querySelectorAll("article.card").length >= 3, "cards");
    const cards = [...byId("cards").querySelectorAll("article.card")];
    expect(cards[0]?.querySelector("h3")?.textContent).toBe("EraseWithMenu");
    expect(cards[0]?.textContent).toContain("score=0.8667");
    expect(cards[0]?.querySelectorAll("svg.mf-sketch").length).toBe(1);
    expect(byId("session-header").textContent).toContain("is open");
  }, 30_000);

  it("confirming the best card updates the sketch and closes the session", async () => {
    const before = byId("cards").querySelector(".sketch")?.getAttribute("data-corners");
    expect(before).toBe("0.7,0.9,0.9,1");
    const confirmButton = byId("cards").querySelector<HTMLButtonElement>(
      'button[data-action="confirm"][data-candidate="EraseWithMenu"]',
    );
    expect(confirmButton).not.toBeNull();
    confirmButton!.click();
    await waitFor(
      () => byId("session-notice").textContent?.includes("confirmed") ?? false,
      "confirm notice",
    );
    await waitFor(
      () => byId("cards").querySelector(".sketch")?.getAttribute("data-corners") !== before,
      "re-rendered sketch",
    );
    const after = (byId("cards").querySelector(".sketch")?.getAttribute("data-corners") ?? "")
      .split(",")
      .map(Number);
    const expected = [0.72, 0.92, 0.92, 1.0];
    expect(after).toHaveLength(4);
    after.forEach((corner, index) => {
      expect(corner).toBeCloseTo(expected[index]!, 10);
    });
    expect(byId("cards").innerHTML).toContain("mf-previous");
    const buttons = [...byId("cards").querySelectorAll("button[data-action]")];
    expect(buttons.length).toBeGreaterThan(0);
    expect(buttons.every((button) => (button as HTMLButtonElement).disabled)).toBe(true);
  }, 30_000);
});

describe("explorer panels on the page", () => {
  it("similarity compare shows the 0.94 headline", async () => {
    byId("compare").click();
    await waitFor(
      () => byId("similarity-result").textContent?.includes("similarity degree") ?? false,
      "similarity result",
    );
    const text = byId("similarity-result").textContent ?? "";
    expect(text).toContain("similarity degree: 0.94");
    expect(text).toContain("ratio: 0.46 / 0.49 = 0.94");
  }, 30_000);

  it("moving the θ slider re-partitions", async () => {
    byId<HTMLInputElement>("theta").value = "0.5";
    byId("theta").dispatchEvent(new Event("change"));
    await waitFor(
      () => byId("partition-result").textContent?.includes("2 group(s)") ?? false,
      "re-partition",
    );
    expect(byId("partition-result").textContent).toContain("{ key-erase-goal, menu-cut-goal }");
  }, 30_000);

  it("teaching a term adds it to the browser", async () => {
    byId<HTMLInputElement>("teach-term").value = "to-wipe";
    byId<HTMLSelectElement>("teach-procedure").value = "CutWithKey";
    byId("teach").click();
    await waitFor(
      () =>
        [...byId("kb-tree").querySelectorAll("summary")].some(
          (node) => node.textContent?.includes("to-wipe") ?? false,
        ),
      "taught term",
    );
    expect(byId<HTMLSelectElement>("term-a").textContent).toContain("to-wipe");
  }, 30_000);
});
