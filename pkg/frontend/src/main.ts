/**
 * Application wiring: one page with a query box, ranked candidate cards with
 * confirm/reject feedback, a similarity explorer, a partition view with an
 * adjustable threshold, and a knowledge-base browser.  All numbers come from
 * the service; after every accepted mutation the knowledge base is
 * re-fetched so the affected sketches visibly update.
 */

import { ApiError, Client, DEFAULT_BASE, ServiceUnreachableError } from "./api.js";
import {
  candidateCardMarkup,
  kbTermMarkup,
  partitionMarkup,
  similarityMarkup,
} from "./charts.js";
import {
  Corners,
  KnowledgeBase,
  LEVEL_KEYS,
  Session,
  TermRow,
  cornersOf,
  profileOf,
  statusNotice,
} from "./model.js";
import {
  attachHoverReadouts,
  clearBanner,
  el,
  section,
  setHtml,
  showBanner,
  showNotice,
} from "./render.js";

interface AppState {
  client: Client;
  kb: KnowledgeBase | null;
  terms: TermRow[];
  session: Session | null;
  /** procedure -> shape at the time feedback was sent, for dashed overlays. */
  previousShapes: Map<string, Corners>;
}

function apiBase(): string {
  return new URLSearchParams(window.location.search).get("api") ?? DEFAULT_BASE;
}

function candidateKey(attribute: string, term: string, procedure: string, level: string): string {
  return `${attribute}/${term}/${procedure}/${level}`;
}

function main(): void {
  const app = document.getElementById("app");
  if (!app) {
    throw new Error("missing #app mount point");
  }
  const state: AppState = {
    client: new Client(apiBase()),
    kb: null,
    terms: [],
    session: null,
    previousShapes: new Map(),
  };

  const bannerHost = el("div", { id: "banner-host" });
  const statusLine = el("p", { id: "status", class: "status" }, "connecting…");

  const query = section("query", "Query");
  const goalInput = el("input", {
    id: "goal",
    type: "text",
    placeholder: 'goal verb, e.g. "rub"',
    autocomplete: "off",
  });
  const contextInput = el("input", {
    id: "context",
    type: "text",
    placeholder: "context terms, comma separated (optional)",
    autocomplete: "off",
  });
  const askButton = el("button", { id: "ask" }, "diagnose");
  const sessionHeader = el("div", { id: "session-header" });
  const sessionNotice = el("div", { id: "session-notice" });
  const cards = el("div", { id: "cards" });
  query.body.append(
    el("div", { class: "row" }, goalInput, contextInput, askButton),
    sessionHeader,
    sessionNotice,
    cards,
  );

  const similarity = section("similarity", "Similarity explorer");
  const termA = el("select", { id: "term-a" });
  const termB = el("select", { id: "term-b" });
  const compareButton = el("button", { id: "compare" }, "compare");
  const similarityResult = el("div", { id: "similarity-result" });
  similarity.body.append(el("div", { class: "row" }, termA, termB, compareButton), similarityResult);

  const partition = section("partition", "Partition");
  const thetaInput = el("input", {
    id: "theta",
    type: "range",
    min: "0",
    max: "1",
    step: "0.05",
    value: "0.9",
  });
  const thetaValue = el("output", { id: "theta-value" }, "0.90");
  const partitionResult = el("div", { id: "partition-result" });
  partition.body.append(el("div", { class: "row" }, el("label", {}, "θ "), thetaInput, thetaValue), partitionResult);

  const browser = section("kb", "Knowledge base");
  const teachRow = el("div", { class: "row" });
  const teachTerm = el("input", { id: "teach-term", type: "text", placeholder: "new term, e.g. to-wipe" });
  const teachProcedure = el("select", { id: "teach-procedure" });
  const teachLevel = el("select", { id: "teach-level" });
  for (const key of LEVEL_KEYS) {
    teachLevel.append(el("option", { value: key }, key));
  }
  (teachLevel as HTMLSelectElement).value = "half_true";
  const teachButton = el("button", { id: "teach" }, "teach term");
  teachRow.append(teachTerm, teachProcedure, teachLevel, teachButton);
  const kbTree = el("div", { id: "kb-tree" });
  browser.body.append(teachRow, kbTree);

  app.replaceChildren(
    el("header", {}, el("h1", {}, "fuzzynet assistant"), statusLine),
    bannerHost,
    query.root,
    similarity.root,
    partition.root,
    browser.root,
  );

  const offline = (error: ServiceUnreachableError, retry: () => void): void => {
    statusLine.textContent = "service unreachable";
    showBanner(bannerHost, error.message, retry);
  };

  const renderStatus = (): void => {
    const version = state.client.formatVersion ?? "?";
    statusLine.textContent = `service at ${state.client.base} · KB format v${version}`;
  };

  const renderTermChoices = (): void => {
    const names = state.terms.map((row) => row.term);
    for (const select of [termA, termB]) {
      select.replaceChildren();
      for (const name of names) {
        select.append(el("option", { value: name }, name));
      }
    }
    if (names.includes("to-gum")) {
      (termA as HTMLSelectElement).value = "to-gum";
    }
    if (names.includes("to-rub")) {
      (termB as HTMLSelectElement).value = "to-rub";
    }
    teachProcedure.replaceChildren();
    for (const name of state.kb?.procedures ?? []) {
      teachProcedure.append(el("option", { value: name }, name));
    }
  };

  const renderKbTree = (): void => {
    if (!state.kb) {
      return;
    }
    const blocks: string[] = [];
    for (const attribute of Object.keys(state.kb.user_attributes).sort()) {
      for (const term of Object.keys(state.kb.user_attributes[attribute] ?? {}).sort()) {
        const procedures = Object.keys(state.kb.user_attributes[attribute]?.[term] ?? {}).sort();
        blocks.push(
          kbTermMarkup(
            attribute,
            term,
            procedures.map((procedure) => [procedure, profileOf(state.kb!, attribute, term, procedure)]),
          ),
        );
      }
    }
    setHtml(kbTree, blocks.join(""));
  };

  const renderSession = (): void => {
    if (!state.session) {
      sessionHeader.replaceChildren();
      setHtml(cards, "");
      return;
    }
    const sess = state.session;
    sessionHeader.replaceChildren(
      el("p", { class: "session-line" }, `${statusNotice(sess)} — goal "${sess.query.goal}"`),
    );
    const markup = sess.candidates
      .map((candidate) => {
        const key = candidateKey(candidate.attribute, candidate.term, candidate.procedure, candidate.level);
        const corners = state.kb
          ? cornersOf(state.kb, candidate.attribute, candidate.term, candidate.procedure, candidate.level)
          : null;
        return candidateCardMarkup(candidate, corners, {
          previous: state.previousShapes.get(key) ?? null,
          disabled: sess.status !== "open" || sess.rejected.includes(candidate.procedure),
        });
      })
      .join("");
    setHtml(cards, markup);
    attachHoverReadouts(cards);
  };

  const refreshKb = async (): Promise<void> => {
    state.kb = await state.client.kb();
    state.terms = (await state.client.terms()).terms;
    renderStatus();
    renderTermChoices();
    renderKbTree();
  };

  const boot = async (): Promise<void> => {
    try {
      await state.client.ping();
      await refreshKb();
      clearBanner(bannerHost);
      await runPartition();
    } catch (error) {
      if (error instanceof ServiceUnreachableError) {
        offline(error, () => void boot());
        return;
      }
      throw error;
    }
  };

  const guarded = (work: () => Promise<void>, retry: () => void): void => {
    work().catch((error: unknown) => {
      if (error instanceof ServiceUnreachableError) {
        offline(error, retry);
      } else if (error instanceof ApiError) {
        showNotice(
          sessionNotice,
          error.sessionClosed ? `${error.message} — start a new query to keep going` : error.message,
          error.sessionClosed ? "closed" : "error",
        );
      } else {
        throw error;
      }
    });
  };

  const runDiagnose = (): void => {
    const goal = (goalInput as HTMLInputElement).value.trim();
    if (!goal) {
      showNotice(sessionNotice, "enter a goal verb first");
      return;
    }
    const context = (contextInput as HTMLInputElement).value
      .split(",")
      .map((part) => part.trim())
      .filter((part) => part !== "");
    guarded(async () => {
      state.previousShapes.clear();
      state.session = await state.client.diagnose(goal, "", context);
      sessionNotice.replaceChildren();
      renderSession();
    }, runDiagnose);
  };

  const sendFeedback = (action: "confirm" | "reject", candidateName: string): void => {
    const sess = state.session;
    if (!sess) {
      return;
    }
    guarded(async () => {
      const candidate = sess.candidates.find((c) => c.procedure === candidateName);
      if (candidate && state.kb) {
        const key = candidateKey(candidate.attribute, candidate.term, candidate.procedure, candidate.level);
        const corners = cornersOf(state.kb, candidate.attribute, candidate.term, candidate.procedure, candidate.level);
        if (corners) {
          state.previousShapes.set(key, corners);
        }
      }
      const result =
        action === "confirm"
          ? await state.client.confirm(sess.id, candidateName)
          : await state.client.reject(sess.id, candidateName);
      state.session = result.session;
      await refreshKb();
      renderSession();
      showNotice(sessionNotice, `${action}ed ${candidateName}: ${statusNotice(result.session)}`);
    }, () => sendFeedback(action, candidateName));
  };

  const runCompare = (): void => {
    const a = (termA as HTMLSelectElement).value;
    const b = (termB as HTMLSelectElement).value;
    guarded(async () => {
      const report = await state.client.similarity(a, b);
      setHtml(similarityResult, similarityMarkup(report));
    }, runCompare);
  };

  const runPartition = async (): Promise<void> => {
    const theta = Number((thetaInput as HTMLInputElement).value);
    thetaValue.value = theta.toFixed(2);
    const result = await state.client.partition(theta);
    setHtml(partitionResult, partitionMarkup(result));
  };

  const runTeach = (): void => {
    const term = (teachTerm as HTMLInputElement).value.trim();
    const procedure = (teachProcedure as HTMLSelectElement).value;
    const level = (teachLevel as HTMLSelectElement).value;
    if (!term) {
      showNotice(sessionNotice, "enter a term name to teach");
      return;
    }
    guarded(async () => {
      await state.client.learn(term, procedure, level);
      (teachTerm as HTMLInputElement).value = "";
      await refreshKb();
    }, runTeach);
  };

  askButton.addEventListener("click", runDiagnose);
  goalInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      runDiagnose();
    }
  });
  cards.addEventListener("click", (event) => {
    const target = event.target as HTMLElement | null;
    const button = target?.closest("button[data-action]") as HTMLButtonElement | null;
    if (!button || button.disabled) {
      return;
    }
    const action = button.dataset["action"];
    const candidate = button.dataset["candidate"];
    if ((action === "confirm" || action === "reject") && candidate) {
      sendFeedback(action, candidate);
    }
  });
  compareButton.addEventListener("click", runCompare);
  thetaInput.addEventListener("change", () => {
    guarded(runPartition, () => void runPartition());
  });
  teachButton.addEventListener("click", runTeach);

  void boot();
}

main();
