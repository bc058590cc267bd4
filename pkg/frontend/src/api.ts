/**
 * Typed client for the assistance service.  Reads may overlap freely;
 * mutations (diagnose, confirm, reject, learn) are chained so at most one is
 * in flight at a time, mirroring the service's single-writer discipline.
 */

import type {
  FeedbackResult,
  KnowledgeBase,
  LearnResult,
  PartitionResult,
  ServiceBanner,
  Session,
  SimilarityReport,
  TermsPayload,
} from "./model.js";

export const DEFAULT_BASE = "http://127.0.0.1:7341";

export interface ApiErrorBody {
  code: string;
  message: string;
  entity: string | null;
}

/** A structured error answer from the service (4xx/5xx with a JSON body). */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;
  readonly entity: string | null;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code;
    this.entity = body.entity;
  }

  /** True when feedback hit a session that is no longer open (409). */
  get sessionClosed(): boolean {
    return this.code === "session.closed";
  }
}

/** The service could not be reached at all (connection refused, DNS, ...). */
export class ServiceUnreachableError extends Error {
  constructor(base: string, cause: unknown) {
    super(`cannot reach the assistance service at ${base}`);
    this.name = "ServiceUnreachableError";
    this.cause = cause;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  readonly base: string;
  /** Last X-KB-Format-Version header seen, for the status line. */
  formatVersion: string | null = null;

  private readonly fetchImpl: FetchLike;
  private mutationTail: Promise<unknown> = Promise.resolve();

  constructor(base: string = DEFAULT_BASE, fetchImpl?: FetchLike) {
    this.base = base.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (cause) {
      throw new ServiceUnreachableError(this.base, cause);
    }
    const version = response.headers.get("X-KB-Format-Version");
    if (version !== null) {
      this.formatVersion = version;
    }
    const text = await response.text();
    let payload: unknown = null;
    if (text !== "") {
      try {
        payload = JSON.parse(text);
      } catch {
        payload = null;
      }
    }
    if (!response.ok) {
      const shaped = payload as Partial<ApiErrorBody> | null;
      throw new ApiError(response.status, {
        code: typeof shaped?.code === "string" ? shaped.code : "service.error",
        message:
          typeof shaped?.message === "string"
            ? shaped.message
            : `unexpected answer ${response.status}`,
        entity: typeof shaped?.entity === "string" ? shaped.entity : null,
      });
    }
    return payload as T;
  }

  /** Chain a mutation behind any mutation already in flight. */
  private mutate<T>(run: () => Promise<T>): Promise<T> {
    const next = this.mutationTail.then(run, run);
    this.mutationTail = next.then(
      () => undefined,
      () => undefined,
    );
    return next;
  }

  ping(): Promise<ServiceBanner> {
    return this.request("GET", "/");
  }

  kb(): Promise<KnowledgeBase> {
    return this.request("GET", "/kb");
  }

  terms(): Promise<TermsPayload> {
    return this.request("GET", "/kb/terms");
  }

  similarity(a: string, b: string): Promise<SimilarityReport> {
    return this.request(
      "GET",
      `/similarity?a=${encodeURIComponent(a)}&b=${encodeURIComponent(b)}`,
    );
  }

  partition(theta: number): Promise<PartitionResult> {
    return this.request("GET", `/partition?theta=${encodeURIComponent(theta)}`);
  }

  session(id: string): Promise<Session> {
    return this.request("GET", `/sessions/${encodeURIComponent(id)}`);
  }

  diagnose(goal: string, object = "", context: string[] = []): Promise<Session> {
    return this.mutate(() =>
      this.request("POST", "/diagnose", { goal, object, context }),
    );
  }

  confirm(sessionId: string, candidate: string, eta?: number): Promise<FeedbackResult> {
    return this.mutate(() =>
      this.request(
        "POST",
        `/sessions/${encodeURIComponent(sessionId)}/confirm`,
        eta === undefined ? { candidate } : { candidate, eta },
      ),
    );
  }

  reject(sessionId: string, candidate: string, eta?: number): Promise<FeedbackResult> {
    return this.mutate(() =>
      this.request(
        "POST",
        `/sessions/${encodeURIComponent(sessionId)}/reject`,
        eta === undefined ? { candidate } : { candidate, eta },
      ),
    );
  }

  learn(
    term: string,
    procedure: string,
    level: string,
    attribute?: string,
  ): Promise<LearnResult> {
    const body: Record<string, string> = { term, procedure, level };
    if (attribute !== undefined) {
      body["attribute"] = attribute;
    }
    return this.mutate(() => this.request("POST", "/kb/terms", body));
  }
}
