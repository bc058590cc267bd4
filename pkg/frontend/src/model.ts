/**
 * Wire types for the assistance service, plus the few pure helpers the views
 * need.  Every number shown to the user is fetched from the service; the one
 * piece of local arithmetic is trapezoid evaluation for hover read-outs,
 * which mirrors the service's own piecewise-linear formula.
 */

export type Corners = readonly [number, number, number, number];

/** The five interpretation levels, weakest first.  Views always present
 * level data in this order, whatever order a JSON object delivers it in. */
export const LEVEL_KEYS = [
  "not_true",
  "little_true",
  "half_true",
  "rather_true",
  "quite_true",
] as const;

export type LevelKey = (typeof LEVEL_KEYS)[number];

export interface TermRow {
  attribute: string;
  term: string;
  procedures: string[];
}

export interface TermsPayload {
  terms: TermRow[];
}

export interface Candidate {
  procedure: string;
  score: number;
  level: string;
  term: string;
  attribute: string;
  centroids: Record<string, number>;
  via: string | null;
  transfer_similarity: number | null;
}

export type SessionStatus = "open" | "confirmed" | "rejected" | "abandoned";

export interface QueryEcho {
  goal: string;
  object: string;
  context: string[];
}

export interface LearningDelta {
  action: string;
  attribute: string;
  term: string;
  procedure: string;
  level: string;
  old: number[] | null;
  new: number[];
  eta: number | null;
}

export interface Session {
  id: string;
  status: SessionStatus;
  query: QueryEcho;
  target_term: string | null;
  candidates: Candidate[];
  rejected: string[];
  deltas: LearningDelta[];
}

export interface FeedbackResult {
  session: Session;
  deltas: LearningDelta[];
}

export interface LearnResult {
  learned: LearningDelta;
  terms: TermRow[];
}

export interface SimilarityReport {
  a: string;
  b: string;
  intersections: Record<string, number>;
  unions: Record<string, number>;
  max_intersection: number;
  max_union: number;
  rounded_intersection: number;
  rounded_union: number;
  ratio: number;
  centroids: Record<string, Record<string, Record<string, number>>>;
  decimals: number | null;
}

export interface PartitionResult {
  theta: number;
  groups: string[][];
}

export interface AttributeRef {
  kind: string;
  attribute: string;
  select: string[];
}

export interface InstanceValue {
  kind: string;
  degrees?: Record<string, number>;
  profiles?: Record<string, Record<string, number[]>>;
}

export interface Edge {
  from: string;
  to: string;
  kind: string;
  degree: number;
}

export interface KnowledgeBase {
  format_version: number;
  procedures: string[];
  system_attributes: Record<string, Record<string, Record<string, number>>>;
  user_attributes: Record<string, Record<string, Record<string, Record<string, number[]>>>>;
  objects: Record<string, AttributeRef[]>;
  classes: Record<string, AttributeRef[]>;
  instances: Record<string, InstanceValue[]>;
  edges: Edge[];
}

export interface ServiceBanner {
  service: string;
  format_version: number;
}

/**
 * Membership degree of `x` under a trapezoid with corners [a, b, c, d]:
 * linear rise on [a, b], plateau at 1 on [b, c], linear fall on [c, d],
 * zero outside.  Zero-width edges behave as inclusive steps, exactly like
 * the service's evaluation, so hover read-outs agree with it.
 */
export function evaluateTrapezoid(corners: Corners, x: number): number {
  const [a, b, c, d] = corners;
  if (x < a || x > d) {
    return 0;
  }
  if (b <= x && x <= c) {
    return 1;
  }
  if (x < b) {
    return (x - a) / (b - a);
  }
  return (d - x) / (d - c);
}

/** "rather_true" -> "rather true", for display. */
export function levelLabel(key: string): string {
  return key.replace(/_/g, " ");
}

/** Entries of a per-level record in canonical level order, skipping levels
 * that are absent from the record. */
export function orderedLevels<T>(record: Record<string, T>): Array<[LevelKey, T]> {
  const entries: Array<[LevelKey, T]> = [];
  for (const key of LEVEL_KEYS) {
    if (key in record) {
      entries.push([key, record[key] as T]);
    }
  }
  return entries;
}

/** Scores and ratios print with 4 decimals, like the CLI. */
export function formatScore(value: number): string {
  return value.toFixed(4);
}

/** Headline similarity degrees print with 2 decimals, like the CLI. */
export function formatSimilarity(ratio: number): string {
  return ratio.toFixed(2);
}

/** Centroids print with up to 4 decimals, trimmed to 2 when exact. */
export function formatCentroid(value: number): string {
  const wide = value.toFixed(4);
  return wide.endsWith("00") ? value.toFixed(2) : wide;
}

/** The CLI-style evidence line, e.g. "0.46 / 0.49 = 0.94". */
export function similarityRatioLine(report: SimilarityReport): string {
  return (
    `${report.rounded_intersection.toFixed(2)} / ${report.rounded_union.toFixed(2)}` +
    ` = ${formatSimilarity(report.ratio)}`
  );
}

/** Corners of one stored membership function, or null when any path segment
 * is missing from the knowledge base. */
export function cornersOf(
  kb: KnowledgeBase,
  attribute: string,
  term: string,
  procedure: string,
  level: string,
): Corners | null {
  const profile = kb.user_attributes[attribute]?.[term]?.[procedure];
  const corners = profile?.[level];
  if (!corners || corners.length !== 4) {
    return null;
  }
  return [corners[0]!, corners[1]!, corners[2]!, corners[3]!];
}

/** All stored levels for one term/procedure pair, in canonical order. */
export function profileOf(
  kb: KnowledgeBase,
  attribute: string,
  term: string,
  procedure: string,
): Array<[LevelKey, Corners]> {
  const stored = kb.user_attributes[attribute]?.[term]?.[procedure];
  if (!stored) {
    return [];
  }
  const result: Array<[LevelKey, Corners]> = [];
  for (const [key] of orderedLevels(stored)) {
    const corners = cornersOf(kb, attribute, term, procedure, key);
    if (corners) {
      result.push([key, corners]);
    }
  }
  return result;
}

/** Human notice for a session state, mirroring the service state machine. */
export function statusNotice(session: Session): string {
  switch (session.status) {
    case "open":
      return `session ${session.id} is open`;
    case "confirmed":
      return `session ${session.id} is confirmed`;
    case "rejected":
      return `session ${session.id} is rejected`;
    case "abandoned":
      return `session ${session.id} is abandoned (all candidates rejected)`;
  }
}
