import { describe, expect, it } from "vitest";

import {
  Corners,
  KnowledgeBase,
  LEVEL_KEYS,
  cornersOf,
  evaluateTrapezoid,
  formatCentroid,
  formatScore,
  formatSimilarity,
  levelLabel,
  orderedLevels,
  profileOf,
  similarityRatioLine,
  statusNotice,
  type Session,
  type SimilarityReport,
} from "../src/model.js";

// Values produced by the service's own evaluation for the same corners, so a
// hover read-out can never disagree with what the API would compute.
const SERVICE_EVALUATIONS: Array<[Corners, Array<[number, number]>]> = [
  [
    [0.4, 0.6, 0.6, 0.8],
    [
      [0.0, 0.0],
      [0.39, 0.0],
      [0.4, 0.0],
      [0.45, 0.25],
      [0.5, 0.5],
      [0.55, 0.75],
      [0.6, 1.0],
      [0.65, 0.75],
      [0.7, 0.5],
      [0.8, 0.0],
      [0.81, 0.0],
      [1.0, 0.0],
    ],
  ],
  [
    [0.8, 1.0, 1.0, 1.0],
    [
      [0.0, 0.0],
      [0.79, 0.0],
      [0.8, 0.0],
      [0.85, 0.25],
      [0.9, 0.5],
      [0.95, 0.75],
      [0.99, 0.95],
      [1.0, 1.0],
    ],
  ],
  [
    [0.0, 0.0, 0.2, 0.4],
    [
      [0.0, 1.0],
      [0.1, 1.0],
      [0.2, 1.0],
      [0.25, 0.75],
      [0.3, 0.5],
      [0.35, 0.25],
      [0.4, 0.0],
      [0.41, 0.0],
    ],
  ],
  [
    [0.7, 0.9, 0.9, 1.0],
    [
      [0.7, 0.0],
      [0.75, 0.25],
      [0.8, 0.5],
      [0.9, 1.0],
      [0.93, 0.7],
      [0.97, 0.3],
      [1.0, 0.0],
    ],
  ],
  [
    [0.5, 0.5, 1.0, 1.0],
    [
      [0.0, 0.0],
      [0.49, 0.0],
      [0.5, 1.0],
      [0.75, 1.0],
      [1.0, 1.0],
    ],
  ],
];

describe("evaluateTrapezoid", () => {
  it("agrees with the service's evaluation to 3 decimals", () => {
    for (const [corners, samples] of SERVICE_EVALUATIONS) {
      for (const [x, expected] of samples) {
        expect(evaluateTrapezoid(corners, x), `μ(${x}) on [${corners}]`).toBeCloseTo(expected, 3);
      }
    }
  });

  it("renders a triangle peak of exactly 1 when b equals c", () => {
    expect(evaluateTrapezoid([0.4, 0.6, 0.6, 0.8], 0.6)).toBe(1);
  });

  it("treats zero-width edges as inclusive steps", () => {
    expect(evaluateTrapezoid([0.0, 0.0, 0.2, 0.4], 0.0)).toBe(1);
    expect(evaluateTrapezoid([0.8, 1.0, 1.0, 1.0], 1.0)).toBe(1);
  });

  it("is zero outside the support", () => {
    expect(evaluateTrapezoid([0.2, 0.4, 0.4, 0.6], 0.1)).toBe(0);
    expect(evaluateTrapezoid([0.2, 0.4, 0.4, 0.6], 0.7)).toBe(0);
  });
});

describe("level helpers", () => {
  it("labels levels with spaces", () => {
    expect(levelLabel("rather_true")).toBe("rather true");
    expect(levelLabel("not_true")).toBe("not true");
  });

  it("orders per-level records canonically regardless of key order", () => {
    const record = { quite_true: 5, not_true: 1, half_true: 3 };
    expect(orderedLevels(record)).toEqual([
      ["not_true", 1],
      ["half_true", 3],
      ["quite_true", 5],
    ]);
  });

  it("knows all five levels, weakest first", () => {
    expect(LEVEL_KEYS).toEqual([
      "not_true",
      "little_true",
      "half_true",
      "rather_true",
      "quite_true",
    ]);
  });
});

describe("formatting", () => {
  it("prints scores with 4 decimals like the CLI", () => {
    expect(formatScore(13 / 15)).toBe("0.8667");
    expect(formatScore(0.8)).toBe("0.8000");
  });

  it("prints the headline similarity with 2 decimals", () => {
    expect(formatSimilarity(0.9387755102040817)).toBe("0.94");
    expect(formatSimilarity(1)).toBe("1.00");
  });

  it("trims exact centroids to 2 decimals and keeps 4 otherwise", () => {
    expect(formatCentroid(0.38)).toBe("0.38");
    expect(formatCentroid(0.4)).toBe("0.40");
    expect(formatCentroid(13 / 15)).toBe("0.8667");
  });

  it("builds the CLI-style ratio line", () => {
    const report = {
      rounded_intersection: 0.46,
      rounded_union: 0.49,
      ratio: 0.9387755102040817,
    } as SimilarityReport;
    expect(similarityRatioLine(report)).toBe("0.46 / 0.49 = 0.94");
  });
});

function tinyKb(): KnowledgeBase {
  return {
    format_version: 1,
    procedures: ["CutWithMenu"],
    system_attributes: {},
    user_attributes: {
      "goal-terms": {
        "to-rub": {
          CutWithMenu: {
            half_true: [0.4, 0.6, 0.6, 0.8],
            rather_true: [0.7, 0.9, 0.9, 1.0],
          },
        },
      },
    },
    objects: {},
    classes: {},
    instances: {},
    edges: [],
  };
}

describe("knowledge-base lookups", () => {
  it("finds stored corners", () => {
    expect(cornersOf(tinyKb(), "goal-terms", "to-rub", "CutWithMenu", "rather_true")).toEqual([
      0.7, 0.9, 0.9, 1.0,
    ]);
  });

  it("returns null for unknown paths", () => {
    const kb = tinyKb();
    expect(cornersOf(kb, "goal-terms", "to-rub", "CutWithMenu", "quite_true")).toBeNull();
    expect(cornersOf(kb, "goal-terms", "to-zap", "CutWithMenu", "half_true")).toBeNull();
    expect(cornersOf(kb, "object-terms", "to-rub", "CutWithMenu", "half_true")).toBeNull();
  });

  it("lists a profile in canonical level order", () => {
    expect(profileOf(tinyKb(), "goal-terms", "to-rub", "CutWithMenu")).toEqual([
      ["half_true", [0.4, 0.6, 0.6, 0.8]],
      ["rather_true", [0.7, 0.9, 0.9, 1.0]],
    ]);
  });
});

describe("session notices", () => {
  const base = {
    id: "s1",
    query: { goal: "rub", object: "", context: [] },
    target_term: null,
    candidates: [],
    rejected: [],
    deltas: [],
  };

  it("mirrors each service state", () => {
    expect(statusNotice({ ...base, status: "open" } as Session)).toBe("session s1 is open");
    expect(statusNotice({ ...base, status: "confirmed" } as Session)).toBe(
      "session s1 is confirmed",
    );
    expect(statusNotice({ ...base, status: "abandoned" } as Session)).toContain("abandoned");
  });
});
