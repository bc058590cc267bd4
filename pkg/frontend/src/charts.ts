/**
 * Markup builders for the views: trapezoid sketches, per-level centroid
 * bars, candidate cards, similarity and partition panels.  Everything here
 * returns plain strings, so the builders run (and are tested) without a
 * browser; the DOM layer just injects the results and wires events.
 */

import {
  Candidate,
  Corners,
  LevelKey,
  PartitionResult,
  SimilarityReport,
  evaluateTrapezoid,
  formatCentroid,
  formatScore,
  formatSimilarity,
  levelLabel,
  orderedLevels,
  similarityRatioLine,
} from "./model.js";

export interface SketchOptions {
  width?: number;
  height?: number;
  /** Previous corners, drawn dashed behind the current shape. */
  previous?: Corners | null;
  label?: string;
}

const SKETCH_WIDTH = 260;
const SKETCH_HEIGHT = 120;
const PAD = 14;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** The six logical vertices of a trapezoid plotted over [0, 1]:
 * baseline to a, rise to b, plateau to c, fall to d, baseline to 1. */
export function trapezoidPoints(corners: Corners): Array<[number, number]> {
  const [a, b, c, d] = corners;
  return [
    [0, 0],
    [a, 0],
    [b, 1],
    [c, 1],
    [d, 0],
    [1, 0],
  ];
}

/** Map a (x, mu) pair into pixel space for the sketch viewport. */
export function mapPoint(
  x: number,
  mu: number,
  width: number = SKETCH_WIDTH,
  height: number = SKETCH_HEIGHT,
): [number, number] {
  const px = PAD + x * (width - 2 * PAD);
  const py = height - PAD - mu * (height - 2 * PAD);
  return [Number(px.toFixed(1)), Number(py.toFixed(1))];
}

function pointList(points: Array<[number, number]>, width: number, height: number): string {
  return points
    .map(([x, mu]) => mapPoint(x, mu, width, height).join(","))
    .join(" ");
}

/**
 * An SVG sketch of one membership function: filled piecewise-linear shape
 * with all four corners marked.  When `previous` is given, the old shape is
 * drawn dashed behind the new one so a learning step is visible.
 */
export function trapezoidSketch(corners: Corners, options: SketchOptions = {}): string {
  const width = options.width ?? SKETCH_WIDTH;
  const height = options.height ?? SKETCH_HEIGHT;
  const outline = pointList(trapezoidPoints(corners), width, height);
  const [x0, y0] = mapPoint(0, 0, width, height);
  const [x1] = mapPoint(1, 0, width, height);
  const [, yTop] = mapPoint(0, 1, width, height);
  const parts: string[] = [
    `<svg class="mf-sketch" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" role="img">`,
    `<line class="mf-axis" x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"></line>`,
    `<line class="mf-axis" x1="${x0}" y1="${y0}" x2="${x0}" y2="${yTop}"></line>`,
  ];
  if (options.previous) {
    parts.push(
      `<polyline class="mf-previous" fill="none" points="${pointList(
        trapezoidPoints(options.previous),
        width,
        height,
      )}"></polyline>`,
    );
  }
  parts.push(`<polygon class="mf-area" points="${outline}"></polygon>`);
  parts.push(`<polyline class="mf-line" fill="none" points="${outline}"></polyline>`);
  corners.forEach((corner, index) => {
    const mu = evaluateTrapezoid(corners, corner);
    const [cx, cy] = mapPoint(corner, mu, width, height);
    parts.push(
      `<circle class="mf-corner" data-corner="${index}" data-x="${corner}" ` +
        `cx="${cx}" cy="${cy}" r="3"></circle>`,
    );
  });
  if (options.label) {
    parts.push(
      `<text class="mf-label" x="${x0}" y="${yTop - 2}">${escapeHtml(options.label)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

/** Hover read-out for a sketch, e.g. "μ(0.50) = 0.500". */
export function hoverReadout(corners: Corners, x: number): string {
  const clamped = Math.min(1, Math.max(0, x));
  return `μ(${clamped.toFixed(2)}) = ${evaluateTrapezoid(corners, clamped).toFixed(3)}`;
}

/** Invert mapPoint's x-axis for pointer events over a sketch. */
export function pixelToX(px: number, width: number = SKETCH_WIDTH): number {
  return Math.min(1, Math.max(0, (px - PAD) / (width - 2 * PAD)));
}

export interface BarsOptions {
  width?: number;
  rowHeight?: number;
}

/** Horizontal bars, one per interpretation level present, in canonical
 * order; bar length is proportional to the centroid value in [0, 1]. */
export function centroidBars(
  centroids: Record<string, number>,
  options: BarsOptions = {},
): string {
  const width = options.width ?? 220;
  const rowHeight = options.rowHeight ?? 18;
  const labelWidth = 84;
  const barSpan = width - labelWidth - 44;
  const rows = orderedLevels(centroids);
  const height = Math.max(rows.length * rowHeight, rowHeight);
  const parts: string[] = [
    `<svg class="centroid-bars" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" role="img">`,
  ];
  rows.forEach(([key, value], index) => {
    const y = index * rowHeight;
    const length = Math.max(0, Math.min(1, value)) * barSpan;
    parts.push(
      `<text class="bar-label" x="0" y="${y + rowHeight - 5}">${escapeHtml(levelLabel(key))}</text>`,
      `<rect class="bar" data-level="${key}" x="${labelWidth}" y="${y + 3}" ` +
        `width="${length.toFixed(1)}" height="${rowHeight - 7}"></rect>`,
      `<text class="bar-value" x="${labelWidth + barSpan + 4}" y="${y + rowHeight - 5}">` +
        `${formatCentroid(value)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

/**
 * One ranked interpretation: name, score, dominant level, transfer note,
 * per-level centroid bars, the stored trapezoid for the scored level, and
 * confirm/reject buttons (wired by the DOM layer through data attributes).
 */
export function candidateCardMarkup(
  candidate: Candidate,
  corners: Corners | null,
  options: { previous?: Corners | null; disabled?: boolean } = {},
): string {
  const name = escapeHtml(candidate.procedure);
  const via =
    candidate.via !== null && candidate.transfer_similarity !== null
      ? `<p class="via">transferred from ${escapeHtml(candidate.term)} via ` +
        `${escapeHtml(candidate.via)} (weight ${formatScore(candidate.transfer_similarity)})</p>`
      : "";
  const sketch = corners
    ? trapezoidSketch(corners, {
        previous: options.previous ?? null,
        label: `${escapeHtml(candidate.term)} · ${levelLabel(candidate.level)}`,
      })
    : `<p class="via">no stored shape for ${name} yet</p>`;
  const disabled = options.disabled ? " disabled" : "";
  return (
    `<article class="card" data-procedure="${name}">` +
    `<header><h3>${name}</h3>` +
    `<span class="score">score=${formatScore(candidate.score)}</span>` +
    `<span class="level">${levelLabel(candidate.level)}</span></header>` +
    via +
    `<div class="bars">${centroidBars(candidate.centroids)}</div>` +
    `<div class="sketch" data-corners="${corners ? corners.join(",") : ""}">${sketch}</div>` +
    `<footer>` +
    `<button data-action="confirm" data-candidate="${name}"${disabled}>confirm</button>` +
    `<button data-action="reject" data-candidate="${name}"${disabled}>reject</button>` +
    `</footer>` +
    `</article>`
  );
}

/** The similarity explorer panel: headline degree, CLI-style evidence line,
 * and the per-term defuzzified tables the ratio was built from. */
export function similarityMarkup(report: SimilarityReport): string {
  const tables = [report.a, report.b]
    .map((term) => {
      const byProc = report.centroids[term] ?? {};
      const rows = Object.keys(byProc)
        .sort()
        .map((proc) => {
          const levels = orderedLevels(byProc[proc] ?? {});
          const cells = levels
            .map(
              ([key, value]) =>
                `<td data-level="${key}">${levelLabel(key)}: ${formatCentroid(value)}</td>`,
            )
            .join("");
          return `<tr><th>${escapeHtml(proc)}</th>${cells}</tr>`;
        })
        .join("");
      return `<table class="centroid-table" data-term="${escapeHtml(term)}">` +
        `<caption>${escapeHtml(term)}</caption>${rows}</table>`;
    })
    .join("");
  return (
    `<div class="similarity-result">` +
    `<p class="headline">similarity degree: <strong>${formatSimilarity(report.ratio)}</strong></p>` +
    `<p class="ratio">ratio: ${similarityRatioLine(report)}</p>` +
    tables +
    `</div>`
  );
}

/** Partition groups at one threshold, formatted as a list. */
export function partitionMarkup(result: PartitionResult): string {
  const groups = result.groups
    .map(
      (group, index) =>
        `<li class="group" data-group="${index}">{ ${group.map(escapeHtml).join(", ")} }</li>`,
    )
    .join("");
  return (
    `<div class="partition-result">` +
    `<p>θ = ${result.theta.toFixed(2)} → ${result.groups.length} group(s)</p>` +
    `<ol class="groups">${groups}</ol>` +
    `</div>`
  );
}

/** One knowledge-base browser node: a term with a sketch per procedure and
 * level, shown inside a collapsible block. */
export function kbTermMarkup(
  attribute: string,
  term: string,
  profiles: Array<[string, Array<[LevelKey, Corners]>]>,
): string {
  const body = profiles
    .map(([procedure, levels]) => {
      const sketches = levels
        .map(([key, corners]) =>
          `<figure class="kb-mf" data-level="${key}">` +
          trapezoidSketch(corners, { label: `${levelLabel(key)} ${corners.join(", ")}` }) +
          `</figure>`,
        )
        .join("");
      return `<div class="kb-procedure"><h4>${escapeHtml(procedure)}</h4>${sketches}</div>`;
    })
    .join("");
  return (
    `<details class="kb-term" data-term="${escapeHtml(term)}">` +
    `<summary>${escapeHtml(term)} <small>(${escapeHtml(attribute)})</small></summary>` +
    body +
    `</details>`
  );
}
