/** Color conventions: server palette for the matrix, set-operation colors for
 * the graph view (intersection orange, disjoint blue). */

import type { GraphPayload } from "./types.js";

export const INTERSECTION_COLOR = "#e08214";
export const DISJOINT_COLOR = "#2166ac";
export const FRAME_COLOR = "#808080";
export const HOVER_COLOR = "#fdbf6f";
export const SELECT_COLOR = "#33a02c";

export function classColor(cls: "intersection" | "disjoint"): string {
  return cls === "intersection" ? INTERSECTION_COLOR : DISJOINT_COLOR;
}

export function cellColor(palette: string[], classId: number): string {
  if (classId < 0 || classId >= palette.length) return "#000000";
  return palette[classId];
}

/** Orange/blue element tallies the graph view will draw for a payload. */
export function drawnClassCounts(payload: GraphPayload): {
  nodes: { intersection: number; disjoint: number };
  edges: { intersection: number; disjoint: number };
} {
  const counts = {
    nodes: { intersection: 0, disjoint: 0 },
    edges: { intersection: 0, disjoint: 0 },
  };
  for (const node of payload.nodes) counts.nodes[node.cls] += 1;
  for (const edge of payload.edges) counts.edges[edge.cls] += 1;
  return counts;
}

/** Cap oversized graphs by presence count, keeping the most persistent part. */
export function capElements(payload: GraphPayload, maxElements: number): {
  payload: GraphPayload;
  capped: boolean;
} {
  const total = payload.nodes.length + payload.edges.length;
  if (total <= maxElements) return { payload, capped: false };
  const nodeBudget = Math.max(1, Math.floor((payload.nodes.length / total) * maxElements));
  const nodes = [...payload.nodes].sort((a, b) => b.count - a.count).slice(0, nodeBudget);
  const kept = new Set(nodes.map((n) => n.id));
  const edges = [...payload.edges]
    .filter((e) => kept.has(e.source) && kept.has(e.target))
    .sort((a, b) => b.count - a.count)
    .slice(0, Math.max(0, maxElements - nodes.length));
  return {
    payload: { ...payload, nodes, edges },
    capped: true,
  };
}
