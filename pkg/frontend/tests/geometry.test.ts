import { describe, expect, it } from "vitest";

import {
  columnAt,
  dragWindow,
  identityTransform,
  panBy,
  toScreen,
  zoomAt,
  zoomBarAt,
} from "../src/geometry.js";
import type { PixelsPayload, ZoomBarRow } from "../src/types.js";

const pixels = { columns: 4, bar_width_px: 10 } as PixelsPayload;

const bars: ZoomBarRow[] = [
  { level: 1, start: 0, span: 2, t0: 0, t1: 2, x: 0, w: 20, h: 24 },
  { level: 1, start: 1, span: 2, t0: 2, t1: 4, x: 20, w: 20, h: 24 },
  { level: 0, start: 4, span: 1, t0: 4, t1: 5, x: 40, w: 20, h: 12 },
];

describe("matrix hit testing", () => {
  it("maps x to display columns", () => {
    expect(columnAt(pixels, 0)).toBe(0);
    expect(columnAt(pixels, 9.5)).toBe(0);
    expect(columnAt(pixels, 10)).toBe(1);
    expect(columnAt(pixels, 39)).toBe(3);
  });

  it("returns -1 outside the matrix", () => {
    expect(columnAt(pixels, -1)).toBe(-1);
    expect(columnAt(pixels, 40)).toBe(-1);
  });
});

describe("zoom bar hit testing", () => {
  it("finds the rectangle under the cursor", () => {
    expect(zoomBarAt(bars, 5)).toBe(0);
    expect(zoomBarAt(bars, 20)).toBe(1);
    expect(zoomBarAt(bars, 59)).toBe(2);
    expect(zoomBarAt(bars, 60)).toBe(-1);
  });

  it("drag spans map to time windows", () => {
    expect(dragWindow(bars, 5, 25)).toEqual([0, 4]);
    expect(dragWindow(bars, 45, 41)).toEqual([4, 5]);
    expect(dragWindow(bars, 25, 5)).toEqual([0, 4]);
    expect(dragWindow(bars, 100, 120)).toBeNull();
  });
});

describe("graph transform", () => {
  it("zoom about a point keeps that point fixed", () => {
    const t0 = identityTransform();
    const t1 = zoomAt(t0, 100, 50, 2);
    const before = toScreen(t0, 100, 50);
    const after = toScreen(t1, 100, 50);
    expect(after[0]).toBeCloseTo(before[0], 9);
    expect(after[1]).toBeCloseTo(before[1], 9);
    expect(t1.scale).toBe(2);
  });

  it("scale clamps to the allowed range", () => {
    let t = identityTransform();
    for (let i = 0; i < 50; i++) t = zoomAt(t, 0, 0, 2);
    expect(t.scale).toBeLessThanOrEqual(40);
    for (let i = 0; i < 80; i++) t = zoomAt(t, 0, 0, 0.5);
    expect(t.scale).toBeGreaterThanOrEqual(0.2);
  });

  it("pan shifts screen coordinates", () => {
    const t = panBy(identityTransform(), 7, -3);
    expect(toScreen(t, 10, 10)).toEqual([17, 7]);
  });
});
