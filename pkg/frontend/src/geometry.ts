/** Hit-testing and layout math shared by the canvas views. */

import type { PixelsPayload, ZoomBarRow } from "./types.js";

/** Display column under an x pixel coordinate; -1 outside the matrix. */
export function columnAt(pixels: PixelsPayload, x: number): number {
  if (x < 0 || x >= pixels.columns * pixels.bar_width_px) return -1;
  return Math.floor(x / pixels.bar_width_px);
}

/** Zoom-bar rectangle index under an x coordinate; -1 outside. */
export function zoomBarAt(bars: ZoomBarRow[], x: number): number {
  for (let i = 0; i < bars.length; i++) {
    if (x >= bars[i].x && x < bars[i].x + bars[i].w) return i;
  }
  return -1;
}

/** Time window [t0, t1) covered by a drag across zoom rectangles. */
export function dragWindow(
  bars: ZoomBarRow[],
  xStart: number,
  xEnd: number,
): [number, number] | null {
  const lo = Math.min(xStart, xEnd);
  const hi = Math.max(xStart, xEnd);
  const hit = bars.filter((b) => b.x + b.w > lo && b.x <= hi);
  if (hit.length === 0) return null;
  return [hit[0].t0, hit[hit.length - 1].t1];
}

export interface Transform {
  scale: number;
  tx: number;
  ty: number;
}

export function identityTransform(): Transform {
  return { scale: 1, tx: 0, ty: 0 };
}

/** Zoom about a fixed screen point, clamped to a sane scale range. */
export function zoomAt(t: Transform, px: number, py: number, factor: number): Transform {
  const scale = Math.min(40, Math.max(0.2, t.scale * factor));
  const applied = scale / t.scale;
  return {
    scale,
    tx: px - (px - t.tx) * applied,
    ty: py - (py - t.ty) * applied,
  };
}

export function panBy(t: Transform, dx: number, dy: number): Transform {
  return { ...t, tx: t.tx + dx, ty: t.ty + dy };
}

export function toScreen(t: Transform, x: number, y: number): [number, number] {
  return [x * t.scale + t.tx, y * t.scale + t.ty];
}
