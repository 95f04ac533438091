/** Zoom context bar: time-ordered, level-height rectangles linked to the
 * matrix by interval key; dragging a range requests a time window. */

import { HOVER_COLOR, SELECT_COLOR } from "./colors.js";
import { dragWindow, zoomBarAt } from "./geometry.js";
import { UiState, viewPositionOf } from "./state.js";
import type { ViewState, ZoomBarPayload } from "./types.js";

const FILL = "#4393c3";

export interface ZoomBarCallbacks {
  onHover(viewPosition: number | null): void;
  onWindow(t0: number, t1: number): void;
  onClearWindow(): void;
}

export class ZoomBarView {
  private readonly ctx: CanvasRenderingContext2D;
  private dragStart: number | null = null;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly callbacks: ZoomBarCallbacks,
    private readonly stateOf: () => UiState,
  ) {
    this.ctx = canvas.getContext("2d")!;
    canvas.addEventListener("mousemove", (ev) => {
      const state = this.stateOf();
      if (!state.view || !state.zoom) return;
      const x = this.localX(ev);
      const idx = zoomBarAt(state.zoom.bars, x);
      this.callbacks.onHover(idx < 0 ? null : this.viewPosition(state, idx));
    });
    canvas.addEventListener("mouseleave", () => this.callbacks.onHover(null));
    canvas.addEventListener("mousedown", (ev) => {
      this.dragStart = this.localX(ev);
    });
    canvas.addEventListener("mouseup", (ev) => {
      const state = this.stateOf();
      if (this.dragStart === null || !state.zoom) return;
      const start = this.dragStart;
      this.dragStart = null;
      const end = this.localX(ev);
      if (Math.abs(end - start) < 3) return; // click, not a drag
      const window = dragWindow(state.zoom.bars, start, end);
      if (window) this.callbacks.onWindow(window[0], window[1]);
    });
    canvas.addEventListener("dblclick", () => this.callbacks.onClearWindow());
  }

  private localX(ev: MouseEvent): number {
    return ev.clientX - this.canvas.getBoundingClientRect().left;
  }

  private viewPosition(state: UiState, barIndex: number): number {
    const bar = state.zoom!.bars[barIndex];
    return viewPositionOf(state.view!, { level: bar.level, start: bar.start });
  }

  render(view: ViewState | null, zoom: ZoomBarPayload | null, state: UiState): void {
    if (!view || !zoom) {
      this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
      return;
    }
    this.canvas.width = zoom.width_px;
    this.canvas.height = zoom.height_px;
    this.ctx.fillStyle = "#ffffff";
    this.ctx.fillRect(0, 0, zoom.width_px, zoom.height_px);
    for (const bar of zoom.bars) {
      const pos = viewPositionOf(view, { level: bar.level, start: bar.start });
      if (state.selection.includes(pos)) {
        this.ctx.fillStyle = SELECT_COLOR;
      } else if (state.hover !== null && state.hover === pos) {
        this.ctx.fillStyle = HOVER_COLOR;
      } else {
        this.ctx.fillStyle = FILL;
      }
      this.ctx.fillRect(bar.x, zoom.height_px - bar.h, bar.w, bar.h);
    }
  }
}
