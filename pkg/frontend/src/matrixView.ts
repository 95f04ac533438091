/** Canvas pixel-matrix view: one colored cell per (column, dimension),
 * grey cluster frames, selection/hover overlays, drill and roll-up gestures. */

import { cellColor, FRAME_COLOR, HOVER_COLOR, SELECT_COLOR } from "./colors.js";
import { columnAt } from "./geometry.js";
import { displayColumnToViewPosition, UiState } from "./state.js";
import type { PixelsPayload, ViewState } from "./types.js";

export interface MatrixCallbacks {
  onToggleSelect(viewPosition: number): void;
  onDrill(viewPosition: number): void;
  onRollup(): void;
  onHover(viewPosition: number | null): void;
}

export class MatrixView {
  private readonly ctx: CanvasRenderingContext2D;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly callbacks: MatrixCallbacks,
    private readonly stateOf: () => UiState,
  ) {
    this.ctx = canvas.getContext("2d")!;
    canvas.addEventListener("click", (ev) => {
      const pos = this.viewPositionAt(ev);
      if (pos >= 0) this.callbacks.onToggleSelect(pos);
    });
    canvas.addEventListener("dblclick", (ev) => {
      const pos = this.viewPositionAt(ev);
      if (pos >= 0) this.callbacks.onDrill(pos);
    });
    canvas.addEventListener("mousedown", (ev) => {
      if (ev.shiftKey || ev.ctrlKey || ev.metaKey) {
        ev.preventDefault();
        this.callbacks.onRollup();
      }
    });
    canvas.addEventListener("mousemove", (ev) => {
      this.callbacks.onHover(this.viewPositionAt(ev));
    });
    canvas.addEventListener("mouseleave", () => this.callbacks.onHover(null));
  }

  private viewPositionAt(ev: MouseEvent): number {
    const state = this.stateOf();
    if (!state.view || !state.pixels) return -1;
    const rect = this.canvas.getBoundingClientRect();
    const column = columnAt(state.pixels, ev.clientX - rect.left);
    if (column < 0) return -1;
    return displayColumnToViewPosition(state.view, state.pixels, column);
  }

  render(view: ViewState | null, pixels: PixelsPayload | null, state: UiState): void {
    if (!view || !pixels) {
      this.canvas.width = Math.max(this.canvas.width, 1);
      this.ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
      return;
    }
    const barW = pixels.bar_width_px;
    const cellH = pixels.cell_height_px;
    this.canvas.width = pixels.columns * barW;
    this.canvas.height = pixels.d * cellH;
    for (let column = 0; column < pixels.columns; column++) {
      const classes = pixels.classes[column];
      for (let row = 0; row < pixels.d; row++) {
        this.ctx.fillStyle = cellColor(pixels.palette, classes[row]);
        this.ctx.fillRect(column * barW, row * cellH, barW, cellH);
      }
    }
    this.ctx.strokeStyle = FRAME_COLOR;
    this.ctx.lineWidth = 1;
    for (const [c0, c1] of pixels.frames) {
      this.ctx.strokeRect(
        c0 * barW + 0.5,
        0.5,
        (c1 - c0 + 1) * barW - 1,
        this.canvas.height - 1,
      );
    }
    for (let column = 0; column < pixels.columns; column++) {
      const pos = displayColumnToViewPosition(view, pixels, column);
      if (state.selection.includes(pos)) {
        this.ctx.strokeStyle = SELECT_COLOR;
        this.ctx.lineWidth = 2;
        this.ctx.strokeRect(column * barW + 1, 1, barW - 2, this.canvas.height - 2);
      }
      if (state.hover !== null && state.hover === pos) {
        this.ctx.strokeStyle = HOVER_COLOR;
        this.ctx.lineWidth = 2;
        this.ctx.strokeRect(column * barW + 1, 1, barW - 2, this.canvas.height - 2);
      }
    }
  }
}
