/** Node-link view of the selected bars at the precomputed global layout:
 * intersection elements orange, disjoint blue, labels past a zoom threshold. */

import { capElements, classColor } from "./colors.js";
import { identityTransform, panBy, toScreen, Transform, zoomAt } from "./geometry.js";
import type { GraphPayload } from "./types.js";

const LABEL_ZOOM_THRESHOLD = 4.0;
const MAX_ELEMENTS = 4000;

export class GraphView {
  private readonly ctx: CanvasRenderingContext2D;
  private transform: Transform = identityTransform();
  private payload: GraphPayload | null = null;
  private capped = false;
  private panFrom: [number, number] | null = null;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly banner: HTMLElement,
  ) {
    this.ctx = canvas.getContext("2d")!;
    canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      const rect = canvas.getBoundingClientRect();
      const factor = ev.deltaY < 0 ? 1.2 : 1 / 1.2;
      this.transform = zoomAt(
        this.transform,
        ev.clientX - rect.left,
        ev.clientY - rect.top,
        factor,
      );
      this.draw();
    });
    canvas.addEventListener("mousedown", (ev) => {
      this.panFrom = [ev.clientX, ev.clientY];
    });
    canvas.addEventListener("mousemove", (ev) => {
      if (!this.panFrom) return;
      this.transform = panBy(this.transform, ev.clientX - this.panFrom[0], ev.clientY - this.panFrom[1]);
      this.panFrom = [ev.clientX, ev.clientY];
      this.draw();
    });
    const stopPan = () => {
      this.panFrom = null;
    };
    canvas.addEventListener("mouseup", stopPan);
    canvas.addEventListener("mouseleave", stopPan);
  }

  show(payload: GraphPayload | null): void {
    if (payload) {
      const { payload: capped, capped: wasCapped } = capElements(payload, MAX_ELEMENTS);
      this.payload = capped;
      this.capped = wasCapped;
    } else {
      this.payload = null;
      this.capped = false;
    }
    this.transform = identityTransform();
    this.draw();
  }

  private draw(): void {
    const w = this.canvas.width;
    const h = this.canvas.height;
    this.ctx.clearRect(0, 0, w, h);
    this.banner.textContent = this.capped
      ? "large graph: showing the most persistent elements only"
      : "";
    if (!this.payload) return;
    const margin = 16;
    const scaleX = w - 2 * margin;
    const scaleY = h - 2 * margin;
    const place = (nx: number, ny: number): [number, number] =>
      toScreen(this.transform, margin + nx * scaleX, margin + ny * scaleY);

    const positions = new Map<number, [number, number]>();
    for (const node of this.payload.nodes) {
      positions.set(node.id, place(node.x, node.y));
    }
    this.ctx.lineWidth = 1;
    for (const edge of this.payload.edges) {
      const a = positions.get(edge.source);
      const b = positions.get(edge.target);
      if (!a || !b) continue;
      this.ctx.strokeStyle = classColor(edge.cls);
      this.ctx.beginPath();
      this.ctx.moveTo(a[0], a[1]);
      this.ctx.lineTo(b[0], b[1]);
      this.ctx.stroke();
    }
    const radius = Math.max(2, Math.min(6, 2 * this.transform.scale));
    for (const node of this.payload.nodes) {
      const [x, y] = positions.get(node.id)!;
      this.ctx.fillStyle = classColor(node.cls);
      this.ctx.beginPath();
      this.ctx.arc(x, y, radius, 0, 2 * Math.PI);
      this.ctx.fill();
    }
    if (this.transform.scale >= LABEL_ZOOM_THRESHOLD) {
      this.ctx.fillStyle = "#222222";
      this.ctx.font = "10px sans-serif";
      for (const node of this.payload.nodes) {
        const [x, y] = positions.get(node.id)!;
        this.ctx.fillText(node.label ?? String(node.id), x + radius + 2, y + 3);
      }
    }
  }
}
