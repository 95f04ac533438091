/** Toolbar: dataset and method pickers, row-stat picker, cluster/similarity
 * actions, drill/roll buttons, and the status/error line. */

import type { DatasetInfo, ViewState } from "./types.js";

const ROW_STATS = ["none", "median", "mean", "min", "max", "variance", "std"];

export interface ToolbarCallbacks {
  onDataset(id: string): void;
  onMethod(method: string): void;
  onRowStat(stat: string): void;
  onTimeOrder(): void;
  onCluster(): void;
  onSimilarity(): void;
  onDrillSelected(): void;
  onRollupSelected(): void;
  onShowGraph(): void;
}

export class Toolbar {
  private readonly datasetSelect: HTMLSelectElement;
  private readonly methodSelect: HTMLSelectElement;
  private readonly rowStatSelect: HTMLSelectElement;
  private readonly status: HTMLElement;

  constructor(root: HTMLElement, callbacks: ToolbarCallbacks) {
    root.innerHTML = "";
    this.datasetSelect = this.addSelect(root, "dataset", [], (v) => callbacks.onDataset(v));
    this.methodSelect = this.addSelect(root, "method", [], (v) => callbacks.onMethod(v));
    this.rowStatSelect = this.addSelect(root, "rows", ROW_STATS, (v) => callbacks.onRowStat(v));
    this.addButton(root, "time order", callbacks.onTimeOrder);
    this.addButton(root, "cluster", callbacks.onCluster);
    this.addButton(root, "similarity", callbacks.onSimilarity);
    this.addButton(root, "drill", callbacks.onDrillSelected);
    this.addButton(root, "roll-up", callbacks.onRollupSelected);
    this.addButton(root, "graph view", callbacks.onShowGraph);
    this.status = document.createElement("span");
    this.status.className = "status";
    root.appendChild(this.status);
  }

  private addSelect(
    root: HTMLElement,
    label: string,
    options: string[],
    onChange: (value: string) => void,
  ): HTMLSelectElement {
    const wrap = document.createElement("label");
    wrap.textContent = `${label}: `;
    const select = document.createElement("select");
    for (const option of options) {
      const el = document.createElement("option");
      el.value = option;
      el.textContent = option;
      select.appendChild(el);
    }
    select.addEventListener("change", () => onChange(select.value));
    wrap.appendChild(select);
    root.appendChild(wrap);
    return select;
  }

  private addButton(root: HTMLElement, label: string, onClick: () => void): void {
    const button = document.createElement("button");
    button.textContent = label;
    button.addEventListener("click", onClick);
    root.appendChild(button);
  }

  setDatasets(datasets: DatasetInfo[]): void {
    this.datasetSelect.innerHTML = "";
    for (const ds of datasets) {
      const el = document.createElement("option");
      el.value = ds.id;
      el.textContent = `${ds.id} (T=${ds.T})`;
      this.datasetSelect.appendChild(el);
    }
  }

  syncView(view: ViewState): void {
    if (this.methodSelect.options.length !== view.methods.length) {
      this.methodSelect.innerHTML = "";
      for (const method of view.methods) {
        const el = document.createElement("option");
        el.value = method;
        el.textContent = method;
        this.methodSelect.appendChild(el);
      }
    }
    this.methodSelect.value = view.method;
    this.rowStatSelect.value = view.ordering.row_stat;
  }

  showStatus(text: string, isError: boolean): void {
    this.status.textContent = text;
    this.status.classList.toggle("error", isError);
  }
}
