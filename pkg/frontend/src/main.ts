/** Wires the toolbar, zoom context bar, pixel matrix, and graph view to the
 * service.  All analytics stay server-side; at most one mutation is in
 * flight, and stale responses are dropped via the view revision. */

import { ApiError, Client } from "./api.js";
import { GraphView } from "./graphView.js";
import { MatrixView } from "./matrixView.js";
import {
  applyError,
  applyPixels,
  applyView,
  applyZoom,
  contiguousSelection,
  initialState,
  setHover,
  toggleSelection,
  UiState,
} from "./state.js";
import { Toolbar } from "./toolbar.js";
import type { ViewState } from "./types.js";
import { ZoomBarView } from "./zoombarView.js";

const client = new Client("");
let state: UiState = initialState();
let mutationInFlight = false;

const toolbar = new Toolbar(document.getElementById("toolbar")!, {
  onDataset: (id) => void openDataset(id),
  onMethod: (method) => mutate((s) => client.setMethod(s, method)),
  onRowStat: (stat) =>
    mutate((s) => client.setOrder(s, stat, currentColMode(), currentQuery())),
  onTimeOrder: () => mutate((s) => client.setOrder(s, currentRowStat(), "time")),
  onCluster: () => void clusterAndOrder(),
  onSimilarity: () => void similarityOrder(),
  onDrillSelected: () => {
    if (state.selection.length === 1) void doDrill(state.selection[0]);
    else toolbar.showStatus("select exactly one bar to drill", true);
  },
  onRollupSelected: () => void doRollup(),
  onShowGraph: () => void showGraph(),
});

const matrix = new MatrixView(
  document.getElementById("matrix") as HTMLCanvasElement,
  {
    onToggleSelect: (pos) => {
      state = toggleSelection(state, pos);
      renderAll();
    },
    onDrill: (pos) => void doDrill(pos),
    onRollup: () => void doRollup(),
    onHover: (pos) => {
      state = setHover(state, pos);
      renderAll();
    },
  },
  () => state,
);

const zoombar = new ZoomBarView(
  document.getElementById("zoombar") as HTMLCanvasElement,
  {
    onHover: (pos) => {
      state = setHover(state, pos);
      renderAll();
    },
    onWindow: (t0, t1) => mutate((s) => client.setWindow(s, t0, t1)),
    onClearWindow: () => mutate((s) => client.setWindow(s, null, null)),
  },
  () => state,
);

const graph = new GraphView(
  document.getElementById("graph") as HTMLCanvasElement,
  document.getElementById("graph-banner")!,
);

function currentRowStat(): string {
  return state.view?.ordering.row_stat ?? "none";
}

function currentColMode(): string {
  return state.view?.ordering.col_mode ?? "time";
}

function currentQuery() {
  return state.view?.ordering.query ?? undefined;
}

async function openDataset(id: string): Promise<void> {
  try {
    const session = await client.createSession(id);
    state = { ...initialState(), session };
    const view = await client.getView(session);
    state = applyView(state, view);
    await refreshPayloads();
  } catch (err) {
    surface(err);
  }
  renderAll();
}

async function mutate(op: (session: string) => Promise<ViewState>): Promise<void> {
  if (!state.session || mutationInFlight) return;
  mutationInFlight = true;
  try {
    const view = await op(state.session);
    state = applyView(state, view);
    await refreshPayloads();
  } catch (err) {
    surface(err);
  } finally {
    mutationInFlight = false;
    renderAll();
  }
}

async function refreshPayloads(): Promise<void> {
  if (!state.session) return;
  const [pixels, zoom] = await Promise.all([
    client.getPixels(state.session),
    client.getZoomBar(state.session),
  ]);
  state = applyZoom(applyPixels(state, pixels), zoom);
}

async function doDrill(pos: number): Promise<void> {
  await mutate((s) => client.drill(s, pos));
}

async function doRollup(): Promise<void> {
  if (!contiguousSelection(state.selection)) {
    toolbar.showStatus("roll-up needs a contiguous selection", true);
    return;
  }
  await mutate((s) => client.rollup(s, state.selection));
}

async function clusterAndOrder(): Promise<void> {
  if (!state.session) return;
  try {
    await client.requestCluster(state.session, 5);
    await mutate((s) => client.setOrder(s, currentRowStat(), "cluster"));
  } catch (err) {
    surface(err);
    renderAll();
  }
}

async function similarityOrder(): Promise<void> {
  if (state.selection.length !== 1 || !state.view) {
    toolbar.showStatus("select exactly one bar as the similarity query", true);
    return;
  }
  const query = state.view.intervals[state.selection[0]];
  await mutate((s) => client.setOrder(s, currentRowStat(), "similarity", query));
}

async function showGraph(): Promise<void> {
  if (!state.session || state.selection.length === 0) {
    toolbar.showStatus("select at least one bar for the graph view", true);
    return;
  }
  try {
    const payload = await client.getGraph(state.session, state.selection);
    graph.show(payload);
    const c = payload.counts;
    toolbar.showStatus(
      `graph: ${c.nodes.intersection}+${c.nodes.disjoint} nodes, ` +
        `${c.edges.intersection}+${c.edges.disjoint} edges (intersection+disjoint)`,
      false,
    );
  } catch (err) {
    surface(err);
  }
  renderAll();
}

function surface(err: unknown): void {
  const reason = err instanceof ApiError ? err.detail : String(err);
  state = applyError(state, reason);
}

function renderAll(): void {
  matrix.render(state.view, state.pixels, state);
  zoombar.render(state.view, state.zoom, state);
  if (state.view) toolbar.syncView(state.view);
  if (state.error) toolbar.showStatus(state.error, true);
  else if (state.view) {
    toolbar.showStatus(
      `${state.view.intervals.length} bars, revision ${state.view.revision}`,
      false,
    );
  }
}

async function boot(): Promise<void> {
  try {
    const datasets = await client.listDatasets();
    toolbar.setDatasets(datasets);
    if (datasets.length > 0) await openDataset(datasets[0].id);
  } catch (err) {
    surface(err);
    renderAll();
  }
}

void boot();
