/** Payload shapes of the HTTP API (mirrors the server's response models). */

export interface IntervalKey {
  level: number;
  start: number;
}

export interface DatasetInfo {
  id: string;
  T: number;
  n_nodes: number;
  n_edges_total: number;
  lmax: number;
  supergraphs: number;
  methods: string[];
}

export interface OrderingState {
  row_stat: string;
  col_mode: string;
  query: IntervalKey | null;
}

export interface ViewState {
  dataset: string;
  T: number;
  lmax: number;
  cap: number;
  method: string;
  methods: string[];
  intervals: IntervalKey[];
  visible: number[];
  window: [number, number] | null;
  ordering: OrderingState;
  revision: number;
}

export interface PixelsPayload {
  columns: number;
  d: number;
  classes: number[][];
  palette: string[];
  keys: IntervalKey[];
  bar_width_px: number;
  cell_height_px: number;
  width_px: number;
  height_px: number;
  domain_max: number;
  frames: [number, number][];
  revision: number;
}

export interface ZoomBarRow {
  level: number;
  start: number;
  span: number;
  t0: number;
  t1: number;
  x: number;
  w: number;
  h: number;
}

export interface ZoomBarPayload {
  bars: ZoomBarRow[];
  width_px: number;
  height_px: number;
  lmax: number;
  revision: number;
}

export interface GraphNodePayload {
  id: number;
  cls: "intersection" | "disjoint";
  count: number;
  x: number;
  y: number;
  label: string | null;
}

export interface GraphEdgePayload {
  source: number;
  target: number;
  cls: "intersection" | "disjoint";
  count: number;
  sign: number | null;
}

export interface GraphPayload {
  nodes: GraphNodePayload[];
  edges: GraphEdgePayload[];
  counts: {
    nodes: { intersection: number; disjoint: number };
    edges: { intersection: number; disjoint: number };
  };
  bars: number[];
}

export interface ClusterPayload {
  labels: number[];
  n_clusters: number;
  stabilities: Record<string, number>;
  params: Record<string, unknown>;
}
