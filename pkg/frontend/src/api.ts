/** Typed client for the service; every analytics decision round-trips here. */

import type {
  ClusterPayload,
  DatasetInfo,
  GraphPayload,
  IntervalKey,
  PixelsPayload,
  ViewState,
  ZoomBarPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: string) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let detail = `${response.status}`;
      try {
        const body = await response.json();
        if (body && typeof body.detail === "string") detail = body.detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listDatasets(): Promise<DatasetInfo[]> {
    return this.request("/datasets");
  }

  async createSession(dataset: string, screenWidthPx?: number): Promise<string> {
    const body = await this.post<{ session: string }>("/sessions", {
      dataset,
      screen_width_px: screenWidthPx,
    });
    return body.session;
  }

  getView(session: string): Promise<ViewState> {
    return this.request(`/sessions/${session}/view`);
  }

  drill(session: string, bar: number): Promise<ViewState> {
    return this.post(`/sessions/${session}/drill`, { bar });
  }

  rollup(session: string, bars: number[]): Promise<ViewState> {
    return this.post(`/sessions/${session}/rollup`, { bars });
  }

  setWindow(session: string, t0: number | null, t1: number | null): Promise<ViewState> {
    return this.post(`/sessions/${session}/window`, { t0, t1 });
  }

  setOrder(
    session: string,
    rowStat: string,
    colMode: string,
    query?: IntervalKey,
  ): Promise<ViewState> {
    return this.post(`/sessions/${session}/order`, {
      row_stat: rowStat,
      col_mode: colMode,
      query: query ?? null,
    });
  }

  setMethod(session: string, method: string): Promise<ViewState> {
    return this.post(`/sessions/${session}/method`, { method });
  }

  requestCluster(session: string, minClusterSize: number): Promise<ClusterPayload> {
    return this.post(`/sessions/${session}/cluster`, { min_cluster_size: minClusterSize });
  }

  getPixels(session: string): Promise<PixelsPayload> {
    return this.request(`/sessions/${session}/pixels`, {
      headers: { accept: "application/json" },
    });
  }

  getZoomBar(session: string): Promise<ZoomBarPayload> {
    return this.request(`/sessions/${session}/zoombar`, {
      headers: { accept: "application/json" },
    });
  }

  getGraph(session: string, bars: number[]): Promise<GraphPayload> {
    return this.request(`/sessions/${session}/graph?bars=${bars.join(",")}`);
  }
}
