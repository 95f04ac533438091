/** UI session state and its pure transitions.
 *
 * The server owns every analytic decision; this state only mirrors the last
 * accepted payloads.  A monotone revision counter discards stale responses
 * that were superseded by a newer view mutation.
 */

import type { IntervalKey, PixelsPayload, ViewState, ZoomBarPayload } from "./types.js";

export interface UiState {
  session: string | null;
  view: ViewState | null;
  pixels: PixelsPayload | null;
  zoom: ZoomBarPayload | null;
  /** selected bars as view positions (chronological cut positions) */
  selection: number[];
  /** hovered bar as a view position, linked across matrix and zoom bar */
  hover: number | null;
  error: string | null;
}

export function initialState(): UiState {
  return {
    session: null,
    view: null,
    pixels: null,
    zoom: null,
    selection: [],
    hover: null,
    error: null,
  };
}

export function sameKey(a: IntervalKey, b: IntervalKey): boolean {
  return a.level === b.level && a.start === b.start;
}

/** View position of an interval key inside the current cut; -1 if absent. */
export function viewPositionOf(view: ViewState, key: IntervalKey): number {
  return view.intervals.findIndex((iv) => sameKey(iv, key));
}

/** Map a display column (post-reordering) to its view position. */
export function displayColumnToViewPosition(
  view: ViewState,
  pixels: PixelsPayload,
  column: number,
): number {
  if (column < 0 || column >= pixels.keys.length) return -1;
  return viewPositionOf(view, pixels.keys[column]);
}

/** Accept a new view: any previous pixel/zoom payloads and selection are stale. */
export function applyView(state: UiState, view: ViewState): UiState {
  const keep = state.view !== null && view.revision === state.view.revision;
  return {
    ...state,
    view,
    pixels: keep ? state.pixels : null,
    zoom: keep ? state.zoom : null,
    selection: keep ? state.selection : [],
    hover: null,
    error: null,
  };
}

/** Accept pixels only if they belong to the current revision. */
export function applyPixels(state: UiState, pixels: PixelsPayload): UiState {
  if (!state.view || pixels.revision !== state.view.revision) return state;
  return { ...state, pixels, error: null };
}

export function applyZoom(state: UiState, zoom: ZoomBarPayload): UiState {
  if (!state.view || zoom.revision !== state.view.revision) return state;
  return { ...state, zoom, error: null };
}

/** A rejected mutation leaves visible state unchanged, surfacing the reason. */
export function applyError(state: UiState, reason: string): UiState {
  return { ...state, error: reason };
}

export function toggleSelection(state: UiState, viewPosition: number): UiState {
  if (viewPosition < 0) return state;
  const selection = state.selection.includes(viewPosition)
    ? state.selection.filter((p) => p !== viewPosition)
    : [...state.selection, viewPosition].sort((a, b) => a - b);
  return { ...state, selection };
}

export function setHover(state: UiState, viewPosition: number | null): UiState {
  return { ...state, hover: viewPosition };
}

/** Selection qualifies for roll-up only when it is one contiguous run. */
export function contiguousSelection(selection: number[]): boolean {
  if (selection.length === 0) return false;
  const sorted = [...selection].sort((a, b) => a - b);
  return sorted[sorted.length - 1] - sorted[0] === sorted.length - 1;
}
