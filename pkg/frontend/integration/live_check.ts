/** Contract check against a live service (run with the server up):
 *
 *   graphpix serve --data <root with a desk-scale SBM dataset> --port 8000
 *   npm run check:live [-- http://127.0.0.1:8000]
 *
 * Verifies, using the same client/state/color logic the browser UI runs:
 *   1. the matrix payload carries exactly the server's visible column count,
 *   2. cluster frames appear after a cluster request + cluster ordering,
 *   3. for a two-bar selection the orange/blue element tallies the graph view
 *      would draw equal the server payload's class counts.
 */

declare const process: { argv: string[]; exit(code: number): never };

import { Client } from "../src/api.js";
import { drawnClassCounts } from "../src/colors.js";
import {
  applyPixels,
  applyView,
  initialState,
  toggleSelection,
  UiState,
} from "../src/state.js";

function ok(name: string, passed: boolean, detail: string): boolean {
  console.log(`${passed ? "PASS" : "FAIL"} ${name}: ${detail}`);
  return passed;
}

async function run(base: string): Promise<number> {
  const client = new Client(base);
  const datasets = await client.listDatasets();
  if (datasets.length === 0) {
    console.error("no datasets on the server; create one with `graphpix synth sbm`");
    return 2;
  }
  const dataset = datasets[0];
  let allPassed = true;

  const session = await client.createSession(dataset.id);
  let state: UiState = { ...initialState(), session };
  state = applyView(state, await client.getView(session));
  state = applyPixels(state, await client.getPixels(session));

  const visible = state.view!.visible.length;
  allPassed = ok(
    "matrix-column-count",
    state.pixels !== null && state.pixels.columns === visible,
    `server visible=${visible}, matrix columns=${state.pixels?.columns ?? "none"}`,
  ) && allPassed;

  await client.requestCluster(session, 5);
  state = applyView(state, await client.setOrder(session, "none", "cluster"));
  state = applyPixels(state, await client.getPixels(session));
  allPassed = ok(
    "cluster-frames",
    state.pixels !== null && state.pixels.frames.length > 0,
    `frames=${JSON.stringify(state.pixels?.frames ?? [])}`,
  ) && allPassed;

  state = toggleSelection(state, 0);
  state = toggleSelection(state, 1);
  const payload = await client.getGraph(session, state.selection);
  const drawn = drawnClassCounts(payload);
  const match =
    drawn.nodes.intersection === payload.counts.nodes.intersection &&
    drawn.nodes.disjoint === payload.counts.nodes.disjoint &&
    drawn.edges.intersection === payload.counts.edges.intersection &&
    drawn.edges.disjoint === payload.counts.edges.disjoint;
  allPassed = ok(
    "graph-class-counts",
    match,
    `drawn=${JSON.stringify(drawn)} server=${JSON.stringify(payload.counts)}`,
  ) && allPassed;

  return allPassed ? 0 : 1;
}

const base = process.argv[2] ?? "http://127.0.0.1:8000";
run(base)
  .then((code) => process.exit(code))
  .catch((err) => {
    console.error(String(err));
    process.exit(2);
  });
