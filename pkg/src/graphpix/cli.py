"""Command-line client around the core package.

Subcommands prepare dataset directories (`ingest`, `synth`), precompute
embeddings (`embed`), rasterize a default view (`render`), and run the HTTP
service (`serve`).  The service reads the same dataset directories.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from graphpix.dyngraph import (
    SliceConfig,
    build_hierarchy,
    export_edge_list,
    ingest_edge_list,
    save_hierarchy,
)
from graphpix.embed import EmbedParams, export_csv, fgsd_matrix, gl2vec, graph2vec, save_matrix
from graphpix.synth import StateSpec, sbm_dynamic, state_config, write_dataset, ws_dynamic


def _cmd_ingest(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    config = SliceConfig(mode=args.mode, bucket_seconds=args.bucket)
    with open(args.edges) as f:
        graph = ingest_edge_list(f, config)
    with open(out / "edges.csv", "w") as f:
        export_edge_list(graph, f)
    with open(out / "meta.json", "w") as f:
        json.dump({"mode": args.mode, "bucket_seconds": args.bucket}, f, indent=2)
    hierarchy = build_hierarchy(graph)
    save_hierarchy(hierarchy, out / "hierarchy.bin")
    print(f"ingested T={graph.T} steps, {len(graph.node_universe)} nodes, "
          f"{hierarchy.total_count} supergraphs -> {out}")
    return 0


def _parse_states(text: str, jitter: int, p_in: float, p_out: float) -> list[StateSpec]:
    """`BLOCKSxNODES_PER_BLOCKxSTEPS` triples, comma separated."""
    states = []
    for part in text.split(","):
        fields = part.lower().split("x")
        if len(fields) != 3:
            raise argparse.ArgumentTypeError(
                f"state {part!r} must be blocks x nodes_per_block x steps"
            )
        blocks, npb, count = (int(x) for x in fields)
        states.append(
            StateSpec(
                n_blocks=blocks,
                nodes_per_block=npb,
                count=count,
                p_in=p_in,
                p_out=p_out,
                node_jitter=jitter,
            )
        )
    return states


def _cmd_synth_sbm(args: argparse.Namespace) -> int:
    states = _parse_states(args.states, args.jitter, args.p_in, args.p_out)
    graph, labels = sbm_dynamic(states, seed=args.seed, shuffle=not args.no_shuffle)
    write_dataset(args.out, graph, labels=labels, config=state_config(states))
    print(f"sbm dataset T={graph.T} -> {args.out}")
    return 0


def _cmd_synth_ws(args: argparse.Namespace) -> int:
    graph = ws_dynamic(
        T=args.steps,
        n=args.nodes,
        k_min=args.k_min,
        k_max=args.k_max,
        p_rewire=args.p_rewire,
        seed=args.seed,
    )
    config = {
        "generator": "watts_strogatz",
        "n": args.nodes,
        "k_min": args.k_min,
        "k_max": args.k_max,
        "p_rewire": args.p_rewire,
        "seed": args.seed,
    }
    write_dataset(args.out, graph, config=config)
    print(f"ws dataset T={graph.T} -> {args.out}")
    return 0


def _load_graph(dataset_dir: Path):
    meta = {}
    meta_file = dataset_dir / "meta.json"
    if meta_file.exists():
        meta = json.loads(meta_file.read_text())
    config = SliceConfig(
        mode=meta.get("mode", "indexed"), bucket_seconds=meta.get("bucket_seconds", 3600.0)
    )
    with open(dataset_dir / "edges.csv") as f:
        return ingest_edge_list(f, config)


def _cmd_embed(args: argparse.Namespace) -> int:
    dataset_dir = Path(args.dataset)
    graph = _load_graph(dataset_dir)
    hierarchy = build_hierarchy(graph)
    levels = None
    if args.levels:
        levels = [int(x) for x in args.levels.split(",")]
    if args.method == "graph2vec" or args.method == "gl2vec":
        params = EmbedParams(
            d=args.dims,
            epochs=args.epochs,
            lr=args.lr,
            wl=args.wl,
            negatives=args.negatives,
            seed=args.seed,
            parallel=args.parallel,
        )
        fn = graph2vec if args.method == "graph2vec" else gl2vec
        matrix = fn(hierarchy, params, levels=levels)
    elif args.method == "fgsd":
        matrix = fgsd_matrix(hierarchy, bins=args.bins, range_max=args.range_max, levels=levels)
    else:
        print(f"unknown method {args.method!r}", file=sys.stderr)
        return 2
    path = save_matrix(matrix, dataset_dir / "embeddings")
    if args.csv:
        export_csv(matrix, dataset_dir / "embeddings" / f"{matrix.method}.csv")
    print(f"{matrix.method}: {matrix.count} embeddings of dim {matrix.d} -> {path}")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    from graphpix.analytics import col_order, row_order
    from graphpix.embed import load_matrix
    from graphpix.render import ColorSpec, render_pixels
    from graphpix.server.views import default_view, visible_positions

    dataset_dir = Path(args.dataset)
    graph = _load_graph(dataset_dir)
    hierarchy = build_hierarchy(graph)
    manifests = sorted((dataset_dir / "embeddings").glob("*.json"))
    if not manifests:
        print("no embeddings found; run `graphpix embed` first", file=sys.stderr)
        return 2
    matrix = None
    for manifest in manifests:
        candidate = load_matrix(manifest)
        if args.method in (None, candidate.method):
            matrix = candidate
            break
    if matrix is None:
        print(f"no {args.method!r} embeddings found", file=sys.stderr)
        return 2

    view = default_view(dataset_dir.name, graph.T, args.width, matrix.method)
    keys = [view.intervals[p] for p in visible_positions(view, graph.T)]
    idx = matrix.rows_for(keys)
    raw = matrix.raw[idx]
    spec = ColorSpec.from_values(raw, args.segments)
    image = render_pixels(
        raw,
        row_order(raw, args.row_stat),
        col_order(keys, None, "time"),
        spec,
        screen_width_px=args.width,
    )
    Path(args.out).write_bytes(image.png)
    print(f"{image.width_px}x{image.height_px} px, {len(keys)} bars -> {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from graphpix.server.app import create_app
    from graphpix.server.state import load_config

    config = load_config(args.config)
    if args.data is not None:
        config.data_root = args.data
    if args.port is not None:
        config.port = args.port
    app = create_app(config)
    uvicorn.run(app, host=args.host, port=config.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphpix")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="normalize an edge list into a dataset directory")
    p.add_argument("edges")
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=("indexed", "timed"), default="indexed")
    p.add_argument("--bucket", type=float, default=3600.0, help="bucket width in seconds (timed mode)")
    p.set_defaults(fn=_cmd_ingest)

    p = sub.add_parser("synth", help="generate a synthetic dataset")
    synth_sub = p.add_subparsers(dest="generator", required=True)

    q = synth_sub.add_parser("sbm", help="stochastic block model states")
    q.add_argument("--out", required=True)
    q.add_argument("--states", default="2x45x60,3x30x30,4x22x30",
                   help="comma-separated blocks x nodes_per_block x steps")
    q.add_argument("--jitter", type=int, default=5)
    q.add_argument("--p-in", type=float, default=0.25)
    q.add_argument("--p-out", type=float, default=0.02)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--no-shuffle", action="store_true")
    q.set_defaults(fn=_cmd_synth_sbm)

    q = synth_sub.add_parser("ws", help="connected Watts-Strogatz control")
    q.add_argument("--out", required=True)
    q.add_argument("--steps", type=int, default=100)
    q.add_argument("--nodes", type=int, default=200)
    q.add_argument("--k-min", type=int, default=6)
    q.add_argument("--k-max", type=int, default=20)
    q.add_argument("--p-rewire", type=float, default=0.05)
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(fn=_cmd_synth_ws)

    p = sub.add_parser("embed", help="compute embeddings for a dataset directory")
    p.add_argument("--dataset", required=True)
    p.add_argument("--method", required=True, choices=("graph2vec", "gl2vec", "fgsd"))
    p.add_argument("--dims", type=int, default=128)
    p.add_argument("--epochs", type=int, default=1000)
    p.add_argument("--lr", type=float, default=0.02)
    p.add_argument("--wl", type=int, default=2)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true", help="multi-threaded (drops determinism)")
    p.add_argument("--levels", default=None, help="comma-separated hierarchy levels, default all")
    p.add_argument("--bins", type=int, default=128)
    p.add_argument("--range-max", type=float, default=20.0)
    p.add_argument("--csv", action="store_true", help="also export CSV")
    p.set_defaults(fn=_cmd_embed)

    p = sub.add_parser("render", help="render the default view to a PNG")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--method", default=None)
    p.add_argument("--width", type=int, default=400)
    p.add_argument("--row-stat", default="none")
    p.add_argument("--segments", type=int, default=1)
    p.set_defaults(fn=_cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--config", default=None, help="config JSON (GRAPHPIX_CONFIG overrides)")
    p.add_argument("--data", default=None, help="dataset root directory")
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
