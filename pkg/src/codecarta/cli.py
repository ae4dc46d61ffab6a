"""Console entry point: mine, layout, render, pipeline, and synth subcommands.

Runs non-interactively by design. Failures print one machine-readable JSON
error object to stderr; the exit code table is documented in the README
(0 ok, 2 usage, 3 bad input or configuration, 4 processing failure,
70 unexpected). Output is plain text, so NO_COLOR needs no special handling.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bundle import bundle, write_bundle
from .errors import (
    CodecartaError,
    DiagnosticsFormatError,
    DocumentFormatError,
    EmptyWorkspaceError,
    ParameterError,
    SchemaVersionError,
    TokenParseError,
    WorkspaceError,
)
from .glyphs import (
    ScalingMode,
    StyleConfig,
    node_radius,
    read_style_config,
    style_config_document,
)
from .layout import (
    LayoutConfig,
    layout_config_from_json,
    layout_snapshot,
    read_layout_snapshot,
    run_layout,
)
from .miner import MinerConfig, mine
from .model import EntityGraph, EntityKind, RelationId
from .serialize import deserialize, serialize
from .synth import SynthConfig, synthesize
from .view import ViewState

_INPUT_ERRORS = (
    WorkspaceError,
    EmptyWorkspaceError,
    ParameterError,
    DocumentFormatError,
    DiagnosticsFormatError,
    SchemaVersionError,
    TokenParseError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codecarta",
        description="Mine a codebase into an entity graph and emit an "
        "interactive node-link diagram as a self-contained web bundle.",
    )
    parser.add_argument("--version", action="version", version=f"codecarta {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    mine_cmd = commands.add_parser("mine", help="analyze a workspace into a graph document")
    mine_cmd.add_argument("root", type=Path)
    mine_cmd.add_argument("--out", type=Path, required=True)
    _add_mine_flags(mine_cmd)

    layout_cmd = commands.add_parser("layout", help="compute a layout snapshot for a graph")
    layout_cmd.add_argument("graph", type=Path)
    layout_cmd.add_argument("--out", type=Path, required=True)
    _add_style_flags(layout_cmd)
    layout_cmd.add_argument("--seed", type=int, default=0)

    render_cmd = commands.add_parser("render", help="emit the web bundle for a graph")
    render_cmd.add_argument("graph", type=Path)
    render_cmd.add_argument("--layout", type=Path, default=None)
    render_cmd.add_argument("--out", type=Path, required=True)
    render_cmd.add_argument("--single-file", action="store_true")
    _add_style_flags(render_cmd)
    render_cmd.add_argument("--seed", type=int, default=0)

    pipeline_cmd = commands.add_parser(
        "pipeline", help="mine, lay out, and render in one run"
    )
    pipeline_cmd.add_argument("root", type=Path)
    pipeline_cmd.add_argument("--out", type=Path, required=True)
    _add_mine_flags(pipeline_cmd)
    _add_style_flags(pipeline_cmd)
    pipeline_cmd.add_argument("--seed", type=int, default=0)
    pipeline_cmd.add_argument("--single-file", action="store_true")

    synth_cmd = commands.add_parser(
        "synth", help="generate a synthetic workspace with a ground-truth ledger"
    )
    synth_cmd.add_argument("--out", type=Path, required=True)
    synth_cmd.add_argument("--projects", type=int, required=True)
    synth_cmd.add_argument("--target-nodes", type=int, required=True)
    synth_cmd.add_argument("--seed", type=int, default=0)
    synth_cmd.add_argument("--error-rate", type=float, default=0.0)
    synth_cmd.add_argument("--warning-rate", type=float, default=0.0)
    return parser


def _add_mine_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--exclude", action="append", default=[], metavar="GLOB")
    cmd.add_argument("--include", action="append", default=[], metavar="GLOB")
    cmd.add_argument("--diagnostics", type=Path, default=None)
    cmd.add_argument("--threads", type=int, default=1)
    cmd.add_argument("--follow-external", action="store_true")


def _add_style_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--config", type=Path, default=None)
    cmd.add_argument(
        "--scaling", choices=[m.value for m in ScalingMode], default=None
    )


def _miner_config(args) -> MinerConfig:
    return MinerConfig(
        root_path=args.root,
        include_globs=tuple(args.include) or ("*.py",),
        exclude_globs=tuple(args.exclude),
        diagnostics_file=args.diagnostics,
        thread_count=args.threads,
        follow_external_packages=args.follow_external,
    )


def _load_configs(args) -> tuple[StyleConfig, LayoutConfig]:
    style = StyleConfig()
    layout_cfg = LayoutConfig()
    if args.config is not None:
        raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        if not isinstance(raw, dict):
            raise DocumentFormatError(f"{args.config}: top level must be an object")
        style = read_style_config(Path(args.config))
        layout_raw = raw.get("layout", {})
        if not isinstance(layout_raw, dict):
            raise DocumentFormatError("layout: expected an object")
        layout_cfg = layout_config_from_json(layout_raw)
    if args.scaling is not None:
        from dataclasses import replace

        style = StyleConfig(
            glyphs=replace(style.glyphs, scaling_mode=ScalingMode(args.scaling)),
            relation_overrides=style.relation_overrides,
        )
    return style, layout_cfg


def _full_view(g: EntityGraph, style: StyleConfig) -> ViewState:
    enabled_relations = frozenset(
        relation for relation, s in style.edge_styles().items() if s.enabled
    ) | {RelationId.DECLARES}
    return ViewState(
        expanded=frozenset(g.entities),
        enabled_kinds=frozenset(EntityKind),
        enabled_relations=enabled_relations,
    )


def _compute_layout(g: EntityGraph, style: StyleConfig, layout_cfg: LayoutConfig, seed: int):
    vs = _full_view(g, style)
    sizes = None
    if layout_cfg.forces.adjust_sizes:
        sizes = {t: node_radius(e, style.glyphs) for t, e in g.entities.items()}
    return run_layout(g, vs, layout_cfg, seed, sizes=sizes)


def _style_bytes(style: StyleConfig) -> bytes:
    return (json.dumps(style_config_document(style), indent=2) + "\n").encode("utf-8")


def _cmd_mine(args) -> int:
    graph = mine(_miner_config(args))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(serialize(graph))
    print(f"mined {len(graph.entities)} entities -> {args.out}")
    return 0


def _cmd_layout(args) -> int:
    style, layout_cfg = _load_configs(args)
    graph = deserialize(args.graph.read_bytes())
    state = _compute_layout(graph, style, layout_cfg, args.seed)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(layout_snapshot(state))
    print(
        f"laid out {len(state.tokens)} nodes in {state.iteration} iterations "
        f"(converged={str(state.converged).lower()}) -> {args.out}"
    )
    return 0


def _cmd_render(args) -> int:
    style, layout_cfg = _load_configs(args)
    graph_document = args.graph.read_bytes()
    graph = deserialize(graph_document)
    if args.layout is not None:
        layout_document = args.layout.read_bytes()
        read_layout_snapshot(layout_document)  # validate before embedding
    else:
        layout_document = layout_snapshot(
            _compute_layout(graph, style, layout_cfg, args.seed)
        )
    files = bundle(graph_document, layout_document, _style_bytes(style), args.single_file)
    written = write_bundle(files, args.out, args.single_file)
    print(f"wrote {len(written)} file(s) under {args.out}")
    return 0


def _cmd_pipeline(args) -> int:
    style, layout_cfg = _load_configs(args)
    graph = mine(_miner_config(args))
    graph_document = serialize(graph)
    state = _compute_layout(graph, style, layout_cfg, args.seed)
    layout_document = layout_snapshot(state)

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "graph.json").write_bytes(graph_document)
    (out / "layout.json").write_bytes(layout_document)
    files = bundle(graph_document, layout_document, _style_bytes(style), args.single_file)
    target = out / "index.html" if args.single_file else out
    write_bundle(files, target, args.single_file)
    print(
        f"pipeline: {len(graph.entities)} entities, layout "
        f"{'converged' if state.converged else 'stopped'} after {state.iteration} "
        f"iterations -> {out}"
    )
    return 0


def _cmd_synth(args) -> int:
    config = SynthConfig(
        projects=args.projects,
        target_nodes=args.target_nodes,
        seed=args.seed,
        error_rate=args.error_rate,
        warning_rate=args.warning_rate,
    )
    result = synthesize(config, args.out)
    print(
        f"synthesized {result.ledger['totalNodes']} planned entities under "
        f"{result.root} (ledger: {result.ledger_path})"
    )
    return 0


_HANDLERS = {
    "mine": _cmd_mine,
    "layout": _cmd_layout,
    "render": _cmd_render,
    "pipeline": _cmd_pipeline,
    "synth": _cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    step = args.command
    try:
        return _HANDLERS[step](args)
    except _INPUT_ERRORS as exc:
        _print_error(step, exc)
        return 3
    except (CodecartaError, OSError) as exc:
        _print_error(step, exc)
        return 4
    except Exception as exc:  # noqa: BLE001 - last-resort machine-readable report
        _print_error(step, exc)
        return 70


def _print_error(step: str, exc: Exception) -> None:
    import re

    kind = re.sub(r"(?<!^)(?=[A-Z])", "-", type(exc).__name__).lower()
    record = {"error": {"step": step, "type": kind, "message": str(exc)}}
    print(json.dumps(record), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
