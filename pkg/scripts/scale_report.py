#!/usr/bin/env python3
"""Reproduce the desk-scale figures: synthesize the 8-project / 3760-node
fixture, run the full pipeline, and report stage timings and bundle size."""

from __future__ import annotations

import argparse
import re
import tempfile
import time
from pathlib import Path

from codecarta.bundle import bundle, write_bundle
from codecarta.glyphs import StyleConfig, style_config_document
from codecarta.layout import LayoutConfig, layout_snapshot, run_layout
from codecarta.miner import MinerConfig, mine
from codecarta.model import EntityKind, RelationId
from codecarta.serialize import serialize
from codecarta.synth import SynthConfig, synthesize
from codecarta.view import ViewState

import json


def report(out_dir: Path, projects: int, nodes: int, seed: int) -> None:
    fixture = out_dir / "fixture"
    t0 = time.monotonic()
    result = synthesize(
        SynthConfig(projects=projects, target_nodes=nodes, seed=seed,
                    error_rate=0.01, warning_rate=0.02),
        fixture,
    )
    t_synth = time.monotonic() - t0

    t0 = time.monotonic()
    graph = mine(MinerConfig(root_path=fixture, diagnostics_file=result.diagnostics_path))
    t_mine = time.monotonic() - t0

    style = StyleConfig()
    view = ViewState(
        expanded=frozenset(graph.entities),
        enabled_kinds=frozenset(EntityKind),
        enabled_relations=frozenset({RelationId.DECLARES}),
    )
    t0 = time.monotonic()
    state = run_layout(graph, view, LayoutConfig(), seed)
    t_layout = time.monotonic() - t0

    t0 = time.monotonic()
    graph_doc = serialize(graph)
    layout_doc = layout_snapshot(state)
    style_doc = (json.dumps(style_config_document(style), indent=2) + "\n").encode()
    files = bundle(graph_doc, layout_doc, style_doc, single_file=True)
    write_bundle(files, out_dir / "index.html", single_file=True)
    t_bundle = time.monotonic() - t0

    page = files["index.html"]
    externals = len(re.findall(rb"https?://", page))
    print(f"entities mined        {len(graph.entities)}")
    print(f"synth                 {t_synth:6.2f} s")
    print(f"mine                  {t_mine:6.2f} s")
    print(f"layout                {t_layout:6.2f} s "
          f"({state.iteration} iterations, converged={state.converged})")
    print(f"bundle                {t_bundle:6.2f} s")
    print(f"total (mine..bundle)  {t_mine + t_layout + t_bundle:6.2f} s")
    print(f"single-file size      {len(page) / 1024 / 1024:6.2f} MiB")
    print(f"external references   {externals}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=None)
    parser.add_argument("--projects", type=int, default=8)
    parser.add_argument("--target-nodes", type=int, default=3760)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    if args.out is None:
        with tempfile.TemporaryDirectory(prefix="codecarta-scale-") as tmp:
            report(Path(tmp), args.projects, args.target_nodes, args.seed)
    else:
        args.out.mkdir(parents=True, exist_ok=True)
        report(args.out, args.projects, args.target_nodes, args.seed)


if __name__ == "__main__":
    main()
