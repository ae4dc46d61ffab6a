#!/usr/bin/env python3
"""Mine this repository itself and emit the interactive diagram.

The retrieval-corpus and frontend directories are excluded; everything else
(package sources, tests, scripts) lands in the graph.
"""

from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[1]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=REPO_ROOT / "self-map")
    parser.add_argument("--single-file", action="store_true", default=True)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()
    command = [
        sys.executable,
        "-m",
        "codecarta.cli",
        "pipeline",
        str(REPO_ROOT),
        "--out",
        str(args.out),
        "--exclude",
        "examples",
        "--exclude",
        "frontend",
        "--exclude",
        "self-map",
        "--seed",
        str(args.seed),
        "--follow-external",
    ]
    if args.single_file:
        command.append("--single-file")
    return subprocess.call(command)


if __name__ == "__main__":
    sys.exit(main())
