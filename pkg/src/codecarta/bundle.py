"""Assembles the deployable web artifact around the prebuilt diagram app.

Two modes: a static directory (openable from any web server) or a single HTML
file with scripts, styles, and data inlined, making zero network requests so
it can be opened straight from disk. Data travels in inline blocks holding a
length-prefixed base64 payload (`<decoded byte length>:<base64>`), which
sidesteps every HTML escaping concern.
"""

from __future__ import annotations

import base64
from importlib import resources
from pathlib import Path

from .errors import BuildError

DATA_MIME = "application/vnd.codecarta+base64"

_PAGE_TEMPLATE = """<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>codecarta</title>
{head}
</head>
<body>
<div id="app"></div>
{data_blocks}
{script}
</body>
</html>
"""


def _asset_text(name: str) -> str:
    try:
        ref = resources.files("codecarta").joinpath("assets", name)
        return ref.read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError) as exc:
        raise BuildError(
            f"missing prebuilt web asset {name!r}; build the frontend "
            f"(cd frontend && npm install && npm run build) to refresh "
            f"src/codecarta/assets/"
        ) from exc


def encode_data_block(block_id: str, payload: bytes) -> str:
    encoded = base64.b64encode(payload).decode("ascii")
    return (
        f'<script type="{DATA_MIME}" id="{block_id}">'
        f"{len(payload)}:{encoded}</script>"
    )


def decode_data_block(text: str) -> bytes:
    """Inverse of encode_data_block's payload encoding; validates the length."""
    length_text, _, encoded = text.partition(":")
    payload = base64.b64decode(encoded, validate=True)
    if str(len(payload)) != length_text:
        raise BuildError(
            f"corrupt data block: length prefix {length_text} != {len(payload)}"
        )
    return payload


def bundle(
    graph_document: bytes,
    layout_document: bytes,
    style_document: bytes,
    single_file: bool,
) -> dict[str, bytes]:
    """Output files keyed by relative path. Single-file mode yields only
    index.html; multi-file mode yields a static site directory."""
    app_js = _asset_text("app.js")
    style_css = _asset_text("style.css")

    if single_file:
        # "</script" inside the inlined JS would terminate the tag early.
        safe_js = app_js.replace("</script", "<\\/script")
        page = _PAGE_TEMPLATE.format(
            head=f"<style>\n{style_css}\n</style>",
            data_blocks="\n".join(
                [
                    encode_data_block("codecarta-graph", graph_document),
                    encode_data_block("codecarta-layout", layout_document),
                    encode_data_block("codecarta-style", style_document),
                ]
            ),
            script=f"<script>\n{safe_js}\n</script>",
        )
        return {"index.html": page.encode("utf-8")}

    page = _PAGE_TEMPLATE.format(
        head='<link rel="stylesheet" href="style.css">',
        data_blocks="",
        script='<script src="app.js"></script>',
    )
    return {
        "index.html": page.encode("utf-8"),
        "app.js": app_js.encode("utf-8"),
        "style.css": style_css.encode("utf-8"),
        "graph.json": graph_document,
        "layout.json": layout_document,
        "style.json": style_document,
    }


def write_bundle(files: dict[str, bytes], out: Path, single_file: bool) -> list[Path]:
    """Write bundle files; single-file mode writes `out` itself as the page."""
    written: list[Path] = []
    if single_file:
        target = out if out.suffix else out / "index.html"
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(files["index.html"])
        written.append(target)
        return written
    out.mkdir(parents=True, exist_ok=True)
    for rel, payload in sorted(files.items()):
        target = out / rel
        target.write_bytes(payload)
        written.append(target)
    return written
