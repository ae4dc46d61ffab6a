import json
import re

import pytest

from codecarta import bundle as bundle_mod
from codecarta.bundle import bundle, decode_data_block, encode_data_block
from codecarta.cli import main
from codecarta.errors import BuildError
from codecarta.glyphs import StyleConfig, style_config_document
from codecarta.layout import LayoutConfig, layout_snapshot, run_layout
from codecarta.model import EntityKind, GraphBuilder
from codecarta.serialize import serialize
from codecarta.view import default_view


def empty_solution_graph():
    b = GraphBuilder()
    b.add(None, EntityKind.SOLUTION, "only")
    return b.build()


def documents():
    g = empty_solution_graph()
    graph_doc = serialize(g)
    state = run_layout(g, default_view(g), LayoutConfig(max_iterations=2), seed=1)
    layout_doc = layout_snapshot(state)
    style_doc = (json.dumps(style_config_document(StyleConfig())) + "\n").encode()
    return graph_doc, layout_doc, style_doc


def test_single_file_mode_yields_one_file():
    files = bundle(*documents(), single_file=True)
    assert list(files) == ["index.html"]


def test_single_file_embeds_graph_verbatim():
    graph_doc, layout_doc, style_doc = documents()
    files = bundle(graph_doc, layout_doc, style_doc, single_file=True)
    html = files["index.html"].decode("utf-8")
    m = re.search(
        r'<script type="application/vnd\.codecarta\+base64" id="codecarta-graph">([^<]*)</script>',
        html,
    )
    assert m is not None
    assert decode_data_block(m.group(1)) == graph_doc


def test_data_block_round_trip():
    payload = b'{"x": 1}\n' * 100
    assert decode_data_block(encode_data_block("b", payload).split(">", 1)[1].rsplit("<", 1)[0]) == payload


def test_bundle_has_no_absolute_url_references():
    for single in (True, False):
        files = bundle(*documents(), single_file=single)
        for name, payload in files.items():
            assert not re.search(rb"https?://", payload), name
            assert not re.search(rb'(src|href)="/', payload), name


def test_inline_script_escapes_closing_tags(monkeypatch):
    monkeypatch.setattr(
        bundle_mod, "_asset_text",
        lambda name: 'var x = "</script>";' if name == "app.js" else "body{}",
    )
    files = bundle(*documents(), single_file=True)
    html = files["index.html"].decode("utf-8")
    assert '"</script>"' not in html
    assert '"<\\/script>"' in html


def test_missing_assets_raise_build_error(monkeypatch):
    def broken(name):
        raise BuildError("missing prebuilt web asset; build the frontend")

    monkeypatch.setattr(bundle_mod, "_asset_text", broken)
    with pytest.raises(BuildError):
        bundle(*documents(), single_file=True)


def test_multi_file_mode_contains_documents_verbatim():
    graph_doc, layout_doc, style_doc = documents()
    files = bundle(graph_doc, layout_doc, style_doc, single_file=False)
    assert files["graph.json"] == graph_doc
    assert files["layout.json"] == layout_doc
    assert files["style.json"] == style_doc
    html = files["index.html"].decode("utf-8")
    assert 'src="app.js"' in html
    assert 'href="style.css"' in html


# ---------------------------------------------------------------------------
# CLI


def synth_fixture(tmp_path):
    root = tmp_path / "fixture"
    code = main(
        [
            "synth",
            "--out",
            str(root),
            "--projects",
            "2",
            "--target-nodes",
            "80",
            "--seed",
            "3",
            "--warning-rate",
            "0.1",
        ]
    )
    assert code == 0
    return root


def test_cli_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mine", "--frobnicate"])
    assert exc.value.code == 2


def test_cli_missing_graph_file_reports_machine_readable_error(tmp_path, capsys):
    code = main(["layout", str(tmp_path / "missing.json"), "--out", str(tmp_path / "o.json")])
    assert code == 4
    record = json.loads(capsys.readouterr().err.strip())
    assert record["error"]["step"] == "layout"
    assert "message" in record["error"]


def test_cli_bad_config_exits_3(tmp_path, capsys):
    fixture = synth_fixture(tmp_path)
    config = tmp_path / "cfg.json"
    config.write_text('{"scalingMode": "bogus"}')
    graph = tmp_path / "graph.json"
    assert main(["mine", str(fixture), "--out", str(graph)]) == 0
    code = main(["layout", str(graph), "--out", str(tmp_path / "l.json"), "--config", str(config)])
    assert code == 3
    record = json.loads(capsys.readouterr().err.strip())
    assert record["error"]["type"] == "document-format-error"


def test_cli_empty_workspace_exits_3(tmp_path, capsys):
    empty = tmp_path / "void"
    empty.mkdir()
    code = main(["mine", str(empty), "--out", str(tmp_path / "g.json")])
    assert code == 3


def test_render_single_file_writes_exactly_one_file(tmp_path):
    fixture = synth_fixture(tmp_path)
    graph = tmp_path / "graph.json"
    assert main(["mine", str(fixture), "--out", str(graph)]) == 0
    out = tmp_path / "page" / "index.html"
    assert main(
        ["render", str(graph), "--single-file", "--out", str(out), "--seed", "1"]
    ) == 0
    assert out.is_file()
    assert [p.name for p in out.parent.iterdir()] == ["index.html"]


def test_pipeline_outputs_all_three_documents(tmp_path):
    fixture = synth_fixture(tmp_path)
    site = tmp_path / "site"
    code = main(
        [
            "pipeline",
            str(fixture),
            "--out",
            str(site),
            "--diagnostics",
            str(fixture / "diagnostics.ndjson"),
            "--seed",
            "3",
            "--single-file",
        ]
    )
    assert code == 0
    assert (site / "graph.json").is_file()
    assert (site / "layout.json").is_file()
    assert (site / "index.html").is_file()


def test_pipeline_is_deterministic(tmp_path):
    fixture = synth_fixture(tmp_path)
    outputs = []
    for name in ("one", "two"):
        site = tmp_path / name
        assert (
            main(
                [
                    "pipeline",
                    str(fixture),
                    "--out",
                    str(site),
                    "--seed",
                    "3",
                    "--single-file",
                ]
            )
            == 0
        )
        outputs.append(
            tuple((site / f).read_bytes() for f in ("graph.json", "layout.json", "index.html"))
        )
    assert outputs[0] == outputs[1]


def test_scaling_flag_changes_embedded_style(tmp_path):
    fixture = synth_fixture(tmp_path)
    graph = tmp_path / "graph.json"
    assert main(["mine", str(fixture), "--out", str(graph)]) == 0
    out = tmp_path / "multi"
    assert main(["render", str(graph), "--out", str(out), "--scaling", "sqrt"]) == 0
    style = json.loads((out / "style.json").read_text())
    assert style["scalingMode"] == "sqrt"
    assert style["relationStyles"]["declares"]["enabled"] is True
