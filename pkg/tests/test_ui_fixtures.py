"""The committed frontend conformance fixtures must match regeneration."""

import importlib.util
import json
import sys
import tempfile
from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[1]
FIXTURES = REPO / "frontend" / "fixtures"


@pytest.fixture(scope="module")
def gen():
    spec = importlib.util.spec_from_file_location(
        "gen_ui_fixtures", REPO / "scripts" / "gen_ui_fixtures.py"
    )
    module = importlib.util.module_from_spec(spec)
    sys.modules["gen_ui_fixtures"] = module
    spec.loader.exec_module(module)
    return module


def on_disk(name):
    return json.loads((FIXTURES / name).read_text(encoding="utf-8"))


def test_fixture_files_exist():
    names = {p.name for p in FIXTURES.glob("*.json")}
    assert names == {
        "view-ops.json",
        "filter-cases.json",
        "glyph-table.json",
        "scene-fig1.json",
        "layout-200.json",
        "detmath-cases.json",
    }


def test_regeneration_matches_committed_fixtures(gen):
    with tempfile.TemporaryDirectory() as tmp_text:
        tmp = Path(tmp_text)
        graph = gen.synth_graph(tmp)
        assert gen.gen_view_ops(graph) == on_disk("view-ops.json")
        assert gen.gen_filter_cases(graph) == on_disk("filter-cases.json")
        assert gen.gen_glyph_table() == on_disk("glyph-table.json")
        assert gen.gen_scene() == on_disk("scene-fig1.json")
        assert gen.gen_layout_fixture(tmp) == on_disk("layout-200.json")
        assert gen.gen_detmath_cases() == on_disk("detmath-cases.json")
