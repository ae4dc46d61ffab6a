import math

import pytest

from codecarta.errors import NotFoundError
from codecarta.glyphs import (
    DEFAULT_BASE_RADIUS,
    Effect,
    GlyphConfig,
    ScalingMode,
    edge_style,
    glyph_for,
    load_style_config,
    node_radius,
    outline_width,
)
from codecarta.model import (
    Accessibility,
    Diagnostic,
    Entity,
    EntityKind,
    MethodKind,
    RelationId,
    Severity,
    TypeKind,
)
from codecarta.tokens import Token


def make_type(instance=0, static=0, *, is_static=False, access=Accessibility.PUBLIC, diags=()):
    return Entity(
        token=Token((0, 0, 0, 0)),
        name="T",
        kind=EntityKind.TYPE,
        type_kind=TypeKind.CLASS,
        accessibility=access,
        is_static=is_static,
        instance_member_count=instance,
        static_member_count=static,
        diagnostics=tuple(diags),
    )


def test_zero_member_type_linear_radius_is_base():
    e = make_type()
    assert node_radius(e, GlyphConfig()) == DEFAULT_BASE_RADIUS[EntityKind.TYPE]


@pytest.mark.parametrize("mode", list(ScalingMode))
def test_radius_monotone_in_member_count(mode):
    cfg = GlyphConfig(scaling_mode=mode)
    assert node_radius(make_type(50), cfg) > node_radius(make_type(5), cfg)


def test_log_radius_below_linear_for_large_type():
    # Evaluated independently: base 10, weight 0.5, 500 members.
    value = 10 + 0.5 * 500
    expected_linear = value
    expected_log = math.log1p(value)
    e = make_type(400, 100)
    assert node_radius(e, GlyphConfig(scaling_mode=ScalingMode.LINEAR)) == pytest.approx(
        expected_linear
    )
    assert node_radius(e, GlyphConfig(scaling_mode=ScalingMode.LOGARITHMIC)) == pytest.approx(
        expected_log
    )
    assert expected_log < expected_linear


def test_project_base_radius_exceeds_type_base_radius():
    assert DEFAULT_BASE_RADIUS[EntityKind.PROJECT] > DEFAULT_BASE_RADIUS[EntityKind.TYPE]


def test_member_radius_constant_and_below_types():
    cfg = GlyphConfig()
    method = Entity(
        token=Token((0,)),
        name="m",
        kind=EntityKind.METHOD,
        method_kind=MethodKind.ORDINARY,
        accessibility=Accessibility.PUBLIC,
    )
    assert node_radius(method, cfg) < node_radius(make_type(), cfg)


def test_static_class_glyph_matches_paper_case_b():
    # Static class with only static members, public.
    e = make_type(0, 8, is_static=True)
    spec = glyph_for(e)
    assert spec.inner_outline.style == "dashed"
    assert spec.middle_outline.width == 0.0
    assert spec.outer_outline.width > 0.0
    assert spec.corner_icon_id is None


def test_private_instance_class_glyph_matches_paper_case_d():
    # Non-static private class with a few instance members.
    e = make_type(3, 0, access=Accessibility.PRIVATE)
    spec = glyph_for(e)
    assert spec.inner_outline.style == "solid"
    assert spec.middle_outline.width > 0.0
    assert spec.outer_outline.width == 0.0
    assert spec.corner_icon_id == "lock"


def test_warning_method_smokes_matches_paper_case_e():
    e = Entity(
        token=Token((0,)),
        name="m",
        kind=EntityKind.METHOD,
        method_kind=MethodKind.ORDINARY,
        accessibility=Accessibility.PUBLIC,
        diagnostics=(Diagnostic(Severity.WARNING, "W1", "careful"),),
    )
    assert glyph_for(e).effect == Effect.SMOKE


def test_error_class_burns_matches_paper_case_f():
    e = make_type(diags=[Diagnostic(Severity.ERROR, "E1", "broken")])
    assert glyph_for(e).effect == Effect.FIRE


def test_fire_dominates_smoke_dominates_none():
    both = make_type(
        diags=[
            Diagnostic(Severity.WARNING, "W1", "w"),
            Diagnostic(Severity.ERROR, "E1", "e"),
            Diagnostic(Severity.HINT, "H1", "h"),
        ]
    )
    assert glyph_for(both).effect == Effect.FIRE
    hints_only = make_type(diags=[Diagnostic(Severity.HINT, "H1", "h")])
    assert glyph_for(hints_only).effect == Effect.NONE


def test_member_glyphs_have_no_member_count_outlines():
    prop = Entity(
        token=Token((0,)),
        name="p",
        kind=EntityKind.PROPERTY,
        accessibility=Accessibility.PUBLIC,
        is_static=True,
    )
    spec = glyph_for(prop)
    assert spec.middle_outline.width == 0.0
    assert spec.outer_outline.width == 0.0
    assert spec.inner_outline.style == "dashed"


def test_outline_saturation_decreases_outward():
    spec = glyph_for(make_type(4, 4))
    assert (
        spec.inner_outline.saturation
        > spec.middle_outline.saturation
        > spec.outer_outline.saturation
    )


def test_outline_width_zero_iff_zero():
    assert outline_width(0) == 0.0
    assert outline_width(1) > 0.0
    widths = [outline_width(n) for n in range(0, 60)]
    assert widths == sorted(widths)


def test_declares_edge_style_default():
    style = edge_style(RelationId.DECLARES)
    assert style.enabled is True
    assert style.color == "#999999"


def test_inherits_from_default_disabled_teal():
    style = edge_style("inheritsFrom")
    assert style.enabled is False
    assert style.color == "#2d9ca8"


def test_edge_style_override_merging():
    style = edge_style(RelationId.TYPE_OF, {"color": "#123456"})
    default = edge_style(RelationId.TYPE_OF)
    assert style.color == "#123456"
    assert style.line_weight == default.line_weight
    assert style.enabled == default.enabled


def test_unknown_relation_rejected():
    with pytest.raises(NotFoundError):
        edge_style("callGraph")


def test_distinct_default_colors_per_relation():
    colors = {edge_style(r).color for r in RelationId}
    assert len(colors) == len(RelationId)


def test_style_config_parsing():
    cfg = load_style_config(
        {
            "baseRadius": {"type": 12},
            "memberWeight": 1.0,
            "scalingMode": "sqrt",
            "relationStyles": {"typeOf": {"enabled": True}},
        }
    )
    assert cfg.glyphs.base_radius[EntityKind.TYPE] == 12
    assert cfg.glyphs.scaling_mode == ScalingMode.SQUARE_ROOT
    assert cfg.edge_styles()[RelationId.TYPE_OF].enabled is True
