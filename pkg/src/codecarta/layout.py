"""Layout engine: radial tidy-tree seeding plus iterative force refinement.

run_layout is a pure function of (graph, view state, config, seed): the tidy
tree seeds declares-reachable nodes, detached nodes (package stubs) start on
an outer ring at seed-derived angles, then force iterations run until the mean
per-node displacement drops below the convergence threshold. Pinned nodes
never move. Positions are byte-reproducible across runs and hosts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .detmath import TAU, det_cos, det_sin, hash32, unit_interval
from .errors import DocumentFormatError, ParameterError
from .fa2 import fa2_step
from .model import EntityGraph, EntityKind
from .tidytree import tidy_tree_layout
from .tokens import Token, parse_token, render_token
from .view import ViewState, visible_set

LAYOUT_SCHEMA_VERSION = "codecarta-layout/1"

# Stall-triggered cooling for batch convergence: once the best mean
# displacement stops improving while oscillation dominates, the speed
# efficiency gets capped down geometrically until the layout settles. Purely
# coherent motion (swing pinned at the traction floor) is never the trigger,
# but cooling runs to completion once it has started.
_STALL_WINDOW = 25
_STALL_COOLING = 0.5
_STALL_IMPROVEMENT = 0.995

Point = tuple[float, float]


@dataclass(frozen=True)
class ForceConfig:
    repulsion_strength: float = 2.0
    gravity: float = 0.05
    edge_weight_influence: float = 1.0  # edges are unweighted; kept for config parity
    adjust_sizes: bool = False
    theta_approx: float = 0.7


@dataclass(frozen=True)
class LayoutConfig:
    ring_spacing: float = 60.0
    min_angular_gap_deg: float = 0.5
    forces: ForceConfig = field(default_factory=ForceConfig)
    max_iterations: int = 2000
    convergence_threshold: float = 0.1

    def __post_init__(self) -> None:
        if self.ring_spacing <= 0:
            raise ParameterError("ringSpacing must be positive")
        # max_iterations = 0 is allowed: it disables refinement entirely.
        if self.max_iterations < 0:
            raise ParameterError("maxIterations must be non-negative")

    @property
    def max_displacement(self) -> float:
        # Spec'd guard: every per-step displacement stays below the ring spacing.
        return self.ring_spacing * 0.5


@dataclass(frozen=True)
class LayoutGraph:
    """Visible nodes plus the enabled relations' edges, ready for stepping."""

    tokens: tuple[Token, ...]
    edges: tuple[tuple[int, int], ...]
    sizes: tuple[float, ...]


def build_layout_graph(
    g: EntityGraph,
    vs: ViewState,
    sizes: Mapping[Token, float] | None = None,
) -> LayoutGraph:
    visible = sorted(visible_set(g, vs))
    index = {t: i for i, t in enumerate(visible)}
    pairs: set[tuple[int, int]] = set()
    for relation in sorted(vs.enabled_relations, key=lambda r: r.value):
        for src, dst in g.edges(relation):
            si = index.get(src)
            di = index.get(dst)
            if si is None or di is None or si == di:
                continue
            pairs.add((si, di) if si < di else (di, si))
    size_list = tuple(float(sizes.get(t, 0.0)) if sizes else 0.0 for t in visible)
    return LayoutGraph(tokens=tuple(visible), edges=tuple(sorted(pairs)), sizes=size_list)


def visible_forest(
    g: EntityGraph, visible: Iterable[Token]
) -> tuple[list[Token], dict[Token, list[Token]], list[Token]]:
    """Restrict declares to the visible set.

    Each visible node hangs under its nearest visible ancestor. Returns
    (tidy roots, children, detached): solutions and anything connected stay in
    the tidy forest; isolated non-solution nodes (package stubs) are detached.
    """
    visible = set(visible)
    parent: dict[Token, Token] = {}
    children: dict[Token, list[Token]] = {}
    for t in visible:
        ancestor = t.parent
        while ancestor is not None and ancestor not in visible:
            ancestor = ancestor.parent
        if ancestor is not None:
            parent[t] = ancestor
            children.setdefault(ancestor, []).append(t)

    roots: list[Token] = []
    detached: list[Token] = []
    for t in sorted(visible):
        if t in parent:
            continue
        if t in children or g.entities[t].kind == EntityKind.SOLUTION:
            roots.append(t)
        else:
            detached.append(t)
    for kids in children.values():
        kids.sort()
    return roots, children, detached


def seed_positions(
    g: EntityGraph,
    vs: ViewState,
    cfg: LayoutConfig,
    seed: int,
    warm: Mapping[Token, Point] | None = None,
) -> dict[Token, Point]:
    """Initial positions: tidy tree for the declares forest, outer ring for
    detached nodes, warm-start positions preserved where provided."""
    visible = sorted(visible_set(g, vs))
    roots, children, detached = visible_forest(g, visible)
    positions: dict[Token, Point] = {}

    tree_positions = tidy_tree_layout(roots, children, cfg.ring_spacing)
    depth: dict[Token, int] = {}
    max_depth = 0
    stack = [(r, 0) for r in roots]
    while stack:
        node, d = stack.pop()
        depth[node] = d
        max_depth = max(max_depth, d)
        stack.extend((k, d + 1) for k in children.get(node, ()))

    outer_radius = (max_depth + 1) * cfg.ring_spacing
    rotation = unit_interval(hash32(seed)) * TAU

    if warm is None:
        positions.update(tree_positions)
        for k, t in enumerate(detached):
            angle = rotation + TAU * k / max(1, len(detached))
            positions[t] = (
                outer_radius * det_cos(angle),
                outer_radius * det_sin(angle),
            )
        return positions

    # Warm start: surviving nodes keep their positions; new tree nodes appear
    # on a small ring around their parent, new detached nodes on the outer ring.
    for t in visible:
        if t in warm:
            positions[t] = warm[t]
    for t in sorted(tree_positions):
        if t in positions:
            continue
        ancestor = t.parent
        anchor: Point | None = None
        while ancestor is not None:
            if ancestor in positions:
                anchor = positions[ancestor]
                break
            ancestor = ancestor.parent
        if anchor is None:
            positions[t] = tree_positions[t]
        else:
            angle = unit_interval(hash32(seed, *t.path)) * TAU
            r = cfg.ring_spacing * 0.25
            positions[t] = (anchor[0] + r * det_cos(angle), anchor[1] + r * det_sin(angle))
    for k, t in enumerate(detached):
        if t not in positions:
            angle = rotation + TAU * k / max(1, len(detached))
            positions[t] = (
                outer_radius * det_cos(angle),
                outer_radius * det_sin(angle),
            )
    return positions


@dataclass
class LayoutState:
    """Working state of the force refinement over a fixed LayoutGraph."""

    tokens: tuple[Token, ...]
    pos: np.ndarray  # (n, 2) float64
    prev_force: np.ndarray  # (n, 2) float64
    pinned_mask: np.ndarray  # (n,) bool
    gravity_center: Point
    seed: int
    config: LayoutConfig
    iteration: int = 0
    global_speed: float = 1.0
    speed_efficiency: float = 1.0
    # Batch annealing: when the mean displacement stalls, the efficiency cap
    # shrinks so the system settles instead of jittering forever.
    best_disp: float = float("inf")
    stall: int = 0
    efficiency_cap: float = 1.0
    converged: bool = False
    trace: list[dict] = field(default_factory=list)

    @property
    def positions(self) -> dict[Token, Point]:
        return {
            t: (float(self.pos[i, 0]), float(self.pos[i, 1]))
            for i, t in enumerate(self.tokens)
        }


def init_state(
    lg: LayoutGraph,
    positions: Mapping[Token, Point],
    cfg: LayoutConfig,
    seed: int,
    pinned: frozenset[Token] = frozenset(),
    gravity_center: Point | None = None,
) -> LayoutState:
    n = len(lg.tokens)
    pos = np.zeros((n, 2))
    for i, t in enumerate(lg.tokens):
        x, y = positions[t]
        pos[i, 0] = x
        pos[i, 1] = y
    _jitter_coincident(pos, lg.tokens, cfg, seed)
    pinned_mask = np.zeros(n, dtype=np.bool_)
    for i, t in enumerate(lg.tokens):
        if t in pinned:
            pinned_mask[i] = True
    # Gravity pulls toward the centroid of the seeded visible set, fixed for
    # the whole run (a per-step self-centroid would cancel itself out).
    if gravity_center is None:
        cx = cy = 0.0
        for i in range(n):
            cx += pos[i, 0]
            cy += pos[i, 1]
        center = (cx / n, cy / n) if n else (0.0, 0.0)
    else:
        center = gravity_center
    return LayoutState(
        tokens=lg.tokens,
        pos=pos,
        prev_force=np.zeros((n, 2)),
        pinned_mask=pinned_mask,
        gravity_center=center,
        seed=seed,
        config=cfg,
    )


def _jitter_coincident(
    pos: np.ndarray, tokens: Sequence[Token], cfg: LayoutConfig, seed: int
) -> None:
    """Separate exactly-coincident nodes deterministically before stepping."""
    seen: dict[tuple[float, float], int] = {}
    for i, t in enumerate(tokens):
        key = (pos[i, 0], pos[i, 1])
        bump = seen.get(key, 0)
        seen[key] = bump + 1
        if bump:
            angle = unit_interval(hash32(seed, bump, *t.path)) * TAU
            r = cfg.ring_spacing * 1e-3 * bump
            pos[i, 0] += r * det_cos(angle)
            pos[i, 1] += r * det_sin(angle)


def _masses(lg: LayoutGraph) -> np.ndarray:
    mass = np.ones(len(lg.tokens))
    for s, t in lg.edges:
        mass[s] += 1.0
        mass[t] += 1.0
    return mass


def _step_arrays(state: LayoutState, lg: LayoutGraph, mass, esrc, edst, sizes) -> None:
    cfg = state.config
    speed, efficiency, mean_disp, total_swing, g_swing, g_traction = fa2_step(
        state.pos[:, 0],
        state.pos[:, 1],
        state.prev_force[:, 0],
        state.prev_force[:, 1],
        mass,
        sizes,
        state.pinned_mask,
        esrc,
        edst,
        cfg.forces.repulsion_strength,
        cfg.forces.gravity,
        state.gravity_center[0],
        state.gravity_center[1],
        cfg.forces.theta_approx,
        cfg.forces.adjust_sizes,
        cfg.max_displacement,
        state.global_speed,
        state.speed_efficiency,
    )
    if mean_disp < state.best_disp * _STALL_IMPROVEMENT:
        state.best_disp = mean_disp
        state.stall = 0
    elif g_swing > 0.2 * g_traction or state.efficiency_cap < 1.0:
        state.stall += 1
        if state.stall >= _STALL_WINDOW:
            state.efficiency_cap = min(state.efficiency_cap, efficiency) * _STALL_COOLING
            state.stall = 0
    state.global_speed = speed
    state.speed_efficiency = min(efficiency, state.efficiency_cap)
    state.iteration += 1
    state.converged = mean_disp <= cfg.convergence_threshold
    state.trace.append(
        {"iteration": state.iteration, "meanDisplacement": mean_disp, "totalSwing": total_swing}
    )


def _edge_arrays(lg: LayoutGraph):
    m = len(lg.edges)
    esrc = np.empty(m, dtype=np.int64)
    edst = np.empty(m, dtype=np.int64)
    for k, (s, t) in enumerate(lg.edges):
        esrc[k] = s
        edst[k] = t
    return esrc, edst


def force_step(state: LayoutState, lg: LayoutGraph) -> LayoutState:
    """One deterministic force iteration; returns a new state."""
    out = LayoutState(
        tokens=state.tokens,
        pos=state.pos.copy(),
        prev_force=state.prev_force.copy(),
        pinned_mask=state.pinned_mask.copy(),
        gravity_center=state.gravity_center,
        seed=state.seed,
        config=state.config,
        iteration=state.iteration,
        global_speed=state.global_speed,
        speed_efficiency=state.speed_efficiency,
        best_disp=state.best_disp,
        stall=state.stall,
        efficiency_cap=state.efficiency_cap,
        converged=state.converged,
        trace=list(state.trace),
    )
    esrc, edst = _edge_arrays(lg)
    _step_arrays(out, lg, _masses(lg), esrc, edst, np.asarray(lg.sizes))
    return out


def run_layout(
    g: EntityGraph,
    vs: ViewState,
    cfg: LayoutConfig,
    seed: int,
    *,
    pinned: frozenset[Token] = frozenset(),
    sizes: Mapping[Token, float] | None = None,
    warm: Mapping[Token, Point] | None = None,
) -> LayoutState:
    """Tidy-tree seed, then force refinement to convergence or max_iterations."""
    lg = build_layout_graph(g, vs, sizes)
    positions = seed_positions(g, vs, cfg, seed, warm)
    state = init_state(lg, positions, cfg, seed, pinned)
    if not lg.tokens:
        state.converged = True
        return state
    mass = _masses(lg)
    esrc, edst = _edge_arrays(lg)
    size_arr = np.asarray(lg.sizes)
    for _ in range(cfg.max_iterations):
        _step_arrays(state, lg, mass, esrc, edst, size_arr)
        if state.converged:
            break
    return state


def layout_snapshot(state: LayoutState) -> bytes:
    """Canonical layout document: positions by token text, iteration, converged."""
    positions = {
        render_token(t): [float(state.pos[i, 0]), float(state.pos[i, 1])]
        for i, t in enumerate(state.tokens)
    }
    document = {
        "schemaVersion": LAYOUT_SCHEMA_VERSION,
        "positions": positions,
        "iteration": state.iteration,
        "converged": state.converged,
    }
    return (json.dumps(document, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


@dataclass(frozen=True)
class LayoutSnapshot:
    positions: dict[Token, Point]
    iteration: int
    converged: bool


def read_layout_snapshot(data: bytes | str) -> LayoutSnapshot:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentFormatError(f"not valid JSON at offset {exc.pos}: {exc.msg}") from exc
    if not isinstance(document, dict) or document.get("schemaVersion") != LAYOUT_SCHEMA_VERSION:
        raise DocumentFormatError(
            f"expected a {LAYOUT_SCHEMA_VERSION!r} document"
        )
    raw_positions = document.get("positions")
    if not isinstance(raw_positions, dict):
        raise DocumentFormatError("positions: expected an object")
    positions: dict[Token, Point] = {}
    for key, value in raw_positions.items():
        if not (isinstance(value, list) and len(value) == 2):
            raise DocumentFormatError(f"positions[{key!r}]: expected [x, y]")
        positions[parse_token(key)] = (float(value[0]), float(value[1]))
    return LayoutSnapshot(
        positions=positions,
        iteration=int(document.get("iteration", 0)),
        converged=bool(document.get("converged", False)),
    )


def layout_config_from_json(raw: Mapping[str, object]) -> LayoutConfig:
    """Parse the optional "layout" section of a config document."""
    defaults = LayoutConfig()
    forces_raw = raw.get("forces", {})
    if not isinstance(forces_raw, dict):
        raise DocumentFormatError("layout.forces: expected an object")

    def num(source: Mapping[str, object], key: str, fallback: float) -> float:
        value = source.get(key, fallback)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DocumentFormatError(f"layout.{key}: expected a number")
        return float(value)

    adjust = forces_raw.get("adjustSizes", defaults.forces.adjust_sizes)
    if not isinstance(adjust, bool):
        raise DocumentFormatError("layout.forces.adjustSizes: expected a boolean")
    forces = ForceConfig(
        repulsion_strength=num(forces_raw, "repulsionStrength", defaults.forces.repulsion_strength),
        gravity=num(forces_raw, "gravity", defaults.forces.gravity),
        edge_weight_influence=num(
            forces_raw, "edgeWeightInfluence", defaults.forces.edge_weight_influence
        ),
        adjust_sizes=adjust,
        theta_approx=num(forces_raw, "thetaApprox", defaults.forces.theta_approx),
    )
    return LayoutConfig(
        ring_spacing=num(raw, "ringSpacing", defaults.ring_spacing),
        min_angular_gap_deg=num(raw, "minAngularGap", defaults.min_angular_gap_deg),
        forces=forces,
        max_iterations=int(num(raw, "maxIterations", defaults.max_iterations)),
        convergence_threshold=num(raw, "convergenceThreshold", defaults.convergence_threshold),
    )
