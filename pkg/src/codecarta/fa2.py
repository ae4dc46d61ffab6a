"""Force-model kernels: degree-weighted repulsion, linear edge attraction,
center gravity, and swing-limited adaptive speeds, with Barnes-Hut repulsion
approximation controlled by theta.

Everything is written as explicit sequential loops over flat arrays so results
are bit-deterministic for a given input, independent of threads or hosts; the
web port mirrors these loops operation for operation.
"""

from __future__ import annotations

import numpy as np
from numba import njit

MAX_DEPTH = 40
TOLERANCE = 1.0


@njit(cache=True)
def _build_tree(px, py, mass):
    """Array quadtree; leaves chain points, inner cells hold mass aggregates."""
    n = px.shape[0]
    cap = 4 * n + 64
    cell_cx = np.zeros(cap)
    cell_cy = np.zeros(cap)
    cell_half = np.zeros(cap)
    cell_mass = np.zeros(cap)
    cell_comx = np.zeros(cap)
    cell_comy = np.zeros(cap)
    cell_child = np.full((cap, 4), -1, np.int64)
    cell_head = np.full(cap, -1, np.int64)
    cell_leaf = np.ones(cap, np.uint8)
    point_next = np.full(n, -1, np.int64)

    minx = px[0]
    maxx = px[0]
    miny = py[0]
    maxy = py[0]
    for i in range(1, n):
        if px[i] < minx:
            minx = px[i]
        if px[i] > maxx:
            maxx = px[i]
        if py[i] < miny:
            miny = py[i]
        if py[i] > maxy:
            maxy = py[i]
    side = maxx - minx
    if maxy - miny > side:
        side = maxy - miny
    if side <= 0.0:
        side = 1.0
    half = side * 0.5 + side * 1e-9 + 1e-12
    n_cells = 1
    cell_cx[0] = (minx + maxx) * 0.5
    cell_cy[0] = (miny + maxy) * 0.5
    cell_half[0] = half

    for i in range(n):
        c = 0
        depth = 0
        while True:
            cell_mass[c] += mass[i]
            cell_comx[c] += mass[i] * px[i]
            cell_comy[c] += mass[i] * py[i]
            if cell_leaf[c] == 1:
                if cell_head[c] == -1:
                    cell_head[c] = i
                    break
                if depth >= MAX_DEPTH or n_cells + 4 > cap:
                    # Bucket leaf: chain the point.
                    point_next[i] = cell_head[c]
                    cell_head[c] = i
                    break
                # Split: push existing chain one level down.
                base = n_cells
                n_cells += 4
                quarter = cell_half[c] * 0.5
                for q in range(4):
                    child = base + q
                    ox = quarter if (q & 1) == 1 else -quarter
                    oy = quarter if (q & 2) == 2 else -quarter
                    cell_cx[child] = cell_cx[c] + ox
                    cell_cy[child] = cell_cy[c] + oy
                    cell_half[child] = quarter
                    cell_child[c, q] = child
                cell_leaf[c] = 0
                j = cell_head[c]
                cell_head[c] = -1
                while j != -1:
                    nxt = point_next[j]
                    q = (1 if px[j] >= cell_cx[c] else 0) + (2 if py[j] >= cell_cy[c] else 0)
                    child = cell_child[c, q]
                    point_next[j] = cell_head[child]
                    cell_head[child] = j
                    cell_mass[child] += mass[j]
                    cell_comx[child] += mass[j] * px[j]
                    cell_comy[child] += mass[j] * py[j]
                    j = nxt
                # Fall through: continue descending with point i from c.
            q = (1 if px[i] >= cell_cx[c] else 0) + (2 if py[i] >= cell_cy[c] else 0)
            c = cell_child[c, q]
            depth += 1

    return (
        cell_cx,
        cell_cy,
        cell_half,
        cell_mass,
        cell_comx,
        cell_comy,
        cell_child,
        cell_head,
        cell_leaf,
        point_next,
        n_cells,
    )


@njit(cache=True)
def fa2_step(
    px,
    py,
    pfx,
    pfy,
    mass,
    size,
    pinned,
    edge_src,
    edge_dst,
    repulsion,
    gravity,
    gravity_x,
    gravity_y,
    theta,
    adjust_sizes,
    max_displacement,
    prev_speed,
    prev_efficiency,
):
    """One iteration in place; returns
    (speed, efficiency, mean_disp, total_swing, global_swing, global_traction)."""
    n = px.shape[0]
    fx = np.zeros(n)
    fy = np.zeros(n)

    if n > 1:
        (
            cell_cx,
            cell_cy,
            cell_half,
            cell_mass,
            cell_comx,
            cell_comy,
            cell_child,
            cell_head,
            cell_leaf,
            point_next,
            n_cells,
        ) = _build_tree(px, py, mass)
        stack = np.empty(4 * n + 64, np.int64)
        theta2 = theta * theta
        for i in range(n):
            top = 0
            stack[0] = 0
            top = 1
            while top > 0:
                top -= 1
                c = stack[top]
                if cell_mass[c] <= 0.0:
                    continue
                if cell_leaf[c] == 1:
                    j = cell_head[c]
                    while j != -1:
                        if j != i:
                            dx = px[i] - px[j]
                            dy = py[i] - py[j]
                            d2 = dx * dx + dy * dy
                            if d2 <= 0.0:
                                dx = 1e-9 * ((i % 8) + 1)
                                dy = 1e-9 * ((j % 8) + 1)
                                d2 = dx * dx + dy * dy
                            if adjust_sizes:
                                d = np.sqrt(d2)
                                gap = d - size[i] - size[j]
                                if gap > 0.0:
                                    coef = repulsion * mass[i] * mass[j] / gap / d
                                elif gap < 0.0:
                                    coef = 100.0 * repulsion * mass[i] * mass[j]
                                else:
                                    coef = 0.0
                            else:
                                coef = repulsion * mass[i] * mass[j] / d2
                            fx[i] += dx * coef
                            fy[i] += dy * coef
                        j = point_next[j]
                else:
                    comx = cell_comx[c] / cell_mass[c]
                    comy = cell_comy[c] / cell_mass[c]
                    dx = px[i] - comx
                    dy = py[i] - comy
                    d2 = dx * dx + dy * dy
                    width = cell_half[c] * 2.0
                    if width * width < theta2 * d2:
                        coef = repulsion * mass[i] * cell_mass[c] / d2
                        fx[i] += dx * coef
                        fy[i] += dy * coef
                    else:
                        for q in range(4):
                            child = cell_child[c, q]
                            if child != -1:
                                stack[top] = child
                                top += 1

    m = edge_src.shape[0]
    for e in range(m):
        s = edge_src[e]
        t = edge_dst[e]
        dx = px[s] - px[t]
        dy = py[s] - py[t]
        if adjust_sizes:
            d2 = dx * dx + dy * dy
            if d2 > 0.0:
                d = np.sqrt(d2)
                gap = d - size[s] - size[t]
                if gap > 0.0:
                    factor = -gap / d
                    fx[s] += dx * factor
                    fy[s] += dy * factor
                    fx[t] -= dx * factor
                    fy[t] -= dy * factor
        else:
            fx[s] -= dx
            fy[s] -= dy
            fx[t] += dx
            fy[t] += dy

    for i in range(n):
        dx = gravity_x - px[i]
        dy = gravity_y - py[i]
        d = np.sqrt(dx * dx + dy * dy)
        if d > 0.0:
            coef = gravity * mass[i] / d
            fx[i] += dx * coef
            fy[i] += dy * coef

    # Adaptive speed governor (swing vs traction, with an efficiency term that
    # cools the system down when oscillation dominates).
    global_swing = 0.0
    global_traction = 0.0
    n_free = 0
    for i in range(n):
        if pinned[i]:
            continue
        n_free += 1
        swx = fx[i] - pfx[i]
        swy = fy[i] - pfy[i]
        swing = np.sqrt(swx * swx + swy * swy)
        trx = fx[i] + pfx[i]
        try_ = fy[i] + pfy[i]
        traction = 0.5 * np.sqrt(trx * trx + try_ * try_)
        global_swing += mass[i] * swing
        global_traction += mass[i] * traction
    if global_traction < 1e-18:
        global_traction = 1e-18
    # Proportional swing floor: bounds the speed target when the system is
    # perfectly calm (a lone drifting node would otherwise snowball and
    # overshoot its target).
    if global_swing < 0.1 * global_traction:
        global_swing = 0.1 * global_traction
    if global_swing < 1e-18:
        global_swing = 1e-18

    efficiency = prev_efficiency
    estimated_jt = 0.05 * np.sqrt(float(max(n_free, 1)))
    min_jt = np.sqrt(estimated_jt)
    max_jt = 10.0
    jt_mid = estimated_jt * global_traction / float(max(n_free, 1) * max(n_free, 1))
    if jt_mid < min_jt:
        jt_mid = min_jt
    if jt_mid > max_jt:
        jt_mid = max_jt
    jt = TOLERANCE * jt_mid
    min_efficiency = 0.05
    if global_swing / global_traction > 2.0:
        if efficiency > min_efficiency:
            efficiency *= 0.5
        if jt < TOLERANCE:
            jt = TOLERANCE
    target_speed = jt * efficiency * global_traction / global_swing
    if global_swing > jt * global_traction:
        if efficiency > min_efficiency:
            efficiency *= 0.7
        elif prev_speed < 1000.0:
            efficiency *= 1.3
    if efficiency > 1.0:
        efficiency = 1.0
    rise = target_speed - prev_speed
    if rise > 0.5 * prev_speed:
        rise = 0.5 * prev_speed
    global_speed = prev_speed + rise
    if global_speed < 1e-6:
        global_speed = 1e-6

    total_swing = 0.0
    sum_disp = 0.0
    moved = 0
    for i in range(n):
        if pinned[i]:
            pfx[i] = fx[i]
            pfy[i] = fy[i]
            continue
        swx = fx[i] - pfx[i]
        swy = fy[i] - pfy[i]
        swing = np.sqrt(swx * swx + swy * swy)
        total_swing += swing
        local_speed = global_speed / (1.0 + np.sqrt(global_speed * swing))
        dx = fx[i] * local_speed
        dy = fy[i] * local_speed
        disp = np.sqrt(dx * dx + dy * dy)
        if disp > max_displacement:
            ratio = max_displacement / disp
            dx *= ratio
            dy *= ratio
            disp = max_displacement
        px[i] += dx
        py[i] += dy
        sum_disp += disp
        moved += 1
        pfx[i] = fx[i]
        pfy[i] = fy[i]

    mean_disp = sum_disp / moved if moved > 0 else 0.0
    return global_speed, efficiency, mean_disp, total_swing, global_swing, global_traction


def fa2_step_reference(
    px,
    py,
    pfx,
    pfy,
    mass,
    size,
    pinned,
    edge_src,
    edge_dst,
    repulsion,
    gravity,
    gravity_x,
    gravity_y,
    adjust_sizes,
    max_displacement,
    prev_speed,
    prev_efficiency,
):
    """Pure-Python exact O(n^2) mirror of fa2_step, for cross-checking."""
    n = len(px)
    fx = [0.0] * n
    fy = [0.0] * n
    import math

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dx = px[i] - px[j]
            dy = py[i] - py[j]
            d2 = dx * dx + dy * dy
            if d2 <= 0.0:
                dx = 1e-9 * ((i % 8) + 1)
                dy = 1e-9 * ((j % 8) + 1)
                d2 = dx * dx + dy * dy
            if adjust_sizes:
                d = math.sqrt(d2)
                gap = d - size[i] - size[j]
                if gap > 0.0:
                    coef = repulsion * mass[i] * mass[j] / gap / d
                elif gap < 0.0:
                    coef = 100.0 * repulsion * mass[i] * mass[j]
                else:
                    coef = 0.0
            else:
                coef = repulsion * mass[i] * mass[j] / d2
            fx[i] += dx * coef
            fy[i] += dy * coef
    for s, t in zip(edge_src, edge_dst):
        dx = px[s] - px[t]
        dy = py[s] - py[t]
        if adjust_sizes:
            d2 = dx * dx + dy * dy
            if d2 > 0.0:
                d = math.sqrt(d2)
                gap = d - size[s] - size[t]
                if gap > 0.0:
                    factor = -gap / d
                    fx[s] += dx * factor
                    fy[s] += dy * factor
                    fx[t] -= dx * factor
                    fy[t] -= dy * factor
        else:
            fx[s] -= dx
            fy[s] -= dy
            fx[t] += dx
            fy[t] += dy
    for i in range(n):
        dx = gravity_x - px[i]
        dy = gravity_y - py[i]
        d = math.sqrt(dx * dx + dy * dy)
        if d > 0.0:
            coef = gravity * mass[i] / d
            fx[i] += dx * coef
            fy[i] += dy * coef

    global_swing = 0.0
    global_traction = 0.0
    n_free = 0
    for i in range(n):
        if pinned[i]:
            continue
        n_free += 1
        swing = math.hypot(fx[i] - pfx[i], fy[i] - pfy[i])
        traction = 0.5 * math.hypot(fx[i] + pfx[i], fy[i] + pfy[i])
        global_swing += mass[i] * swing
        global_traction += mass[i] * traction
    global_traction = max(global_traction, 1e-18)
    global_swing = max(global_swing, 0.1 * global_traction, 1e-18)

    efficiency = prev_efficiency
    estimated_jt = 0.05 * math.sqrt(float(max(n_free, 1)))
    jt_mid = estimated_jt * global_traction / float(max(n_free, 1) ** 2)
    jt_mid = min(max(jt_mid, math.sqrt(estimated_jt)), 10.0)
    jt = TOLERANCE * jt_mid
    if global_swing / global_traction > 2.0:
        if efficiency > 0.05:
            efficiency *= 0.5
        jt = max(jt, TOLERANCE)
    target_speed = jt * efficiency * global_traction / global_swing
    if global_swing > jt * global_traction:
        if efficiency > 0.05:
            efficiency *= 0.7
        elif prev_speed < 1000.0:
            efficiency *= 1.3
    efficiency = min(efficiency, 1.0)
    global_speed = prev_speed + min(target_speed - prev_speed, 0.5 * prev_speed)
    global_speed = max(global_speed, 1e-6)

    total_swing = 0.0
    sum_disp = 0.0
    moved = 0
    for i in range(n):
        if pinned[i]:
            pfx[i], pfy[i] = fx[i], fy[i]
            continue
        swing = math.hypot(fx[i] - pfx[i], fy[i] - pfy[i])
        total_swing += swing
        local_speed = global_speed / (1.0 + math.sqrt(global_speed * swing))
        dx = fx[i] * local_speed
        dy = fy[i] * local_speed
        disp = math.hypot(dx, dy)
        if disp > max_displacement:
            ratio = max_displacement / disp
            dx *= ratio
            dy *= ratio
            disp = max_displacement
        px[i] += dx
        py[i] += dy
        sum_disp += disp
        moved += 1
        pfx[i], pfy[i] = fx[i], fy[i]
    mean_disp = sum_disp / moved if moved else 0.0
    return global_speed, efficiency, mean_disp, total_swing, global_swing, global_traction
