// Force-model kernel: an operation-for-operation port of the pipeline's
// Barnes-Hut iteration, so positions agree with the CLI snapshot to within
// floating-point echo for identical inputs.

const MAX_DEPTH = 40;
const TOLERANCE = 1.0;

export interface StepResult {
  globalSpeed: number;
  efficiency: number;
  meanDisp: number;
  totalSwing: number;
  globalSwing: number;
  globalTraction: number;
}

export function fa2Step(
  px: Float64Array,
  py: Float64Array,
  pfx: Float64Array,
  pfy: Float64Array,
  mass: Float64Array,
  size: Float64Array,
  pinned: Uint8Array,
  edgeSrc: Int32Array,
  edgeDst: Int32Array,
  repulsion: number,
  gravity: number,
  gravityX: number,
  gravityY: number,
  theta: number,
  adjustSizes: boolean,
  maxDisplacement: number,
  prevSpeed: number,
  prevEfficiency: number,
): StepResult {
  const n = px.length;
  const fx = new Float64Array(n);
  const fy = new Float64Array(n);

  if (n > 1) {
    const cap = 4 * n + 64;
    const cellCx = new Float64Array(cap);
    const cellCy = new Float64Array(cap);
    const cellHalf = new Float64Array(cap);
    const cellMass = new Float64Array(cap);
    const cellComx = new Float64Array(cap);
    const cellComy = new Float64Array(cap);
    const cellChild = new Int32Array(cap * 4).fill(-1);
    const cellHead = new Int32Array(cap).fill(-1);
    const cellLeaf = new Uint8Array(cap).fill(1);
    const pointNext = new Int32Array(n).fill(-1);

    let minx = px[0], maxx = px[0], miny = py[0], maxy = py[0];
    for (let i = 1; i < n; i++) {
      if (px[i] < minx) minx = px[i];
      if (px[i] > maxx) maxx = px[i];
      if (py[i] < miny) miny = py[i];
      if (py[i] > maxy) maxy = py[i];
    }
    let side = maxx - minx;
    if (maxy - miny > side) side = maxy - miny;
    if (side <= 0) side = 1;
    const half = side * 0.5 + side * 1e-9 + 1e-12;
    let nCells = 1;
    cellCx[0] = (minx + maxx) * 0.5;
    cellCy[0] = (miny + maxy) * 0.5;
    cellHalf[0] = half;

    for (let i = 0; i < n; i++) {
      let c = 0;
      let depthCount = 0;
      for (;;) {
        cellMass[c] += mass[i];
        cellComx[c] += mass[i] * px[i];
        cellComy[c] += mass[i] * py[i];
        if (cellLeaf[c] === 1) {
          if (cellHead[c] === -1) {
            cellHead[c] = i;
            break;
          }
          if (depthCount >= MAX_DEPTH || nCells + 4 > cap) {
            pointNext[i] = cellHead[c];
            cellHead[c] = i;
            break;
          }
          const base = nCells;
          nCells += 4;
          const quarter = cellHalf[c] * 0.5;
          for (let q = 0; q < 4; q++) {
            const child = base + q;
            const ox = (q & 1) === 1 ? quarter : -quarter;
            const oy = (q & 2) === 2 ? quarter : -quarter;
            cellCx[child] = cellCx[c] + ox;
            cellCy[child] = cellCy[c] + oy;
            cellHalf[child] = quarter;
            cellChild[c * 4 + q] = child;
          }
          cellLeaf[c] = 0;
          let j = cellHead[c];
          cellHead[c] = -1;
          while (j !== -1) {
            const nxt = pointNext[j];
            const q = (px[j] >= cellCx[c] ? 1 : 0) + (py[j] >= cellCy[c] ? 2 : 0);
            const child = cellChild[c * 4 + q];
            pointNext[j] = cellHead[child];
            cellHead[child] = j;
            cellMass[child] += mass[j];
            cellComx[child] += mass[j] * px[j];
            cellComy[child] += mass[j] * py[j];
            j = nxt;
          }
          // fall through: keep descending with point i from c
        }
        const q = (px[i] >= cellCx[c] ? 1 : 0) + (py[i] >= cellCy[c] ? 2 : 0);
        c = cellChild[c * 4 + q];
        depthCount += 1;
      }
    }

    const stack = new Int32Array(cap);
    const theta2 = theta * theta;
    for (let i = 0; i < n; i++) {
      stack[0] = 0;
      let top = 1;
      while (top > 0) {
        top -= 1;
        const c = stack[top];
        if (cellMass[c] <= 0) continue;
        if (cellLeaf[c] === 1) {
          let j = cellHead[c];
          while (j !== -1) {
            if (j !== i) {
              let dx = px[i] - px[j];
              let dy = py[i] - py[j];
              let d2 = dx * dx + dy * dy;
              if (d2 <= 0) {
                dx = 1e-9 * ((i % 8) + 1);
                dy = 1e-9 * ((j % 8) + 1);
                d2 = dx * dx + dy * dy;
              }
              let coef: number;
              if (adjustSizes) {
                const d = Math.sqrt(d2);
                const gap = d - size[i] - size[j];
                if (gap > 0) coef = (repulsion * mass[i] * mass[j]) / gap / d;
                else if (gap < 0) coef = 100 * repulsion * mass[i] * mass[j];
                else coef = 0;
              } else {
                coef = (repulsion * mass[i] * mass[j]) / d2;
              }
              fx[i] += dx * coef;
              fy[i] += dy * coef;
            }
            j = pointNext[j];
          }
        } else {
          const comx = cellComx[c] / cellMass[c];
          const comy = cellComy[c] / cellMass[c];
          const dx = px[i] - comx;
          const dy = py[i] - comy;
          const d2 = dx * dx + dy * dy;
          const width = cellHalf[c] * 2;
          if (width * width < theta2 * d2) {
            const coef = (repulsion * mass[i] * cellMass[c]) / d2;
            fx[i] += dx * coef;
            fy[i] += dy * coef;
          } else {
            for (let q = 0; q < 4; q++) {
              const child = cellChild[c * 4 + q];
              if (child !== -1) {
                stack[top] = child;
                top += 1;
              }
            }
          }
        }
      }
    }
  }

  const m = edgeSrc.length;
  for (let e = 0; e < m; e++) {
    const s = edgeSrc[e];
    const t = edgeDst[e];
    const dx = px[s] - px[t];
    const dy = py[s] - py[t];
    if (adjustSizes) {
      const d2 = dx * dx + dy * dy;
      if (d2 > 0) {
        const d = Math.sqrt(d2);
        const gap = d - size[s] - size[t];
        if (gap > 0) {
          const factor = -gap / d;
          fx[s] += dx * factor;
          fy[s] += dy * factor;
          fx[t] -= dx * factor;
          fy[t] -= dy * factor;
        }
      }
    } else {
      fx[s] -= dx;
      fy[s] -= dy;
      fx[t] += dx;
      fy[t] += dy;
    }
  }

  for (let i = 0; i < n; i++) {
    const dx = gravityX - px[i];
    const dy = gravityY - py[i];
    const d = Math.sqrt(dx * dx + dy * dy);
    if (d > 0) {
      const coef = (gravity * mass[i]) / d;
      fx[i] += dx * coef;
      fy[i] += dy * coef;
    }
  }

  let globalSwing = 0;
  let globalTraction = 0;
  let nFree = 0;
  for (let i = 0; i < n; i++) {
    if (pinned[i]) continue;
    nFree += 1;
    const swx = fx[i] - pfx[i];
    const swy = fy[i] - pfy[i];
    const swing = Math.sqrt(swx * swx + swy * swy);
    const trx = fx[i] + pfx[i];
    const tryy = fy[i] + pfy[i];
    const traction = 0.5 * Math.sqrt(trx * trx + tryy * tryy);
    globalSwing += mass[i] * swing;
    globalTraction += mass[i] * traction;
  }
  if (globalTraction < 1e-18) globalTraction = 1e-18;
  if (globalSwing < 0.1 * globalTraction) globalSwing = 0.1 * globalTraction;
  if (globalSwing < 1e-18) globalSwing = 1e-18;

  let efficiency = prevEfficiency;
  const freeCount = Math.max(nFree, 1);
  const estimatedJt = 0.05 * Math.sqrt(freeCount);
  const minJt = Math.sqrt(estimatedJt);
  const maxJt = 10;
  let jtMid = (estimatedJt * globalTraction) / (freeCount * freeCount);
  if (jtMid < minJt) jtMid = minJt;
  if (jtMid > maxJt) jtMid = maxJt;
  let jt = TOLERANCE * jtMid;
  const minEfficiency = 0.05;
  if (globalSwing / globalTraction > 2.0) {
    if (efficiency > minEfficiency) efficiency *= 0.5;
    if (jt < TOLERANCE) jt = TOLERANCE;
  }
  const targetSpeed = (jt * efficiency * globalTraction) / globalSwing;
  if (globalSwing > jt * globalTraction) {
    if (efficiency > minEfficiency) efficiency *= 0.7;
    else if (prevSpeed < 1000) efficiency *= 1.3;
  }
  if (efficiency > 1) efficiency = 1;
  let rise = targetSpeed - prevSpeed;
  if (rise > 0.5 * prevSpeed) rise = 0.5 * prevSpeed;
  let globalSpeed = prevSpeed + rise;
  if (globalSpeed < 1e-6) globalSpeed = 1e-6;

  let totalSwing = 0;
  let sumDisp = 0;
  let moved = 0;
  for (let i = 0; i < n; i++) {
    if (pinned[i]) {
      pfx[i] = fx[i];
      pfy[i] = fy[i];
      continue;
    }
    const swx = fx[i] - pfx[i];
    const swy = fy[i] - pfy[i];
    const swing = Math.sqrt(swx * swx + swy * swy);
    totalSwing += swing;
    const localSpeed = globalSpeed / (1 + Math.sqrt(globalSpeed * swing));
    let dx = fx[i] * localSpeed;
    let dy = fy[i] * localSpeed;
    let disp = Math.sqrt(dx * dx + dy * dy);
    if (disp > maxDisplacement) {
      const ratio = maxDisplacement / disp;
      dx *= ratio;
      dy *= ratio;
      disp = maxDisplacement;
    }
    px[i] += dx;
    py[i] += dy;
    sumDisp += disp;
    moved += 1;
    pfx[i] = fx[i];
    pfy[i] = fy[i];
  }

  return {
    globalSpeed,
    efficiency,
    meanDisp: moved > 0 ? sumDisp / moved : 0,
    totalSwing,
    globalSwing,
    globalTraction,
  };
}
