import { Snapshot } from './csv.js';
import {
  DEFAULT_MARGINS,
  SvgScene,
  diverging,
  linearTicks,
  scaleLinear,
} from './svg.js';

export interface ContourOptions {
  width?: number;
  height?: number;
  title?: string;
}

/** Space-time heatmap of one variable across a set of snapshots.
 * Snapshots must share the spatial grid; they are sorted by time. */
export function renderContour(
  snapshots: Snapshot[],
  variable: string,
  opts: ContourOptions = {},
): string {
  if (snapshots.length === 0) {
    throw new Error('no snapshots to plot');
  }
  const sorted = [...snapshots].sort((a, b) => a.t - b.t);
  const x = sorted[0].x;
  for (const s of sorted) {
    if (s.x.length !== x.length || s.x.some((v, i) => v !== x[i])) {
      throw new Error(`${s.file}: spatial grid differs from ${sorted[0].file}`);
    }
    if (!s.vars.has(variable)) {
      throw new Error(`${s.file}: no column "${variable}" (have: ${[...s.vars.keys()].join(', ')})`);
    }
  }

  const width = opts.width ?? 640;
  const height = opts.height ?? 480;
  const m = { ...DEFAULT_MARGINS, right: 90 };

  const values = sorted.map((s) => s.vars.get(variable)!);
  let vmin = Infinity;
  let vmax = -Infinity;
  for (const row of values) {
    for (const v of row) {
      if (v < vmin) vmin = v;
      if (v > vmax) vmax = v;
    }
  }
  if (vmin === vmax) {
    // constant field: render a single color, centered in the map
    vmin -= 0.5;
    vmax += 0.5;
  }

  const times = sorted.map((s) => s.t);
  const t0 = times[0];
  const t1 = times[times.length - 1];
  const h = x.length > 1 ? x[1] - x[0] : 1;
  const x0 = x[0] - h / 2;
  const x1 = x[x.length - 1] + h / 2;

  const sx = scaleLinear(x0, x1, m.left, width - m.right);
  const sy = scaleLinear(t0, t1 === t0 ? t0 + 1 : t1, height - m.bottom, m.top);
  const scene = new SvgScene(width, height);

  // cell-centered tiles; each snapshot row spans to the midpoint of the
  // neighboring snapshot times
  for (let n = 0; n < sorted.length; n++) {
    const tLo = n === 0 ? times[0] : (times[n - 1] + times[n]) / 2;
    const tHi = n === sorted.length - 1 ? times[n] : (times[n] + times[n + 1]) / 2;
    const yTop = sy(tHi);
    const yBot = sy(tLo === tHi ? tLo - 1 : tLo);
    const rowH = Math.max(yBot - yTop, 1);
    for (let i = 0; i < x.length; i++) {
      const u = (values[n][i] - vmin) / (vmax - vmin);
      const px = sx(x[i] - h / 2);
      const pw = sx(x[i] + h / 2) - px;
      scene.rect(px, yTop, pw + 0.5, rowH + 0.5, diverging(u));
    }
  }

  scene.line(m.left, m.top, m.left, height - m.bottom, '#000000');
  scene.line(m.left, height - m.bottom, width - m.right, height - m.bottom, '#000000');
  for (const tick of linearTicks(x0, x1)) {
    const px = sx(tick);
    scene.line(px, height - m.bottom, px, height - m.bottom + 5, '#000000');
    scene.text(px, height - m.bottom + 18, trim(tick), { size: 11 });
  }
  for (const tick of linearTicks(t0, t1 === t0 ? t0 + 1 : t1)) {
    const py = sy(tick);
    scene.line(m.left - 5, py, m.left, py, '#000000');
    scene.text(m.left - 8, py + 4, trim(tick), { anchor: 'end', size: 11 });
  }
  scene.text((m.left + width - m.right) / 2, height - 12, 'x');
  scene.text(16, (m.top + height - m.bottom) / 2, 't', { rotate: -90 });
  scene.text((m.left + width - m.right) / 2, 18, opts.title ?? variable, { size: 14 });

  // colorbar
  const cbX = width - m.right + 20;
  const cbW = 16;
  const steps = 64;
  const cbH = height - m.top - m.bottom;
  for (let k = 0; k < steps; k++) {
    const y = m.top + cbH - ((k + 1) * cbH) / steps;
    scene.rect(cbX, y, cbW, cbH / steps + 0.5, diverging((k + 0.5) / steps));
  }
  scene.text(cbX + cbW / 2, m.top - 6, trim(vmax), { size: 10 });
  scene.text(cbX + cbW / 2, m.top + cbH + 14, trim(vmin), { size: 10 });

  return scene.render();
}

function trim(v: number): string {
  const s = v.toPrecision(4);
  return String(Number(s));
}
