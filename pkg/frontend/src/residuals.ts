import { ResidualSeries } from './csv.js';
import {
  DEFAULT_MARGINS,
  SERIES_COLORS,
  SvgScene,
  decadeTicks,
  linearTicks,
  scaleLinear,
} from './svg.js';

export interface ResidualPlotOptions {
  width?: number;
  height?: number;
  title?: string;
}

/** Semilog-y convergence plot: one line per series, legend from labels. */
export function renderResiduals(
  series: ResidualSeries[],
  labels: string[],
  opts: ResidualPlotOptions = {},
): string {
  if (series.length === 0) {
    throw new Error('no residual series to plot');
  }
  if (labels.length !== series.length) {
    throw new Error(`got ${labels.length} labels for ${series.length} series`);
  }
  const width = opts.width ?? 640;
  const height = opts.height ?? 480;
  const m = DEFAULT_MARGINS;

  const maxIt = Math.max(...series.map((s) => Math.max(...s.iterations)));
  const logs = series.flatMap((s) => s.residuals.map((v) => Math.log10(v)));
  let lo = Math.floor(Math.min(...logs));
  let hi = Math.ceil(Math.max(...logs));
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }

  const sx = scaleLinear(0, Math.max(maxIt, 1), m.left, width - m.right);
  const sy = scaleLinear(lo, hi, height - m.bottom, m.top);
  const scene = new SvgScene(width, height);

  // frame and grid
  for (const e of decadeTicks(lo, hi)) {
    const y = sy(e);
    scene.line(m.left, y, width - m.right, y, '#dddddd');
    scene.text(m.left - 8, y + 4, `1e${e}`, { anchor: 'end', size: 11 });
  }
  for (const t of linearTicks(0, Math.max(maxIt, 1))) {
    const x = sx(t);
    scene.line(x, height - m.bottom, x, height - m.bottom + 5, '#000000');
    scene.text(x, height - m.bottom + 18, String(t), { size: 11 });
  }
  scene.line(m.left, m.top, m.left, height - m.bottom, '#000000');
  scene.line(m.left, height - m.bottom, width - m.right, height - m.bottom, '#000000');
  scene.text((m.left + width - m.right) / 2, height - 12, 'iteration');
  scene.text(16, (m.top + height - m.bottom) / 2, 'relative residual', { rotate: -90 });
  if (opts.title) {
    scene.text((m.left + width - m.right) / 2, 18, opts.title, { size: 14 });
  }

  series.forEach((s, i) => {
    const color = SERIES_COLORS[i % SERIES_COLORS.length];
    const points = s.iterations.map(
      (it, k) => [sx(it), sy(Math.log10(s.residuals[k]))] as [number, number],
    );
    scene.polyline(points, color);
    const ly = m.top + 16 + 16 * i;
    scene.line(width - m.right - 150, ly - 4, width - m.right - 120, ly - 4, color, 2);
    scene.text(width - m.right - 114, ly, labels[i], { anchor: 'start', size: 11 });
  });

  return scene.render();
}
