/** Minimal SVG scene assembly: enough primitives for line plots and
 * cell-centered heatmaps without a canvas dependency. */

export interface Margins {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_MARGINS: Margins = { left: 70, right: 20, top: 30, bottom: 50 };

export const SERIES_COLORS = [
  '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
  '#8c564b', '#e377c2', '#7f7f7f', '#bcbd22', '#17becf',
];

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export class SvgScene {
  private parts: string[] = [];

  constructor(public width: number, public height: number) {}

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, widthPx = 1): void {
    this.add(`<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${widthPx}"/>`);
  }

  polyline(points: Array<[number, number]>, stroke: string, widthPx = 1.5): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(' ');
    this.add(`<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${widthPx}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.add(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, s: string, opts: { anchor?: string; size?: number; rotate?: number } = {}): void {
    const anchor = opts.anchor ?? 'middle';
    const size = opts.size ?? 12;
    const transform = opts.rotate ? ` transform="rotate(${opts.rotate} ${fmt(x)} ${fmt(y)})"` : '';
    this.add(`<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}" font-size="${size}" font-family="sans-serif"${transform}>${escapeXml(s)}</text>`);
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">`,
      `<rect x="0" y="0" width="${this.width}" height="${this.height}" fill="white"/>`,
      ...this.parts,
      '</svg>',
    ].join('\n');
  }
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(2);
}

/** Linear map from a data interval onto a pixel interval. */
export function scaleLinear(d0: number, d1: number, p0: number, p1: number): (v: number) => number {
  const span = d1 - d0 || 1;
  return (v: number) => p0 + ((v - d0) / span) * (p1 - p0);
}

/** "Nice" round tick positions covering [lo, hi]. */
export function linearTicks(lo: number, hi: number, target = 6): number[] {
  const span = hi - lo || 1;
  const rawStep = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => span / s <= target) ?? candidates[3];
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

/** Decade ticks for a log axis over [lo, hi] in log10 units. */
export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const step = Math.max(1, Math.ceil((hi - lo) / 8));
  for (let e = Math.ceil(lo); e <= Math.floor(hi + 1e-12); e += step) {
    ticks.push(e);
  }
  return ticks;
}

/** Blue-white-red diverging colormap on [0, 1]. */
export function diverging(u: number): string {
  const v = Math.min(1, Math.max(0, u));
  let r: number;
  let g: number;
  let b: number;
  if (v < 0.5) {
    const s = v / 0.5;
    r = 59 + s * (255 - 59);
    g = 76 + s * (255 - 76);
    b = 192 + s * (255 - 192);
  } else {
    const s = (v - 0.5) / 0.5;
    r = 255 - s * (255 - 180);
    g = 255 - s * (255 - 4);
    b = 255 - s * (255 - 38);
  }
  return `rgb(${Math.round(r)},${Math.round(g)},${Math.round(b)})`;
}
