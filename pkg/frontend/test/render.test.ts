import { describe, expect, it } from 'vitest';
import { Snapshot } from '../src/csv.js';
import { renderContour } from '../src/contour.js';
import { renderResiduals } from '../src/residuals.js';

function series(file: string, residuals: number[]) {
  return { file, iterations: residuals.map((_, i) => i), residuals };
}

function snap(t: number, x: number[], vars: Record<string, number[]>): Snapshot {
  return { file: `snapshot_${t}.csv`, t, x, vars: new Map(Object.entries(vars)) };
}

describe('renderResiduals', () => {
  it('draws one polyline per series with its legend label', () => {
    const svg = renderResiduals(
      [series('a.csv', [1, 1e-3, 1e-6]), series('b.csv', [1, 1e-2, 1e-4])],
      ['nx=256', 'nx=512'],
    );
    expect(svg.startsWith('<svg')).toBe(true);
    expect(svg.match(/<polyline/g)).toHaveLength(2);
    expect(svg).toContain('nx=256');
    expect(svg).toContain('nx=512');
    expect(svg).toContain('1e-6');
  });

  it('renders a 3-row file as a 3-point line', () => {
    const svg = renderResiduals([series('a.csv', [1, 0.1, 0.01])], ['run']);
    const points = svg.match(/<polyline points="([^"]*)"/)![1];
    expect(points.split(' ')).toHaveLength(3);
  });

  it('escapes markup in labels', () => {
    const svg = renderResiduals([series('a.csv', [1, 0.5])], ['<b>&x</b>']);
    expect(svg).not.toContain('<b>');
    expect(svg).toContain('&lt;b&gt;');
  });

  it('refuses mismatched label counts', () => {
    expect(() => renderResiduals([series('a.csv', [1])], ['p', 'q']))
      .toThrow(/labels/);
  });
});

describe('renderContour', () => {
  it('renders a constant field as a single color', () => {
    const svg = renderContour(
      [snap(0, [0.25, 0.75], { p: [2, 2] }),
       snap(1, [0.25, 0.75], { p: [2, 2] })],
      'p',
    );
    const fills = [...svg.matchAll(/<rect [^>]*fill="(rgb[^"]*)"/g)]
      .map((m) => m[1]);
    // field tiles all share one color (the colorbar rects vary)
    expect(new Set(fills.slice(0, 4)).size).toBe(1);
  });

  it('maps low and high values to different colors', () => {
    const svg = renderContour([snap(0, [0.25, 0.75], { p: [0, 1] })], 'p');
    const fills = [...svg.matchAll(/<rect [^>]*fill="(rgb[^"]*)"/g)]
      .map((m) => m[1]);
    expect(fills[0]).not.toBe(fills[1]);
  });

  it('rejects snapshots on different grids', () => {
    expect(() => renderContour(
      [snap(0, [0.25, 0.75], { p: [1, 2] }),
       snap(1, [0.2, 0.8], { p: [1, 2] })],
      'p',
    )).toThrow(/grid/);
  });

  it('rejects a missing variable with the available names', () => {
    expect(() => renderContour([snap(0, [0.5], { p: [1] })], 'rho'))
      .toThrow(/no column "rho".*p/);
  });
});
