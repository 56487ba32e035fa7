import { existsSync, mkdtempSync, readFileSync, readdirSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { describe, expect, it } from 'vitest';
import { main as contourMain } from '../src/cli-contour.js';
import { main as residualsMain } from '../src/cli-residuals.js';

function workdir(): string {
  return mkdtempSync(join(tmpdir(), 'plots-cli-'));
}

const RESIDUALS = 'iteration,relative_residual\n0,1\n1,1e-4\n2,1e-9\n';

describe('plot-residuals CLI', () => {
  it('writes an SVG and returns 0', () => {
    const dir = workdir();
    const csv = join(dir, 'residuals.csv');
    writeFileSync(csv, RESIDUALS);
    const out = join(dir, 'plot.svg');
    expect(residualsMain([csv, '--out', out])).toBe(0);
    expect(readFileSync(out, 'utf8')).toContain('<svg');
    // atomic write leaves no temp files behind
    expect(readdirSync(dir).filter((f) => f.endsWith('.tmp'))).toHaveLength(0);
  });

  it('overlays several files with labels', () => {
    const dir = workdir();
    const a = join(dir, 'a.csv');
    const b = join(dir, 'b.csv');
    writeFileSync(a, RESIDUALS);
    writeFileSync(b, 'iteration,relative_residual\n0,1\n1,1e-2\n');
    const out = join(dir, 'plot.svg');
    expect(residualsMain([a, b, '--labels', 'nx=256,nx=512', '--out', out])).toBe(0);
    expect(readFileSync(out, 'utf8')).toContain('nx=512');
  });

  it('exits nonzero on malformed input and writes nothing', () => {
    const dir = workdir();
    const csv = join(dir, 'residuals.csv');
    writeFileSync(csv, 'iteration,relative_residual\n0,not-a-number\n');
    const out = join(dir, 'plot.svg');
    expect(residualsMain([csv, '--out', out])).not.toBe(0);
    expect(existsSync(out)).toBe(false);
  });

  it('exits nonzero with no inputs', () => {
    expect(residualsMain(['--out', join(workdir(), 'p.svg')])).toBe(2);
  });

  it('exits nonzero on a label count mismatch', () => {
    const dir = workdir();
    const csv = join(dir, 'residuals.csv');
    writeFileSync(csv, RESIDUALS);
    expect(residualsMain([csv, '--labels', 'a,b', '--out', join(dir, 'p.svg')])).toBe(2);
  });
});

describe('plot-contour CLI', () => {
  it('renders snapshots from a directory and returns 0', () => {
    const dir = workdir();
    writeFileSync(join(dir, 'snapshot_0.csv'), 'x,t,p,u\n0.25,0,1,0\n0.75,0,2,0\n');
    writeFileSync(join(dir, 'snapshot_1.csv'), 'x,t,p,u\n0.25,1,2,0\n0.75,1,1,0\n');
    const out = join(dir, 'contour.svg');
    expect(contourMain(['--dir', dir, '--var', 'p', '--out', out])).toBe(0);
    expect(readFileSync(out, 'utf8')).toContain('<svg');
  });

  it('exits nonzero when the variable is missing', () => {
    const dir = workdir();
    writeFileSync(join(dir, 'snapshot_0.csv'), 'x,t,p\n0.25,0,1\n');
    expect(contourMain(['--dir', dir, '--var', 'rho', '--out', join(dir, 'c.svg')])).toBe(1);
  });

  it('exits nonzero on an empty directory', () => {
    const dir = workdir();
    expect(contourMain(['--dir', dir, '--var', 'p', '--out', join(dir, 'c.svg')])).toBe(1);
  });

  it('exits nonzero on a corrupt snapshot', () => {
    const dir = workdir();
    writeFileSync(join(dir, 'snapshot_0.csv'), 'x,t,p\n0.25,0\n');
    expect(contourMain(['--dir', dir, '--var', 'p', '--out', join(dir, 'c.svg')])).toBe(1);
  });
});
