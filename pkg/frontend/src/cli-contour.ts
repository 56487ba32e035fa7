#!/usr/bin/env node
import { readdirSync } from 'fs';
import { basename, join } from 'path';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { writeFileAtomic } from './atomic.js';
import { readSnapshot } from './csv.js';
import { renderContour } from './contour.js';

export function main(argv: string[]): number {
  const args = yargs(argv)
    .usage('plot-contour --dir DIR --var NAME --out plot.svg')
    .option('dir', {
      type: 'string',
      demandOption: true,
      describe: 'directory holding snapshot_<t>.csv files',
    })
    .option('var', {
      type: 'string',
      demandOption: true,
      describe: 'variable column to plot',
    })
    .option('out', {
      type: 'string',
      demandOption: true,
      describe: 'output SVG path',
    })
    .option('title', { type: 'string' })
    .exitProcess(false)
    .fail((msg) => {
      throw new Error(msg);
    })
    .parseSync();

  let files: string[];
  try {
    files = readdirSync(args.dir)
      .filter((f) => /^snapshot_.*\.csv$/.test(f))
      .map((f) => join(args.dir, f));
  } catch (err) {
    process.stderr.write(`plot-contour: ${(err as Error).message}\n`);
    return 1;
  }
  if (files.length === 0) {
    process.stderr.write(`plot-contour: no snapshot_*.csv files in ${args.dir}\n`);
    return 1;
  }
  try {
    const snapshots = files.map(readSnapshot);
    writeFileAtomic(args.out, renderContour(snapshots, args.var, { title: args.title }));
  } catch (err) {
    process.stderr.write(`plot-contour: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

const invokedDirectly = process.argv[1] !== undefined
  && import.meta.url.endsWith(basename(process.argv[1]));
if (invokedDirectly) {
  try {
    process.exit(main(hideBin(process.argv)));
  } catch (err) {
    process.stderr.write(`plot-contour: ${(err as Error).message}\n`);
    process.exit(2);
  }
}
