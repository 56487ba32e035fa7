#!/usr/bin/env node
import { basename } from 'path';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';
import { writeFileAtomic } from './atomic.js';
import { readResiduals } from './csv.js';
import { renderResiduals } from './residuals.js';

export function main(argv: string[]): number {
  const args = yargs(argv)
    .usage('plot-residuals <csv>... --labels a,b --out plot.svg')
    .option('labels', {
      type: 'string',
      describe: 'comma-separated legend labels, one per input file',
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

  const files = args._.map(String);
  if (files.length === 0) {
    process.stderr.write('plot-residuals: no input files\n');
    return 2;
  }
  const labels = args.labels
    ? args.labels.split(',')
    : files.map((f) => basename(f, '.csv'));
  if (labels.length !== files.length) {
    process.stderr.write(`plot-residuals: ${labels.length} labels for ${files.length} files\n`);
    return 2;
  }
  try {
    const series = files.map(readResiduals);
    writeFileAtomic(args.out, renderResiduals(series, labels, { title: args.title }));
  } catch (err) {
    process.stderr.write(`plot-residuals: ${(err as Error).message}\n`);
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
    process.stderr.write(`plot-residuals: ${(err as Error).message}\n`);
    process.exit(2);
  }
}
