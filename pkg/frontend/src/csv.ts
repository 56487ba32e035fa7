import { readFileSync } from 'fs';
import Papa from 'papaparse';

export class CsvSchemaError extends Error {
  constructor(public file: string, detail: string) {
    super(`${file}: ${detail}`);
  }
}

export interface ResidualSeries {
  file: string;
  iterations: number[];
  residuals: number[];
}

export interface Snapshot {
  file: string;
  t: number;
  x: number[];
  /** variable name -> values on the spatial grid, in file order */
  vars: Map<string, number[]>;
}

function parseNumericTable(file: string): { header: string[]; rows: number[][] } {
  let text: string;
  try {
    text = readFileSync(file, 'utf8');
  } catch (err) {
    throw new CsvSchemaError(file, `cannot read file (${(err as Error).message})`);
  }
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new CsvSchemaError(file, `CSV parse error: ${parsed.errors[0].message}`);
  }
  const data = parsed.data;
  if (data.length < 2) {
    throw new CsvSchemaError(file, 'expected a header row and at least one data row');
  }
  const header = data[0];
  const rows: number[][] = [];
  for (let i = 1; i < data.length; i++) {
    const raw = data[i];
    if (raw.length !== header.length) {
      throw new CsvSchemaError(file, `row ${i} has ${raw.length} fields, header has ${header.length}`);
    }
    const row = raw.map(Number);
    const bad = row.findIndex((v) => !Number.isFinite(v));
    if (bad >= 0) {
      throw new CsvSchemaError(file, `row ${i}, column "${header[bad]}": not a finite number ("${raw[bad]}")`);
    }
    rows.push(row);
  }
  return { header, rows };
}

export function readResiduals(file: string): ResidualSeries {
  const { header, rows } = parseNumericTable(file);
  if (header[0] !== 'iteration' || header[1] !== 'relative_residual') {
    throw new CsvSchemaError(file, `expected header "iteration,relative_residual", got "${header.join(',')}"`);
  }
  const iterations = rows.map((r) => r[0]);
  const residuals = rows.map((r) => r[1]);
  if (residuals.some((v) => v <= 0)) {
    throw new CsvSchemaError(file, 'relative residuals must be positive for a semilog plot');
  }
  return { file, iterations, residuals };
}

export function readSnapshot(file: string): Snapshot {
  const { header, rows } = parseNumericTable(file);
  if (header[0] !== 'x' || header[1] !== 't') {
    throw new CsvSchemaError(file, `expected columns starting "x,t", got "${header.join(',')}"`);
  }
  if (header.length < 3) {
    throw new CsvSchemaError(file, 'snapshot has no variable columns');
  }
  const t = rows[0][1];
  if (rows.some((r) => r[1] !== t)) {
    throw new CsvSchemaError(file, 'a snapshot must hold a single time value');
  }
  const vars = new Map<string, number[]>();
  for (let j = 2; j < header.length; j++) {
    vars.set(header[j], rows.map((r) => r[j]));
  }
  return { file, t, x: rows.map((r) => r[0]), vars };
}
