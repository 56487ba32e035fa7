import { mkdirSync, renameSync, writeFileSync } from 'fs';
import { dirname, join } from 'path';

/** Write-then-rename so readers never observe a half-written image. */
export function writeFileAtomic(path: string, content: string): void {
  const dir = dirname(path);
  mkdirSync(dir, { recursive: true });
  const tmp = join(dir, `.${process.pid}.${Date.now()}.tmp`);
  writeFileSync(tmp, content);
  renameSync(tmp, path);
}
