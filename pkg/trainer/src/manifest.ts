// JSONL dataset manifests: one meta record on line 1, one image entry per
// line after that. Image paths are relative to the manifest's directory.

import * as fs from 'node:fs';
import * as path from 'node:path';

export interface ManifestMeta {
  version: string;
  classes: string[];
}

export interface ManifestEntry {
  path: string;
  sourceId: string;
  label: string;
  lineage: string;
  width: number;
  height: number;
}

export interface Manifest {
  meta: ManifestMeta;
  entries: ManifestEntry[];
  /** absolute directory that entry paths are resolved against */
  dir: string;
}

function fail(file: string, lineno: number, msg: string): never {
  throw new Error(`${file}:${lineno}: ${msg}`);
}

export function readManifest(manifestPath: string): Manifest {
  const abs = path.resolve(manifestPath);
  let text: string;
  try {
    text = fs.readFileSync(abs, 'utf-8');
  } catch (err) {
    throw new Error(`cannot read manifest ${manifestPath}: ${(err as Error).message}`);
  }
  const lines = text.split('\n').filter((l) => l.trim().length > 0);
  if (lines.length === 0) throw new Error(`${manifestPath}: empty file`);

  let metaObj: Record<string, unknown>;
  try {
    metaObj = JSON.parse(lines[0]);
  } catch {
    fail(manifestPath, 1, 'first line is not valid JSON');
  }
  if (typeof metaObj.version !== 'string' || !Array.isArray(metaObj.classes)) {
    fail(manifestPath, 1, 'first line must be the meta record (version, classes)');
  }
  const classes = (metaObj.classes as unknown[]).map(String);
  if (classes.length < 2) fail(manifestPath, 1, `need at least 2 classes, got ${classes.length}`);
  const known = new Set(classes);

  const entries: ManifestEntry[] = [];
  for (let i = 1; i < lines.length; i++) {
    let obj: Record<string, unknown>;
    try {
      obj = JSON.parse(lines[i]);
    } catch {
      fail(manifestPath, i + 1, 'not valid JSON');
    }
    for (const key of ['path', 'source_id', 'label', 'lineage', 'width', 'height']) {
      if (!(key in obj)) fail(manifestPath, i + 1, `missing field ${key}`);
    }
    const label = String(obj.label);
    if (!known.has(label)) {
      fail(manifestPath, i + 1, `label '${label}' not in the manifest class set`);
    }
    entries.push({
      path: String(obj.path),
      sourceId: String(obj.source_id),
      label,
      lineage: String(obj.lineage),
      width: Number(obj.width),
      height: Number(obj.height),
    });
  }

  return { meta: { version: String(metaObj.version), classes }, entries, dir: path.dirname(abs) };
}

/** Absolute path of one entry's image file. */
export function entryImagePath(manifest: Manifest, entry: ManifestEntry): string {
  return path.resolve(manifest.dir, entry.path);
}
