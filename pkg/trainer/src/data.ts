// Load a manifest's images into flat training arrays.
//
// All images in one dataset must share a single size; the model's input
// shape comes from the data, so a ragged dataset is a hard error rather
// than a silent resize.

import { Manifest, ManifestEntry, entryImagePath, readManifest } from './manifest.js';
import { readPngRgb } from './png.js';

export interface Dataset {
  /** n * height * width * 3 floats in [0, 1] */
  xs: Float32Array;
  /** class index per sample, aligned with entries */
  ys: Int32Array;
  n: number;
  height: number;
  width: number;
  classes: string[];
  entries: ManifestEntry[];
}

export function loadDataset(manifestPath: string): Dataset {
  const manifest = readManifest(manifestPath);
  if (manifest.entries.length === 0) {
    throw new Error(`${manifestPath}: manifest has no entries`);
  }

  const classIndex = new Map(manifest.meta.classes.map((c, i) => [c, i]));
  const first = readPngRgb(entryImagePath(manifest, manifest.entries[0]));
  const { width, height } = first;
  const perImage = width * height * 3;
  const n = manifest.entries.length;

  const xs = new Float32Array(n * perImage);
  const ys = new Int32Array(n);
  for (let i = 0; i < n; i++) {
    const entry = manifest.entries[i];
    const img = i === 0 ? first : readPngRgb(entryImagePath(manifest, entry));
    if (img.width !== width || img.height !== height) {
      throw new Error(
        `${entry.path}: image is ${img.width}x${img.height}, dataset is ${width}x${height}`
      );
    }
    const base = i * perImage;
    for (let j = 0; j < perImage; j++) xs[base + j] = img.data[j] / 255;
    ys[i] = classIndex.get(entry.label)!;
  }

  return { xs, ys, n, height, width, classes: manifest.meta.classes, entries: manifest.entries };
}

/** Number of distinct labels actually present among the entries. */
export function distinctLabelCount(ds: Dataset): number {
  return new Set(ds.ys).size;
}
