// Shared fixture builders: write a real manifest + PNG tree into a temp dir.

import * as fs from 'node:fs';
import * as os from 'node:os';
import * as path from 'node:path';
import { writePngRgb } from '../src/png.js';
import { mulberry32 } from '../src/rng.js';

export interface FixtureImage {
  id: string;
  label: string;
  pixels: Uint8Array; // h * w * 3
}

export function tempDir(prefix: string): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), prefix));
}

export function writeFixtureManifest(
  dir: string,
  classes: string[],
  images: FixtureImage[],
  size: number,
  lineage = 'original'
): string {
  const lines = [JSON.stringify({ version: 'binviz/1', conversion: { width: size }, classes })];
  for (const img of images) {
    const file = `${img.id}.png`;
    writePngRgb(path.join(dir, file), { width: size, height: size, data: img.pixels });
    lines.push(
      JSON.stringify({
        path: file,
        source_id: img.id,
        label: img.label,
        lineage,
        width: size,
        height: size,
      })
    );
  }
  const manifestPath = path.join(dir, 'manifest.jsonl');
  fs.writeFileSync(manifestPath, lines.join('\n') + '\n');
  return manifestPath;
}

/** Uniform-random pixels inside [lo, hi], deterministic per seed. */
export function flatImage(size: number, lo: number, hi: number, seed: number): Uint8Array {
  const rand = mulberry32(seed);
  const data = new Uint8Array(size * size * 3);
  for (let i = 0; i < data.length; i++) {
    data[i] = lo + Math.floor(rand() * (hi - lo + 1));
  }
  return data;
}

/** Two cleanly separable classes: dark images vs bright images. */
export function separableFixture(
  dir: string,
  size: number,
  perClass: number
): { manifestPath: string; classes: string[] } {
  const classes = ['bright', 'dark'];
  const images: FixtureImage[] = [];
  for (let i = 0; i < perClass; i++) {
    images.push({ id: `dark_${i}`, label: 'dark', pixels: flatImage(size, 0, 70, 100 + i) });
    images.push({ id: `bright_${i}`, label: 'bright', pixels: flatImage(size, 185, 255, 200 + i) });
  }
  return { manifestPath: writeFixtureManifest(dir, classes, images, size), classes };
}
