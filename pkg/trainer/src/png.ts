import * as fs from 'node:fs';
import { PNG } from 'pngjs';

export interface RgbImage {
  width: number;
  height: number;
  /** interleaved RGB, length = width * height * 3 */
  data: Uint8Array;
}

/** Decode one PNG file to packed RGB bytes. Alpha, if present, is dropped. */
export function readPngRgb(filePath: string): RgbImage {
  let png: PNG;
  try {
    png = PNG.sync.read(fs.readFileSync(filePath));
  } catch (err) {
    throw new Error(`cannot decode PNG ${filePath}: ${(err as Error).message}`);
  }
  const n = png.width * png.height;
  const rgb = new Uint8Array(n * 3);
  for (let i = 0; i < n; i++) {
    rgb[i * 3] = png.data[i * 4];
    rgb[i * 3 + 1] = png.data[i * 4 + 1];
    rgb[i * 3 + 2] = png.data[i * 4 + 2];
  }
  return { width: png.width, height: png.height, data: rgb };
}

/** Encode packed RGB bytes to a PNG file (opaque alpha). Test helper mostly. */
export function writePngRgb(filePath: string, img: RgbImage): void {
  const png = new PNG({ width: img.width, height: img.height });
  const n = img.width * img.height;
  for (let i = 0; i < n; i++) {
    png.data[i * 4] = img.data[i * 3];
    png.data[i * 4 + 1] = img.data[i * 3 + 1];
    png.data[i * 4 + 2] = img.data[i * 3 + 2];
    png.data[i * 4 + 3] = 255;
  }
  fs.writeFileSync(filePath, PNG.sync.write(png));
}
