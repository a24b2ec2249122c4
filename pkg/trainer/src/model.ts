import * as tf from '@tensorflow/tfjs';
import { deriveSeed } from './rng.js';

export const ARCHITECTURES = ['cnn', 'mlp'] as const;
export type Architecture = (typeof ARCHITECTURES)[number];

/**
 * Build a compact classifier over h x w x 3 images.
 *
 * 'cnn' is the default: three conv blocks (4, 8, 16 filters, each followed
 * by 2x2 max pooling) and a small dense head. 'mlp' flattens straight into
 * a dense layer; useful as a fast baseline. Every initializer is seeded so
 * the same seed always yields the same starting weights.
 */
export function buildModel(
  arch: Architecture,
  height: number,
  width: number,
  numClasses: number,
  seed: number
): tf.Sequential {
  const init = (i: number) => tf.initializers.glorotUniform({ seed: deriveSeed(seed, i) });
  const model = tf.sequential();

  if (arch === 'cnn') {
    if (height < 8 || width < 8) {
      // three pooling halvings need at least 8 pixels per side
      throw new Error(`cnn needs images of at least 8x8, got ${width}x${height}`);
    }
    model.add(
      tf.layers.conv2d({
        inputShape: [height, width, 3],
        filters: 4,
        kernelSize: 3,
        padding: 'same',
        activation: 'relu',
        kernelInitializer: init(0),
      })
    );
    model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
    model.add(
      tf.layers.conv2d({
        filters: 8,
        kernelSize: 3,
        padding: 'same',
        activation: 'relu',
        kernelInitializer: init(1),
      })
    );
    model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
    model.add(
      tf.layers.conv2d({
        filters: 16,
        kernelSize: 3,
        padding: 'same',
        activation: 'relu',
        kernelInitializer: init(2),
      })
    );
    model.add(tf.layers.maxPooling2d({ poolSize: 2 }));
    model.add(tf.layers.flatten());
    model.add(tf.layers.dense({ units: 32, activation: 'relu', kernelInitializer: init(3) }));
  } else if (arch === 'mlp') {
    model.add(tf.layers.flatten({ inputShape: [height, width, 3] }));
    model.add(tf.layers.dense({ units: 64, activation: 'relu', kernelInitializer: init(0) }));
  } else {
    throw new Error(`unknown architecture '${arch}'; choose from ${ARCHITECTURES.join(', ')}`);
  }

  model.add(
    tf.layers.dense({ units: numClasses, activation: 'softmax', kernelInitializer: init(9) })
  );
  return model;
}
