import * as tf from '@tensorflow/tfjs';
import { Dataset, distinctLabelCount } from './data.js';
import { Architecture, buildModel } from './model.js';
import { shuffledIndices } from './rng.js';

export interface TrainerConfig {
  epochs: number;
  batchSize: number;
  learningRate: number;
  arch: Architecture;
  seed: number;
}

export const DEFAULT_CONFIG: TrainerConfig = {
  epochs: 100,
  batchSize: 32,
  learningRate: 0.001,
  arch: 'cnn',
  seed: 0,
};

export interface CurvePoint {
  epoch: number;
  trainAcc: number;
  trainLoss: number;
  testAcc: number;
  testLoss: number;
}

export interface PredictionRow {
  sampleId: string;
  trueLabel: string;
  predictedLabel: string;
}

function datasetTensors(ds: Dataset, order?: Int32Array): { x: tf.Tensor4D; y: tf.Tensor2D } {
  const per = ds.height * ds.width * 3;
  let xs = ds.xs;
  let ys = ds.ys;
  if (order) {
    xs = new Float32Array(ds.n * per);
    ys = new Int32Array(ds.n);
    for (let i = 0; i < ds.n; i++) {
      xs.set(ds.xs.subarray(order[i] * per, (order[i] + 1) * per), i * per);
      ys[i] = ds.ys[order[i]];
    }
  }
  const x = tf.tensor4d(xs, [ds.n, ds.height, ds.width, 3]);
  const y = tf.tidy(
    () => tf.oneHot(tf.tensor1d(ys, 'int32'), ds.classes.length).toFloat() as tf.Tensor2D
  );
  return { x, y };
}

function sameClasses(a: string[], b: string[]): boolean {
  return a.length === b.length && a.every((name, i) => name === b[i]);
}

/**
 * Fit a model on the train split, evaluating the test split after every
 * epoch for the learning curve.
 *
 * Reproducibility contract: a fixed config (seed included) gives identical
 * weights and losses run to run. Sample order is one seeded shuffle up
 * front; tf.fit itself runs with shuffle off, and no layer uses unseeded
 * randomness.
 */
export async function trainModel(
  train: Dataset,
  test: Dataset,
  cfg: TrainerConfig
): Promise<{ model: tf.Sequential; curves: CurvePoint[] }> {
  if (cfg.epochs < 1) throw new Error(`epochs must be >= 1, got ${cfg.epochs}`);
  if (cfg.batchSize < 1) throw new Error(`batch size must be >= 1, got ${cfg.batchSize}`);
  if (!(cfg.learningRate > 0)) throw new Error(`learning rate must be > 0, got ${cfg.learningRate}`);
  if (!sameClasses(train.classes, test.classes)) {
    throw new Error(
      `train/test class sets differ: [${train.classes}] vs [${test.classes}]`
    );
  }
  if (train.height !== test.height || train.width !== test.width) {
    throw new Error(
      `train images are ${train.width}x${train.height} but test images are ` +
        `${test.width}x${test.height}`
    );
  }
  if (distinctLabelCount(train) < 2) {
    throw new Error('training manifest spans a single class; nothing to learn');
  }

  await tf.ready();
  const model = buildModel(cfg.arch, train.height, train.width, train.classes.length, cfg.seed);
  model.compile({
    optimizer: tf.train.adam(cfg.learningRate),
    loss: 'categoricalCrossentropy',
    metrics: ['accuracy'],
  });

  const order = shuffledIndices(train.n, cfg.seed);
  const trainT = datasetTensors(train, order);
  const testT = datasetTensors(test);

  const curves: CurvePoint[] = [];
  try {
    await model.fit(trainT.x, trainT.y, {
      epochs: cfg.epochs,
      batchSize: cfg.batchSize,
      shuffle: false,
      verbose: 0,
      callbacks: {
        onEpochEnd: async (epoch, logs) => {
          const trainLoss = Number(logs?.loss);
          const trainAcc = Number(logs?.acc);
          if (!Number.isFinite(trainLoss)) {
            throw new Error(`training diverged: loss is ${logs?.loss} at epoch ${epoch + 1}`);
          }
          const evals = model.evaluate(testT.x, testT.y, {
            batchSize: cfg.batchSize,
          }) as tf.Scalar[];
          const [testLoss, testAcc] = [evals[0].dataSync()[0], evals[1].dataSync()[0]];
          evals.forEach((t) => t.dispose());
          curves.push({ epoch: epoch + 1, trainAcc, trainLoss, testAcc, testLoss });
        },
      },
    });
  } finally {
    trainT.x.dispose();
    trainT.y.dispose();
    testT.x.dispose();
    testT.y.dispose();
  }
  return { model, curves };
}

/** Predict the test split; one row per manifest entry, in manifest order. */
export function predict(model: tf.Sequential, test: Dataset): PredictionRow[] {
  const { x, y } = datasetTensors(test);
  const out = model.predict(x, { batchSize: 256 }) as tf.Tensor2D;
  const choice = out.argMax(-1);
  const picked = choice.dataSync();
  tf.dispose([x, y, out, choice]);
  return test.entries.map((entry, i) => ({
    sampleId: entry.path,
    trueLabel: entry.label,
    predictedLabel: test.classes[picked[i]],
  }));
}
