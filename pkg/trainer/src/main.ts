// CLI entry point. Contract:
//
//   binviz-trainer --train train.jsonl --test test.jsonl --out predictions.csv
//
// trains on the first manifest, predicts the second, and writes one CSV row
// per test entry. Learning curves land next to the predictions (or at
// --curves). Exit codes: 0 ok, 1 runtime failure, 2 usage error.

import { parseArgs } from 'node:util';
import * as path from 'node:path';
import { loadDataset } from './data.js';
import { ARCHITECTURES, Architecture } from './model.js';
import { DEFAULT_CONFIG, predict, trainModel } from './train.js';
import { writeCurvesCsv, writePredictionsCsv } from './csvio.js';

function usageError(msg: string): never {
  process.stderr.write(`binviz-trainer: ${msg}\n`);
  process.stderr.write(
    'usage: binviz-trainer --train M --test M --out CSV [--epochs N] ' +
      '[--batch-size N] [--lr X] [--arch cnn|mlp] [--seed N] [--curves CSV]\n'
  );
  process.exit(2);
}

function intFlag(raw: string | undefined, name: string, fallback: number): number {
  if (raw === undefined) return fallback;
  const v = Number(raw);
  if (!Number.isInteger(v)) usageError(`--${name} expects an integer, got '${raw}'`);
  return v;
}

function defaultSeed(): number {
  const env = process.env.BINVIZ_SEED;
  if (env === undefined || env === '') return DEFAULT_CONFIG.seed;
  const v = Number(env);
  if (!Number.isInteger(v)) usageError(`BINVIZ_SEED must be an integer, got '${env}'`);
  return v;
}

async function main(): Promise<number> {
  let parsed;
  try {
    parsed = parseArgs({
      options: {
        train: { type: 'string' },
        test: { type: 'string' },
        out: { type: 'string' },
        epochs: { type: 'string' },
        'batch-size': { type: 'string' },
        lr: { type: 'string' },
        arch: { type: 'string' },
        seed: { type: 'string' },
        curves: { type: 'string' },
      },
      allowPositionals: false,
    });
  } catch (err) {
    usageError((err as Error).message);
  }
  const args = parsed.values;
  for (const required of ['train', 'test', 'out'] as const) {
    if (!args[required]) usageError(`--${required} is required`);
  }

  const arch = (args.arch ?? DEFAULT_CONFIG.arch) as Architecture;
  if (!ARCHITECTURES.includes(arch)) {
    usageError(`unknown --arch '${args.arch}'; choose from ${ARCHITECTURES.join(', ')}`);
  }
  const lr = args.lr === undefined ? DEFAULT_CONFIG.learningRate : Number(args.lr);
  if (!(lr > 0)) usageError(`--lr expects a positive number, got '${args.lr}'`);
  const cfg = {
    epochs: intFlag(args.epochs, 'epochs', DEFAULT_CONFIG.epochs),
    batchSize: intFlag(args['batch-size'], 'batch-size', DEFAULT_CONFIG.batchSize),
    learningRate: lr,
    arch,
    seed: args.seed === undefined ? defaultSeed() : intFlag(args.seed, 'seed', 0),
  };

  const train = loadDataset(args.train!);
  const test = loadDataset(args.test!);
  console.log(
    `training ${arch} on ${train.n} images (${train.width}x${train.height}, ` +
      `${train.classes.length} classes), testing on ${test.n}, seed ${cfg.seed}`
  );

  const { model, curves } = await trainModel(train, test, cfg);
  const rows = predict(model, test);
  writePredictionsCsv(args.out!, rows);
  const curvesPath = args.curves ?? path.join(path.dirname(path.resolve(args.out!)), 'curves.csv');
  writeCurvesCsv(curvesPath, curves);

  const last = curves[curves.length - 1];
  console.log(
    `done: epoch ${last.epoch} train_acc ${last.trainAcc.toFixed(4)} ` +
      `test_acc ${last.testAcc.toFixed(4)} -> ${args.out}`
  );
  return 0;
}

main()
  .then((code) => process.exit(code))
  .catch((err) => {
    process.stderr.write(`binviz-trainer: ${(err as Error).message}\n`);
    process.exit(1);
  });
