import * as fs from 'node:fs';
import * as path from 'node:path';
import { CurvePoint, PredictionRow } from './train.js';

function plainField(value: string): string {
  // Paths and class names in a manifest never carry CSV metacharacters;
  // refuse rather than start quoting.
  if (/[",\n\r]/.test(value)) throw new Error(`CSV field needs quoting, refusing: ${value}`);
  return value;
}

export function writePredictionsCsv(filePath: string, rows: PredictionRow[]): void {
  const lines = ['sample_id,true_label,predicted_label'];
  for (const row of rows) {
    lines.push(
      [plainField(row.sampleId), plainField(row.trueLabel), plainField(row.predictedLabel)].join(',')
    );
  }
  fs.mkdirSync(path.dirname(path.resolve(filePath)), { recursive: true });
  fs.writeFileSync(filePath, lines.join('\n') + '\n');
}

export function writeCurvesCsv(filePath: string, curves: CurvePoint[]): void {
  const lines = ['epoch,train_acc,train_loss,test_acc,test_loss'];
  for (const p of curves) {
    lines.push([p.epoch, p.trainAcc, p.trainLoss, p.testAcc, p.testLoss].join(','));
  }
  fs.mkdirSync(path.dirname(path.resolve(filePath)), { recursive: true });
  fs.writeFileSync(filePath, lines.join('\n') + '\n');
}
