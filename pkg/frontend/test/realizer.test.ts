import { execFileSync } from 'child_process';
import * as fs from 'fs';
import * as os from 'os';
import * as path from 'path';
import { describe, expect, it } from 'vitest';

import { resolveConfig } from '../src/config.js';
import { Seq2SeqModel } from '../src/model.js';
import { Vocab } from '../src/vocab.js';
import { realizerPairs, templateExamples } from './helpers.js';

// The full memorization check trains on a 500-pair subsample; the default
// keeps CI fast with a smaller one. Set UUDNLG_FULL_SECONDARY=1 for 500.
const FULL = process.env.UUDNLG_FULL_SECONDARY === '1';
const EXAMPLES = FULL ? 250 : 20; // two realizer pairs per example

function scoreWithCli(hyp: string[], refs: string[]): number {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), 'realizer-'));
  const hypFile = path.join(dir, 'hyp.txt');
  const refFile = path.join(dir, 'ref.txt');
  fs.writeFileSync(hypFile, hyp.join('\n') + '\n');
  fs.writeFileSync(refFile, refs.join('\n') + '\n');
  const out = execFileSync(
    'uudnlg',
    ['score', '--hyp', hypFile, '--refs', refFile,
     '--pretokenized', '--format', 'machine-readable'],
    { encoding: 'utf8' },
  );
  const fields = new Map(out.trim().split('\n').map((l) => l.split('\t') as [string, string]));
  return Number(fields.get('bleu'));
}

describe('realizer memorization', () => {
  it('reaches corpus BLEU above 0.9 on the training subsample', () => {
    const pairs = realizerPairs(templateExamples(EXAMPLES));
    const model = new Seq2SeqModel(
      resolveConfig({
        rnnSize: 64,
        embeddingSize: 48,
        copyAttention: true,
        learningRate: 0.005,
        batchSize: 20,
        epochs: FULL ? 60 : 120,
        patience: 1000,
        maxDecodeLen: 20,
        seed: 9,
      }),
      Vocab.build(pairs.map((p) => p.src)),
      Vocab.build(pairs.map((p) => p.tgt)),
    );
    model.train(pairs);
    const hyp = pairs.map((p) => model.generate(p.src, 1).join(' '));
    const refs = pairs.map((p) => p.tgt.join(' '));
    expect(scoreWithCli(hyp, refs)).toBeGreaterThan(0.9);
  });
});
