import { beforeAll, describe, expect, it } from 'vitest';

import { resolveConfig } from '../src/config.js';
import { Seq2SeqModel } from '../src/model.js';
import { Rng } from '../src/rng.js';
import { Vocab } from '../src/vocab.js';
import { copyPairs, tokenAccuracy } from './helpers.js';

const CONFIG = resolveConfig({
  rnnSize: 48,
  embeddingSize: 32,
  copyAttention: true,
  learningRate: 0.003,
  batchSize: 32,
  epochs: 25,
  patience: 25,
  maxDecodeLen: 12,
  seed: 5,
});

let train: ReturnType<typeof copyPairs>;
let held: ReturnType<typeof copyPairs>;
let model: Seq2SeqModel;
let losses: number[];

beforeAll(() => {
  const rng = new Rng(11);
  train = copyPairs(rng, 320);
  held = copyPairs(rng, 40);
  model = new Seq2SeqModel(
    CONFIG,
    Vocab.build(train.map((p) => p.src)),
    Vocab.build(train.map((p) => p.tgt)),
  );
  losses = model.train(train);
});

describe('synthetic copy task', () => {
  it('loss strictly decreases over the first three epochs', () => {
    expect(losses.length).toBeGreaterThanOrEqual(3);
    expect(losses[1]).toBeLessThan(losses[0]);
    expect(losses[2]).toBeLessThan(losses[1]);
  });

  it('reaches over 0.95 held-out token accuracy', () => {
    let total = 0;
    for (const pair of held) {
      total += tokenAccuracy(model.generate(pair.src, 1), pair.tgt);
    }
    expect(total / held.length).toBeGreaterThan(0.95);
  });

  it('decodes deterministically', () => {
    const src = held[0].src;
    expect(model.generate(src)).toEqual(model.generate(src));
    const twin = new Seq2SeqModel(CONFIG, model.srcVocab, model.tgtVocab);
    const twinLosses = twin.train(train);
    expect(twinLosses).toEqual(losses);
    expect(twin.generate(src)).toEqual(model.generate(src));
  });

  it('copies a placeholder never seen in training', () => {
    const out = model.generate(['s1', 'zzplaceholder', 's2'], 1);
    expect(out).toContain('zzplaceholder');
  });

  it('never exceeds the decode length cap', () => {
    const capped = new Seq2SeqModel(
      resolveConfig({ ...CONFIG, maxDecodeLen: 4 }),
      model.srcVocab,
      model.tgtVocab,
    );
    const rng = new Rng(12);
    for (const pair of copyPairs(rng, 10)) {
      expect(capped.generate(pair.src).length).toBeLessThanOrEqual(4);
    }
  });
});
