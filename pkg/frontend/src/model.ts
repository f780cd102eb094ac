import * as tf from '@tensorflow/tfjs';

import { ModelConfig } from './config.js';
import { ParallelPair } from './data.js';
import { Rng } from './rng.js';
import { BOS_ID, EOS_ID, PAD_ID, UNK_ID, Vocab, extendedIds } from './vocab.js';

const EPS = 1e-10;

interface Batch {
  srcIds: tf.Tensor2D; // [B, S] source ids in the source vocab
  srcMask: tf.Tensor2D; // [B, S] 1 for real tokens
  srcExt: tf.Tensor2D; // [B, S] target-vocab ids extended with copy ids
  tgtIn: tf.Tensor2D; // [B, T] BOS-prefixed gold ids (unk-mapped)
  tgtOut: tf.Tensor2D; // [B, T] gold ids in the extended vocab, EOS-suffixed
  tgtMask: tf.Tensor2D; // [B, T]
  extraVocab: number; // max per-line copy-oov count in the batch
}

function padTo(ids: number[], length: number): number[] {
  const out = ids.slice();
  while (out.length < length) out.push(PAD_ID);
  return out;
}

let instanceCounter = 0;

export class Seq2SeqModel {
  readonly config: ModelConfig;
  readonly srcVocab: Vocab;
  readonly tgtVocab: Vocab;
  private readonly vars: Map<string, tf.Variable>;
  private readonly optimizer: tf.Optimizer;
  private readonly scope: string;

  constructor(config: ModelConfig, srcVocab: Vocab, tgtVocab: Vocab) {
    this.config = config;
    this.srcVocab = srcVocab;
    this.tgtVocab = tgtVocab;
    this.vars = new Map();
    this.optimizer = tf.train.adam(config.learningRate);
    // tfjs variable names are global to the engine; scope them per model
    this.scope = `m${instanceCounter++}/`;

    const rng = new Rng(config.seed);
    const e = config.embeddingSize;
    const h = config.rnnSize;
    this.addVar(rng, 'srcEmb', [srcVocab.size, e]);
    this.addVar(rng, 'tgtEmb', [tgtVocab.size, e]);
    this.addVar(rng, 'encWx', [e, 4 * h]);
    this.addVar(rng, 'encWh', [h, 4 * h]);
    this.addZeros('encB', [4 * h]);
    this.addVar(rng, 'decWx', [e, 4 * h]);
    this.addVar(rng, 'decWh', [h, 4 * h]);
    this.addZeros('decB', [4 * h]);
    this.addVar(rng, 'attnW', [2 * h, h]);
    this.addZeros('attnB', [h]);
    this.addVar(rng, 'outW', [h, tgtVocab.size]);
    this.addZeros('outB', [tgtVocab.size]);
    if (config.copyAttention) {
      this.addVar(rng, 'copyW', [2 * h + e, 1]);
      this.addZeros('copyB', [1]);
    }
  }

  private addVar(rng: Rng, name: string, shape: number[]): void {
    const values = rng.glorot(shape[0], shape.length > 1 ? shape[1] : 1);
    this.vars.set(name, tf.variable(tf.tensor(values, shape), true, this.scope + name));
  }

  private addZeros(name: string, shape: number[]): void {
    this.vars.set(name, tf.variable(tf.zeros(shape), true, this.scope + name));
  }

  private v(name: string): tf.Variable {
    const variable = this.vars.get(name);
    if (!variable) throw new Error(`no such variable: ${name}`);
    return variable;
  }

  private lstmStep(
    prefix: 'enc' | 'dec',
    x: tf.Tensor2D,
    h: tf.Tensor2D,
    c: tf.Tensor2D,
  ): [tf.Tensor2D, tf.Tensor2D] {
    const gates = tf.add(
      tf.add(tf.matMul(x, this.v(`${prefix}Wx`)), tf.matMul(h, this.v(`${prefix}Wh`))),
      this.v(`${prefix}B`),
    );
    const [i, f, g, o] = tf.split(gates, 4, 1) as tf.Tensor2D[];
    const cNext = tf.add(
      tf.mul(tf.sigmoid(f), c),
      tf.mul(tf.sigmoid(i), tf.tanh(g)),
    ) as tf.Tensor2D;
    const hNext = tf.mul(tf.sigmoid(o), tf.tanh(cNext)) as tf.Tensor2D;
    return [hNext, cNext];
  }

  /** Run the encoder; returns per-step outputs [B, S, H] and final state. */
  private encode(
    srcIds: tf.Tensor2D,
    srcMask: tf.Tensor2D,
  ): { outputs: tf.Tensor3D; h: tf.Tensor2D; c: tf.Tensor2D } {
    const [batch, steps] = srcIds.shape;
    const size = this.config.rnnSize;
    let h = tf.zeros([batch, size]) as tf.Tensor2D;
    let c = tf.zeros([batch, size]) as tf.Tensor2D;
    const outputs: tf.Tensor2D[] = [];
    const embedded = tf.gather(this.v('srcEmb'), srcIds) as tf.Tensor3D;
    for (let t = 0; t < steps; t++) {
      const x = embedded.slice([0, t, 0], [batch, 1, -1]).squeeze([1]) as tf.Tensor2D;
      const mask = srcMask.slice([0, t], [batch, 1]);
      const [hNew, cNew] = this.lstmStep('enc', x, h, c);
      h = tf.add(tf.mul(mask, hNew), tf.mul(tf.sub(1, mask), h)) as tf.Tensor2D;
      c = tf.add(tf.mul(mask, cNew), tf.mul(tf.sub(1, mask), c)) as tf.Tensor2D;
      outputs.push(h);
    }
    return { outputs: tf.stack(outputs, 1) as tf.Tensor3D, h, c };
  }

  /** One decoder step: next state plus the distribution over the extended
   * vocabulary ([B, tgtVocab.size + extraVocab]). */
  private decodeStep(
    prevId: tf.Tensor2D,
    h: tf.Tensor2D,
    c: tf.Tensor2D,
    encOutputs: tf.Tensor3D,
    srcMask: tf.Tensor2D,
    srcExt: tf.Tensor2D,
    extraVocab: number,
  ): { h: tf.Tensor2D; c: tf.Tensor2D; dist: tf.Tensor2D } {
    const batch = prevId.shape[0];
    const x = tf.gather(this.v('tgtEmb'), prevId).squeeze([1]) as tf.Tensor2D;
    const [hNext, cNext] = this.lstmStep('dec', x, h, c);

    const scores = tf
      .matMul(encOutputs, hNext.expandDims(2))
      .squeeze([2]) as tf.Tensor2D; // [B, S]
    const masked = tf.add(scores, tf.mul(tf.sub(srcMask, 1), 1e9));
    const attn = tf.softmax(masked) as tf.Tensor2D;
    const context = tf
      .matMul(attn.expandDims(1), encOutputs)
      .squeeze([1]) as tf.Tensor2D; // [B, H]

    const attnVec = tf.tanh(
      tf.add(tf.matMul(tf.concat([context, hNext], 1), this.v('attnW')), this.v('attnB')),
    );
    const pVocab = tf.softmax(
      tf.add(tf.matMul(attnVec, this.v('outW')), this.v('outB')),
    ) as tf.Tensor2D;

    let dist: tf.Tensor2D;
    if (this.config.copyAttention) {
      const pGen = tf.sigmoid(
        tf.add(tf.matMul(tf.concat([context, hNext, x], 1), this.v('copyW')), this.v('copyB')),
      );
      const extSize = this.tgtVocab.size + extraVocab;
      const oneHot = tf.oneHot(srcExt.cast('int32'), extSize).cast('float32');
      const copyDist = tf
        .matMul(tf.mul(attn, srcMask).expandDims(1), oneHot)
        .squeeze([1]) as tf.Tensor2D;
      const padded =
        extraVocab > 0
          ? (tf.concat([pVocab, tf.zeros([batch, extraVocab])], 1) as tf.Tensor2D)
          : pVocab;
      dist = tf.add(tf.mul(pGen, padded), tf.mul(tf.sub(1, pGen), copyDist)) as tf.Tensor2D;
    } else {
      dist = pVocab;
    }
    return { h: hNext, c: cNext, dist };
  }

  private batchLoss(batch: Batch): tf.Scalar {
    const enc = this.encode(batch.srcIds, batch.srcMask);
    let { h, c } = enc;
    const [batchSize, steps] = batch.tgtIn.shape;
    const extSize = this.tgtVocab.size + batch.extraVocab;
    let total = tf.scalar(0);
    for (let t = 0; t < steps; t++) {
      const prev = batch.tgtIn.slice([0, t], [batchSize, 1]);
      const step = this.decodeStep(
        prev, h, c, enc.outputs, batch.srcMask, batch.srcExt, batch.extraVocab,
      );
      h = step.h;
      c = step.c;
      const gold = batch.tgtOut.slice([0, t], [batchSize, 1]).squeeze([1]);
      const goldProb = tf.sum(
        tf.mul(step.dist, tf.oneHot(gold.cast('int32'), extSize)),
        1,
      );
      const mask = batch.tgtMask.slice([0, t], [batchSize, 1]).squeeze([1]);
      total = tf.add(total, tf.sum(tf.mul(tf.neg(tf.log(tf.add(goldProb, EPS))), mask)));
    }
    return tf.div(total, tf.sum(batch.tgtMask)) as tf.Scalar;
  }

  private makeBatch(pairs: ParallelPair[]): Batch {
    const srcLen = Math.max(...pairs.map((p) => p.src.length));
    const tgtLen = Math.max(...pairs.map((p) => p.tgt.length)) + 1; // + EOS
    const srcIds: number[][] = [];
    const srcMask: number[][] = [];
    const srcExt: number[][] = [];
    const tgtIn: number[][] = [];
    const tgtOut: number[][] = [];
    const tgtMask: number[][] = [];
    const copy = this.config.copyAttention;
    let extraVocab = 0;
    for (const pair of pairs) {
      const ext = extendedIds(pair.src, this.tgtVocab);
      if (copy) extraVocab = Math.max(extraVocab, ext.oovs.length);
      srcIds.push(padTo(pair.src.map((t) => this.srcVocab.id(t)), srcLen));
      srcMask.push(padTo(pair.src.map(() => 1), srcLen));
      srcExt.push(padTo(ext.ids, srcLen));
      const goldIn = pair.tgt.map((t) => this.tgtVocab.id(t));
      tgtIn.push(padTo([BOS_ID, ...goldIn], tgtLen));
      const goldOut = pair.tgt.map((t) => {
        if (!copy || this.tgtVocab.has(t)) return this.tgtVocab.id(t);
        const oov = ext.oovs.indexOf(t);
        return oov >= 0 ? this.tgtVocab.size + oov : this.tgtVocab.id(t);
      });
      tgtOut.push(padTo([...goldOut, EOS_ID], tgtLen));
      tgtMask.push(padTo(pair.tgt.map(() => 1).concat([1]), tgtLen));
    }
    return {
      srcIds: tf.tensor2d(srcIds, undefined, 'int32'),
      srcMask: tf.tensor2d(srcMask),
      srcExt: tf.tensor2d(srcExt, undefined, 'int32'),
      tgtIn: tf.tensor2d(tgtIn, undefined, 'int32'),
      tgtOut: tf.tensor2d(tgtOut, undefined, 'int32'),
      tgtMask: tf.tensor2d(tgtMask),
      extraVocab,
    };
  }

  /** Train on parallel pairs; returns the per-epoch mean losses. */
  train(
    pairs: ParallelPair[],
    log: (line: string) => void = () => undefined,
  ): number[] {
    const rng = new Rng(this.config.seed + 1);
    const losses: number[] = [];
    let best = Infinity;
    let stale = 0;
    for (let epoch = 0; epoch < this.config.epochs; epoch++) {
      const order = pairs.slice();
      rng.shuffle(order);
      let total = 0;
      let batches = 0;
      for (let start = 0; start < order.length; start += this.config.batchSize) {
        const slice = order.slice(start, start + this.config.batchSize);
        const batch = this.makeBatch(slice);
        const cost = this.optimizer.minimize(
          () => this.batchLoss(batch), true, [...this.vars.values()],
        )!;
        total += cost.dataSync()[0];
        batches += 1;
        cost.dispose();
        tf.dispose([batch.srcIds, batch.srcMask, batch.srcExt,
                    batch.tgtIn, batch.tgtOut, batch.tgtMask]);
      }
      const mean = total / batches;
      losses.push(mean);
      log(`epoch ${epoch + 1} loss ${mean.toFixed(6)}`);
      if (mean < best - 1e-6) {
        best = mean;
        stale = 0;
      } else if (++stale >= this.config.patience) {
        log(`stopping early after epoch ${epoch + 1}`);
        break;
      }
    }
    return losses;
  }

  /** Decode one source line; beamSize 1 is greedy. Copy ids beyond the
   * target vocabulary resolve to the source line's own tokens. */
  generate(srcTokens: string[], beamSize?: number): string[] {
    const beams = beamSize ?? this.config.beamSize;
    const ext = extendedIds(srcTokens, this.tgtVocab);
    const result = tf.tidy(() => {
      const batch = this.makeBatch([{ src: srcTokens, tgt: [] }]);
      const enc = this.encode(batch.srcIds, batch.srcMask);
      interface Hyp {
        ids: number[];
        score: number;
        h: tf.Tensor2D;
        c: tf.Tensor2D;
        done: boolean;
      }
      let hyps: Hyp[] = [{ ids: [], score: 0, h: enc.h, c: enc.c, done: false }];
      for (let t = 0; t < this.config.maxDecodeLen; t++) {
        if (hyps.every((hyp) => hyp.done)) break;
        const next: Hyp[] = [];
        for (const hyp of hyps) {
          if (hyp.done) {
            next.push(hyp);
            continue;
          }
          const last = hyp.ids.length === 0 ? BOS_ID : hyp.ids[hyp.ids.length - 1];
          // copied oov tokens have no embedding; feed <unk> instead
          const feed = last >= this.tgtVocab.size ? UNK_ID : last;
          const step = this.decodeStep(
            tf.tensor2d([[feed]], undefined, 'int32'),
            hyp.h, hyp.c, enc.outputs, batch.srcMask, batch.srcExt, ext.oovs.length,
          );
          const probs = step.dist.dataSync();
          const ranked = [...probs.keys()].sort((a, b) => probs[b] - probs[a]);
          for (const id of ranked.slice(0, beams)) {
            next.push({
              ids: [...hyp.ids, id],
              score: hyp.score + Math.log(probs[id] + EPS),
              h: step.h,
              c: step.c,
              done: id === EOS_ID,
            });
          }
        }
        next.sort((a, b) => b.score / b.ids.length - a.score / a.ids.length);
        hyps = next.slice(0, beams);
      }
      return hyps[0].ids;
    });
    const tokens: string[] = [];
    for (const id of result) {
      if (id === EOS_ID) break;
      tokens.push(
        id >= this.tgtVocab.size
          ? ext.oovs[id - this.tgtVocab.size]
          : this.tgtVocab.token(id),
      );
    }
    return tokens;
  }

  weights(): Record<string, { shape: number[]; values: number[] }> {
    const out: Record<string, { shape: number[]; values: number[] }> = {};
    for (const [name, variable] of this.vars) {
      out[name] = {
        shape: variable.shape.slice(),
        values: Array.from(variable.dataSync()),
      };
    }
    return out;
  }

  loadWeights(weights: Record<string, { shape: number[]; values: number[] }>): void {
    for (const [name, variable] of this.vars) {
      const stored = weights[name];
      if (!stored) throw new Error(`checkpoint missing variable ${name}`);
      variable.assign(tf.tensor(stored.values, stored.shape));
    }
  }
}
