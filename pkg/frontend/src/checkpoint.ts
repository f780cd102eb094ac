import * as fs from 'fs';

import { ModelConfig, resolveConfig } from './config.js';
import { Seq2SeqModel } from './model.js';
import { Vocab } from './vocab.js';

interface CheckpointFile {
  format: string;
  config: ModelConfig;
  srcVocab: string[];
  tgtVocab: string[];
  weights: Record<string, { shape: number[]; values: number[] }>;
}

const FORMAT = 'uudnlg-trainer-checkpoint-v1';

export function saveCheckpoint(path: string, model: Seq2SeqModel): void {
  const file: CheckpointFile = {
    format: FORMAT,
    config: model.config,
    srcVocab: model.srcVocab.tokens,
    tgtVocab: model.tgtVocab.tokens,
    weights: model.weights(),
  };
  fs.writeFileSync(path, JSON.stringify(file));
}

export function loadCheckpoint(path: string): Seq2SeqModel {
  if (!fs.existsSync(path)) {
    throw new Error(`missing checkpoint: ${path}`);
  }
  const file = JSON.parse(fs.readFileSync(path, 'utf8')) as CheckpointFile;
  if (file.format !== FORMAT) {
    throw new Error(`unrecognized checkpoint format in ${path}`);
  }
  const model = new Seq2SeqModel(
    resolveConfig(file.config),
    new Vocab(file.srcVocab),
    new Vocab(file.tgtVocab),
  );
  model.loadWeights(file.weights);
  return model;
}
