export { DEFAULT_CONFIG, ModelConfig, resolveConfig } from './config.js';
export { ParallelPair, SENTENCE_SEPARATOR, readParallel, readTokenLines, splitPlan } from './data.js';
export { Seq2SeqModel } from './model.js';
export { loadCheckpoint, saveCheckpoint } from './checkpoint.js';
export { Vocab, extendedIds } from './vocab.js';
export { Rng } from './rng.js';
