export interface ModelConfig {
  rnnSize: number;
  embeddingSize: number;
  layers: number;
  learningRate: number;
  copyAttention: boolean;
  beamSize: number;
  maxDecodeLen: number;
  batchSize: number;
  epochs: number;
  patience: number;
  seed: number;
}

export const DEFAULT_CONFIG: ModelConfig = {
  rnnSize: 450,
  embeddingSize: 300,
  layers: 1,
  learningRate: 0.001,
  copyAttention: false,
  beamSize: 5,
  maxDecodeLen: 80,
  batchSize: 32,
  epochs: 20,
  patience: 3,
  seed: 1,
};

export function resolveConfig(overrides: Partial<ModelConfig>): ModelConfig {
  const config = { ...DEFAULT_CONFIG, ...overrides };
  if (config.rnnSize <= 0 || config.embeddingSize <= 0 || config.layers <= 0) {
    throw new Error('model sizes must be positive');
  }
  if (config.layers !== 1) {
    throw new Error('only single-layer models are supported');
  }
  if (config.learningRate <= 0) {
    throw new Error('learning rate must be positive');
  }
  if (config.beamSize < 1 || config.maxDecodeLen < 1 || config.batchSize < 1) {
    throw new Error('beam size, decode length, and batch size must be >= 1');
  }
  return config;
}
