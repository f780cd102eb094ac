#!/usr/bin/env node
import * as fs from 'fs';
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { loadCheckpoint, saveCheckpoint } from './checkpoint.js';
import { ModelConfig, resolveConfig } from './config.js';
import { readParallel, readTokenLines, splitPlan } from './data.js';
import { Seq2SeqModel } from './model.js';
import { Vocab } from './vocab.js';

function configFromFlags(argv: Record<string, unknown>): ModelConfig {
  const overrides: Partial<ModelConfig> = {};
  const keys: (keyof ModelConfig)[] = [
    'rnnSize', 'embeddingSize', 'layers', 'learningRate', 'copyAttention',
    'beamSize', 'maxDecodeLen', 'batchSize', 'epochs', 'patience', 'seed',
  ];
  for (const key of keys) {
    if (argv[key] !== undefined) {
      (overrides as Record<string, unknown>)[key] = argv[key];
    }
  }
  return resolveConfig(overrides);
}

export function trainCommand(argv: Record<string, unknown>): void {
  const config = configFromFlags(argv);
  const pairs = readParallel(argv.src as string, argv.tgt as string);
  const model = new Seq2SeqModel(
    config,
    Vocab.build(pairs.map((p) => p.src)),
    Vocab.build(pairs.map((p) => p.tgt)),
  );
  model.train(pairs, (line) => process.stderr.write(line + '\n'));
  saveCheckpoint(argv.out as string, model);
}

export function generateCommand(argv: Record<string, unknown>): void {
  const model = loadCheckpoint(argv.checkpoint as string);
  const beam = argv.beamSize as number | undefined;
  const lines = readTokenLines(argv.src as string);
  const out = lines.map((tokens) => model.generate(tokens, beam).join(' '));
  fs.writeFileSync(argv.out as string, out.join('\n') + '\n');
}

/** Full pipeline: MR tokens -> planner -> per-sentence IRs -> realizer. */
export function pipelineCommand(argv: Record<string, unknown>): void {
  const planner = loadCheckpoint(argv.planner as string);
  const realizer = loadCheckpoint(argv.realizer as string);
  const beam = argv.beamSize as number | undefined;
  const out: string[] = [];
  for (const tokens of readTokenLines(argv.src as string)) {
    const plan = planner.generate(tokens, beam);
    const sentences = splitPlan(plan).map((ir) =>
      realizer.generate(ir, beam).join(' '),
    );
    out.push(sentences.join(' '));
  }
  fs.writeFileSync(argv.out as string, out.join('\n') + '\n');
}

export function main(args: string[]): void {
  yargs(args)
    .command(
      'train',
      'train a planner or realizer model on parallel token files',
      (y) =>
        y
          .option('src', { type: 'string', demandOption: true })
          .option('tgt', { type: 'string', demandOption: true })
          .option('out', { type: 'string', demandOption: true })
          .option('rnnSize', { type: 'number' })
          .option('embeddingSize', { type: 'number' })
          .option('learningRate', { type: 'number' })
          .option('copyAttention', { type: 'boolean' })
          .option('batchSize', { type: 'number' })
          .option('epochs', { type: 'number' })
          .option('patience', { type: 'number' })
          .option('seed', { type: 'number' }),
      trainCommand,
    )
    .command(
      'generate',
      'decode each source line with a trained checkpoint',
      (y) =>
        y
          .option('checkpoint', { type: 'string', demandOption: true })
          .option('src', { type: 'string', demandOption: true })
          .option('out', { type: 'string', demandOption: true })
          .option('beamSize', { type: 'number' }),
      generateCommand,
    )
    .command(
      'pipeline',
      'run planner then realizer over MR token lines',
      (y) =>
        y
          .option('planner', { type: 'string', demandOption: true })
          .option('realizer', { type: 'string', demandOption: true })
          .option('src', { type: 'string', demandOption: true })
          .option('out', { type: 'string', demandOption: true })
          .option('beamSize', { type: 'number' }),
      pipelineCommand,
    )
    .demandCommand(1)
    .strict()
    .parseSync();
}

main(hideBin(process.argv));
