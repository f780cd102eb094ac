import * as fs from 'fs';

export interface ParallelPair {
  src: string[];
  tgt: string[];
}

export function readTokenLines(path: string): string[][] {
  const text = fs.readFileSync(path, 'utf8');
  return text
    .split('\n')
    .filter((line) => line.trim().length > 0)
    .map((line) => line.trim().split(/\s+/));
}

export function readParallel(srcPath: string, tgtPath: string): ParallelPair[] {
  const src = readTokenLines(srcPath);
  const tgt = readTokenLines(tgtPath);
  if (src.length !== tgt.length) {
    throw new Error(
      `misaligned files: ${src.length} source lines vs ${tgt.length} target lines`,
    );
  }
  if (src.length === 0) {
    throw new Error('empty corpus');
  }
  return src.map((s, i) => ({ src: s, tgt: tgt[i] }));
}

/** Planner output lines carry one IR per sentence joined by this marker;
 * the realizer consumes them one sentence at a time. */
export const SENTENCE_SEPARATOR = '<sent>';

export function splitPlan(tokens: string[]): string[][] {
  const sentences: string[][] = [];
  let current: string[] = [];
  for (const tok of tokens) {
    if (tok === SENTENCE_SEPARATOR) {
      if (current.length > 0) sentences.push(current);
      current = [];
    } else {
      current.push(tok);
    }
  }
  if (current.length > 0) sentences.push(current);
  return sentences;
}
