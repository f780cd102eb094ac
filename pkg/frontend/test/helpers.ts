import { ParallelPair } from '../src/data.js';
import { Rng } from '../src/rng.js';

export const SYMBOLS = Array.from({ length: 12 }, (_, i) => `s${i}`);

/** Synthetic copy task: target equals source. */
export function copyPairs(rng: Rng, count: number): ParallelPair[] {
  const pairs: ParallelPair[] = [];
  for (let i = 0; i < count; i++) {
    const length = 3 + rng.int(5);
    const tokens = Array.from({ length }, () => SYMBOLS[rng.int(SYMBOLS.length)]);
    pairs.push({ src: tokens, tgt: tokens.slice() });
  }
  return pairs;
}

const VERBS = ['serves', 'offers', 'provides', 'sells', 'has'];
const FOODS = ['french', 'italian', 'chinese', 'english', 'japanese',
               'indian', 'fast', 'thai', 'greek', 'spanish'];
const AREAS = ['riverside', 'centre', 'north', 'south', 'east',
               'west', 'harbour', 'market', 'park', 'station'];

export interface E2eExample {
  mr: string[];
  plan: string[];
  text: string;
}

/** Deterministic template corpus: MR tokens -> two-sentence plan -> text. */
export function templateExamples(count: number): E2eExample[] {
  const examples: E2eExample[] = [];
  outer: for (const verb of VERBS) {
    for (const food of FOODS) {
      for (const area of AREAS) {
        if (examples.length >= count) break outer;
        const first = [verb, '_(', 'xname', food, ')_'];
        const second = ['located', '_(', 'it', area, ')_'];
        examples.push({
          mr: ['name', 'xname', 'food', food, 'area', area, 'verb', verb],
          plan: [...first, '<sent>', ...second],
          text: `xname ${verb} ${food} food . it is located in the ${area} .`,
        });
      }
    }
  }
  return examples;
}

export function realizerPairs(examples: E2eExample[]): ParallelPair[] {
  const pairs: ParallelPair[] = [];
  for (const ex of examples) {
    const sentences = ex.text.split(' . ').map((s) =>
      (s.endsWith('.') ? s : s + ' .').split(' '),
    );
    const irs: string[][] = [];
    let current: string[] = [];
    for (const tok of ex.plan) {
      if (tok === '<sent>') {
        irs.push(current);
        current = [];
      } else {
        current.push(tok);
      }
    }
    irs.push(current);
    for (let i = 0; i < irs.length; i++) {
      pairs.push({ src: irs[i], tgt: sentences[i] });
    }
  }
  return pairs;
}

export function tokenAccuracy(hyp: string[], ref: string[]): number {
  const length = Math.max(hyp.length, ref.length);
  if (length === 0) return 1;
  let matched = 0;
  for (let i = 0; i < Math.min(hyp.length, ref.length); i++) {
    if (hyp[i] === ref[i]) matched += 1;
  }
  return matched / length;
}
