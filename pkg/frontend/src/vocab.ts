export const PAD = '<pad>';
export const BOS = '<s>';
export const EOS = '</s>';
export const UNK = '<unk>';
export const SPECIALS = [PAD, BOS, EOS, UNK];

export const PAD_ID = 0;
export const BOS_ID = 1;
export const EOS_ID = 2;
export const UNK_ID = 3;

export class Vocab {
  readonly tokens: string[];
  private readonly ids: Map<string, number>;

  constructor(tokens: string[]) {
    this.tokens = tokens;
    this.ids = new Map(tokens.map((t, i) => [t, i]));
  }

  get size(): number {
    return this.tokens.length;
  }

  id(token: string): number {
    const id = this.ids.get(token);
    return id === undefined ? UNK_ID : id;
  }

  has(token: string): boolean {
    return this.ids.has(token);
  }

  token(id: number): string {
    return id < this.tokens.length ? this.tokens[id] : UNK;
  }

  static build(sentences: string[][], maxSize = 50000): Vocab {
    const counts = new Map<string, number>();
    for (const tokens of sentences) {
      for (const tok of tokens) {
        counts.set(tok, (counts.get(tok) ?? 0) + 1);
      }
    }
    const ordered = [...counts.entries()]
      .sort((a, b) => b[1] - a[1] || (a[0] < b[0] ? -1 : 1))
      .slice(0, maxSize - SPECIALS.length)
      .map(([tok]) => tok);
    return new Vocab([...SPECIALS, ...ordered]);
  }
}

/** Map source tokens to target-vocab ids extended with per-line copy ids
 * for tokens outside the target vocabulary. */
export function extendedIds(
  srcTokens: string[],
  tgtVocab: Vocab,
): { ids: number[]; oovs: string[] } {
  const ids: number[] = [];
  const oovs: string[] = [];
  for (const tok of srcTokens) {
    if (tgtVocab.has(tok)) {
      ids.push(tgtVocab.id(tok));
    } else {
      let oov = oovs.indexOf(tok);
      if (oov < 0) {
        oov = oovs.length;
        oovs.push(tok);
      }
      ids.push(tgtVocab.size + oov);
    }
  }
  return { ids, oovs };
}
