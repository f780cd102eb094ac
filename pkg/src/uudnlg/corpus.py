"""Tokenization, vocabulary building, augmentation filtering, corpus stats."""

import re
from dataclasses import dataclass, field

_ABBREVIATIONS = {
    "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "no.", "vs.", "etc.",
    "e.g.", "i.e.", "jr.", "sr.", "inc.", "ltd.", "co.", "approx.",
}

# "n't" must come before the word alternative so contractions stay intact.
_TOKEN_RE = re.compile(r"n't|'(?:s|re|ve|ll|d|m)|\w+|[^\w\s]")
_CONTRACTION_SPLIT_RE = re.compile(r"(?<=\w)(n't|'s|'re|'ve|'ll|'d|'m)\b")
_SENTENCE_END_RE = re.compile(r"([.!?]+['\")\]]*)(\s+|$)")


def tokenize(sentence):
    """Whitespace/punctuation tokenizer; splits contractions ("doesn't" ->
    "does", "n't") and keeps placeholder tokens intact."""
    text = _CONTRACTION_SPLIT_RE.sub(r" \1", sentence)
    return _TOKEN_RE.findall(text)


def split_sentences(text):
    """Rule-based sentence splitting on final punctuation with an
    abbreviation guard list."""
    sentences = []
    start = 0
    for match in _SENTENCE_END_RE.finditer(text):
        end = match.end(1)
        candidate = text[start:end].strip()
        if not candidate:
            start = match.end()
            continue
        last_word = candidate.split()[-1].lower()
        if last_word in _ABBREVIATIONS:
            continue
        sentences.append(candidate)
        start = match.end()
    rest = text[start:].strip()
    if rest:
        sentences.append(rest)
    return sentences


@dataclass
class Vocab:
    entries: dict = field(default_factory=dict)

    @property
    def size(self):
        return len(self.entries)

    def __contains__(self, token):
        return token in self.entries

    def total(self):
        return sum(self.entries.values())


def build_vocab(tokenized_sentences):
    """Token counts over already tokenized, lowercased sentences."""
    entries = {}
    for tokens in tokenized_sentences:
        for tok in tokens:
            entries[tok] = entries.get(tok, 0) + 1
    return Vocab(entries=entries)


def filter_augmentation(sentences, vocab, min_len=5, max_len=30):
    """Keep sentences fully inside the vocabulary and within the length
    bounds (inclusive); rejects carry a reason."""
    kept = []
    rejected = []
    for tokens in sentences:
        if not (min_len <= len(tokens) <= max_len):
            rejected.append((tokens, "length"))
            continue
        oov = next((t for t in tokens if t not in vocab), None)
        if oov is not None:
            rejected.append((tokens, "oov:%s" % oov))
            continue
        kept.append(tokens)
    return kept, rejected


@dataclass
class CorpusStats:
    sentence_count: int = 0
    min_len: int = 0
    max_len: int = 0
    mean_len: float = 0.0

    @property
    def empty(self):
        return self.sentence_count == 0


def corpus_stats(tokenized_sentences):
    lengths = [len(t) for t in tokenized_sentences]
    if not lengths:
        return CorpusStats()
    return CorpusStats(
        sentence_count=len(lengths),
        min_len=min(lengths),
        max_len=max(lengths),
        mean_len=round(sum(lengths) / len(lengths), 2))
