"""Corpus-level evaluation metrics: BLEU, NIST, METEOR-lite, ROUGE-L and
CIDEr-D, with multi-reference support.

METEOR is implemented in a reduced form ("meteor_lite"): exact and
stem-based unigram matching only, no synonym or paraphrase resources.
Parity with the official METEOR release is explicitly not claimed.
"""

import math
from collections import Counter
from dataclasses import dataclass, field

from .corpus import tokenize
from .kernels import lcs_length_tokens


class MetricError(ValueError):
    pass


@dataclass(frozen=True)
class EvalInstance:
    hypothesis: tuple
    references: tuple

    def __post_init__(self):
        if not self.hypothesis:
            raise MetricError("empty hypothesis")
        if not self.references:
            raise MetricError("instance needs at least one reference")
        if any(not r for r in self.references):
            raise MetricError("empty reference")


@dataclass
class MetricReport:
    bleu: float
    nist: float
    meteor: float
    rouge_l: float
    cider: float
    components: dict = field(default_factory=dict)


def _ngrams(tokens, n):
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def _max_ref_counts(references, n):
    counts = Counter()
    for ref in references:
        for gram, c in _ngrams(ref, n).items():
            if c > counts[gram]:
                counts[gram] = c
    return counts


def _require_instances(instances):
    if not instances:
        raise MetricError("no instances to score")


def bleu(instances, max_n=4):
    """Corpus BLEU, multi-bleu conventions: clipped modified precision,
    closest-reference brevity penalty (ties broken toward shorter), no
    smoothing."""
    _require_instances(instances)
    clipped = [0] * (max_n + 1)
    totals = [0] * (max_n + 1)
    hyp_len = 0
    ref_len = 0
    for inst in instances:
        hyp = inst.hypothesis
        hyp_len += len(hyp)
        ref_len += len(min(inst.references, key=lambda r: (abs(len(r) - len(hyp)), len(r))))
        for n in range(1, max_n + 1):
            hyp_counts = _ngrams(hyp, n)
            ref_counts = _max_ref_counts(inst.references, n)
            totals[n] += sum(hyp_counts.values())
            clipped[n] += sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
    precisions = [clipped[n] / totals[n] if totals[n] else 0.0 for n in range(1, max_n + 1)]
    if hyp_len > ref_len:
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - ref_len / hyp_len)
    if any(p == 0.0 for p in precisions):
        score = 0.0
    else:
        score = brevity * math.exp(sum(math.log(p) for p in precisions) / max_n)
    components = {"p%d" % n: precisions[n - 1] for n in range(1, max_n + 1)}
    components["brevity_penalty"] = brevity
    components["hyp_length"] = float(hyp_len)
    components["ref_length"] = float(ref_len)
    return score, components


# NIST brevity factor calibrated so the factor is 0.5 at a length ratio of 2/3.
_NIST_BETA = math.log(0.5) / math.log(2.0 / 3.0) ** 2


def nist(instances, max_n=5):
    """Corpus NIST: information-weighted n-gram precision (info gains from
    the reference corpus) with the NIST brevity factor."""
    _require_instances(instances)
    ref_counts = [Counter() for _ in range(max_n + 1)]
    total_ref_words = 0
    for inst in instances:
        for ref in inst.references:
            total_ref_words += len(ref)
            for n in range(1, max_n + 1):
                ref_counts[n].update(_ngrams(ref, n))

    def info(gram):
        n = len(gram)
        seen = ref_counts[n][gram]
        prefix = total_ref_words if n == 1 else ref_counts[n - 1][gram[:-1]]
        if seen == 0 or prefix == 0:
            return 0.0
        return math.log2(prefix / seen)

    gains = [0.0] * (max_n + 1)
    hyp_ngram_totals = [0] * (max_n + 1)
    hyp_len = 0
    mean_ref_len = 0.0
    for inst in instances:
        hyp = inst.hypothesis
        hyp_len += len(hyp)
        mean_ref_len += sum(len(r) for r in inst.references) / len(inst.references)
        for n in range(1, max_n + 1):
            hyp_counts = _ngrams(hyp, n)
            ref_max = _max_ref_counts(inst.references, n)
            hyp_ngram_totals[n] += max(len(hyp) - n + 1, 0)
            for gram, c in hyp_counts.items():
                matched = min(c, ref_max.get(gram, 0))
                if matched:
                    gains[n] += matched * info(gram)
    score = sum(gains[n] / hyp_ngram_totals[n]
                for n in range(1, max_n + 1) if hyp_ngram_totals[n])
    ratio = hyp_len / mean_ref_len if mean_ref_len else 0.0
    brevity = math.exp(_NIST_BETA * math.log(min(ratio, 1.0)) ** 2) if ratio > 0 else 0.0
    components = {"info_gain_%d" % n: gains[n] for n in range(1, max_n + 1)}
    components["brevity_factor"] = brevity
    return score * brevity, components


_ROUGE_BETA = 1.2


def rouge_l(instances):
    """Mean over instances of the best-reference LCS F-measure
    (beta = 1.2, the scoring-script convention)."""
    _require_instances(instances)
    total = 0.0
    lcs_total = 0.0
    for inst in instances:
        best = 0.0
        best_lcs = 0
        for ref in inst.references:
            lcs = lcs_length_tokens(inst.hypothesis, ref)
            if lcs == 0:
                continue
            precision = lcs / len(inst.hypothesis)
            recall = lcs / len(ref)
            beta2 = _ROUGE_BETA ** 2
            f = (1 + beta2) * recall * precision / (recall + beta2 * precision)
            if f > best:
                best = f
                best_lcs = lcs
        total += best
        lcs_total += best_lcs
    score = total / len(instances)
    return score, {"mean_best_lcs": lcs_total / len(instances)}


def cider(instances, max_n=4, sigma=6.0):
    """Corpus CIDEr-D: per-n tf-idf cosine with count clipping, Gaussian
    length penalty and the x10 scale; idf comes from the evaluation set's
    own references."""
    _require_instances(instances)
    doc_freq = Counter()
    for inst in instances:
        seen = set()
        for ref in inst.references:
            for n in range(1, max_n + 1):
                seen.update(_ngrams(ref, n))
        doc_freq.update(seen)
    log_num_instances = math.log(len(instances))

    def tfidf(tokens):
        vecs = []
        norms = []
        for n in range(1, max_n + 1):
            vec = {}
            norm = 0.0
            for gram, c in _ngrams(tokens, n).items():
                idf = log_num_instances - math.log(max(doc_freq[gram], 1.0))
                value = c * idf
                vec[gram] = value
                norm += value * value
            vecs.append(vec)
            norms.append(math.sqrt(norm))
        return vecs, norms

    per_n_totals = [0.0] * max_n
    total = 0.0
    for inst in instances:
        hyp_vecs, hyp_norms = tfidf(inst.hypothesis)
        sims = [0.0] * max_n
        for ref in inst.references:
            ref_vecs, ref_norms = tfidf(ref)
            delta = float(len(inst.hypothesis) - len(ref))
            length_penalty = math.exp(-(delta ** 2) / (2.0 * sigma ** 2))
            for n in range(max_n):
                if hyp_norms[n] == 0.0 or ref_norms[n] == 0.0:
                    continue
                dot = sum(min(value, ref_vecs[n].get(gram, 0.0)) * ref_vecs[n].get(gram, 0.0)
                          for gram, value in hyp_vecs[n].items())
                sims[n] += length_penalty * dot / (hyp_norms[n] * ref_norms[n])
        instance_score = 0.0
        for n in range(max_n):
            sim = 10.0 * sims[n] / len(inst.references)
            per_n_totals[n] += sim
            instance_score += sim
        total += instance_score / max_n
    score = total / len(instances)
    components = {"cider_%d" % (n + 1): per_n_totals[n] / len(instances) for n in range(max_n)}
    return score, components


_METEOR_ALPHA = 0.9
_METEOR_GAMMA = 0.5
_METEOR_BETA = 3.0
_STEM_SUFFIXES = ("ing", "ed", "es", "s", "ly")


def _stem(token):
    for suffix in _STEM_SUFFIXES:
        if token.endswith(suffix) and len(token) - len(suffix) >= 3:
            return token[:-len(suffix)]
    return token


def _align(hyp, ref):
    """Greedy two-stage unigram alignment (exact, then stem), preferring
    matches that extend the current contiguous chunk."""
    matched = {}
    used = set()
    for key in (lambda t: t, _stem):
        ref_keys = [key(t) for t in ref]
        for i, tok in enumerate(hyp):
            if i in matched:
                continue
            want = key(tok)
            candidates = [j for j, rk in enumerate(ref_keys) if rk == want and j not in used]
            if not candidates:
                continue
            prev = matched.get(i - 1)
            if prev is not None and prev + 1 in candidates:
                j = prev + 1
            else:
                j = candidates[0]
            matched[i] = j
            used.add(j)
    return matched


def _chunk_count(matched):
    pairs = sorted(matched.items())
    chunks = 0
    prev = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


def meteor_lite(instances):
    """Reduced METEOR: exact+stem unigram alignment, F_mean with
    alpha = 0.9, fragmentation penalty gamma = 0.5, beta = 3; best
    reference per instance, mean over instances."""
    _require_instances(instances)
    total = 0.0
    for inst in instances:
        best = 0.0
        for ref in inst.references:
            matched = _align(inst.hypothesis, ref)
            m = len(matched)
            if m == 0:
                continue
            precision = m / len(inst.hypothesis)
            recall = m / len(ref)
            f_mean = precision * recall / (_METEOR_ALPHA * precision
                                           + (1 - _METEOR_ALPHA) * recall)
            chunks = _chunk_count(matched)
            penalty = _METEOR_GAMMA * (chunks / m) ** _METEOR_BETA
            score = f_mean * (1.0 - penalty)
            if score > best:
                best = score
        total += best
    return total / len(instances), {}


def _read_lines(path):
    with open(path, encoding="utf-8") as f:
        return f.read()


def load_references(paths):
    """Reference loading: several parallel files, or a single file that is
    either parallel one-per-line or blank-line-separated multi-reference
    blocks."""
    if len(paths) > 1:
        columns = []
        for path in paths:
            columns.append([ln for ln in _read_lines(path).splitlines()])
        lengths = {len(c) for c in columns}
        if len(lengths) != 1:
            raise MetricError("reference files have differing line counts")
        return [tuple(col[i] for col in columns if col[i].strip())
                for i in range(len(columns[0]))]
    text = _read_lines(paths[0])
    stripped = text.strip("\n")
    if "\n\n" in stripped:
        blocks = [blk.splitlines() for blk in stripped.split("\n\n")]
        return [tuple(ln for ln in blk if ln.strip()) for blk in blocks]
    return [(ln,) for ln in stripped.splitlines()]


def score_instances(instances):
    bleu_score, bleu_parts = bleu(instances)
    nist_score, nist_parts = nist(instances)
    meteor_score, meteor_parts = meteor_lite(instances)
    rouge_score, rouge_parts = rouge_l(instances)
    cider_score, cider_parts = cider(instances)
    components = {}
    for prefix, parts in (("bleu", bleu_parts), ("nist", nist_parts),
                          ("meteor", meteor_parts), ("rouge_l", rouge_parts),
                          ("cider", cider_parts)):
        for key, value in parts.items():
            components["%s.%s" % (prefix, key)] = value
    return MetricReport(bleu=bleu_score, nist=nist_score, meteor=meteor_score,
                        rouge_l=rouge_score, cider=cider_score, components=components)


def score_files(hyp_path, ref_paths, pretokenized=False):
    hyp_lines = _read_lines(hyp_path).strip("\n").splitlines()
    ref_groups = load_references(list(ref_paths))
    if len(hyp_lines) != len(ref_groups):
        raise MetricError("hypothesis/reference count mismatch: %d vs %d"
                          % (len(hyp_lines), len(ref_groups)))
    split = (lambda s: s.split()) if pretokenized else tokenize
    instances = [
        EvalInstance(hypothesis=tuple(split(hyp)),
                     references=tuple(tuple(split(r)) for r in refs))
        for hyp, refs in zip(hyp_lines, ref_groups)]
    return score_instances(instances)
