"""Command line pipeline: data preparation, filtering, scoring, IR
conversion utilities and the IR-coverage linter.

Every subcommand consumes and emits files; nothing touches the network.
``UUDNLG_WORKERS`` caps parallelism for the sharded commands; output
order always equals input order.
"""

import argparse
import json
import os
import sys
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import conllu, corpus, e2e, ir, metrics, uud


@dataclass
class CoverageReport:
    missing: list
    repeated: list

    @property
    def verdict(self):
        return "pass" if not self.missing and not self.repeated else "fail"


def lint_coverage(ir_seq, generated, allowance=0):
    """Compare IR content-token counts against a generated token sequence.

    Tokens absent from the IR are never flagged; a generated count above
    the IR count plus the allowance counts as repetition.
    """
    ir_counts = Counter(ir_seq.form_tokens())
    gen_counts = Counter(generated)
    missing = []
    repeated = []
    for token in dict.fromkeys(ir_seq.form_tokens()):
        if gen_counts[token] < ir_counts[token]:
            missing.append(token)
        elif gen_counts[token] > ir_counts[token] + allowance:
            repeated.append(token)
    return CoverageReport(missing=missing, repeated=repeated)


def _workers():
    value = os.environ.get("UUDNLG_WORKERS", "")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


def _parallel_map(fn, items):
    workers = _workers()
    if workers == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _read_text(path):
    return Path(path).read_text(encoding="utf-8")


def _write_lines(path, lines):
    Path(path).write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def _load_rules(path):
    if path is None:
        return uud.default_rules()
    return uud.load_rules(_read_text(path))


# -- bracketed tree lines (delinearize output / linearize input) ------------

def render_tree_line(tree):
    def render(node):
        if node.children:
            return "(%s %s)" % (node.form, " ".join(render(c) for c in node.children))
        return "(%s)" % node.form

    return render(tree.root)


def parse_tree_line(line):
    tokens = line.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0
    i = 0

    def parse_node():
        nonlocal i, pos
        if i >= len(tokens) or tokens[i] != "(":
            raise ValueError("expected '(' at token %d" % (i + 1))
        i += 1
        if i >= len(tokens) or tokens[i] in "()":
            raise ValueError("expected node form at token %d" % (i + 1))
        pos += 1
        node = uud.UUDNode(form=tokens[i], original_position=pos)
        i += 1
        while i < len(tokens) and tokens[i] == "(":
            node.children.append(parse_node())
        if i >= len(tokens) or tokens[i] != ")":
            raise ValueError("expected ')' at token %d" % (i + 1))
        i += 1
        return node

    root = parse_node()
    if i != len(tokens):
        raise ValueError("trailing material after tree")
    return uud.UUDTree(root=root)


# -- subcommands -------------------------------------------------------------

def cmd_prepare(args):
    pairs = e2e.read_dataset(args.dataset)
    rules = _load_rules(args.rules)
    parses, parse_errors = conllu.tolerant_parse(_read_text(args.conllu))
    for err in parse_errors:
        print("prepare: skipping malformed parse: %s" % err, file=sys.stderr)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    planner_src, planner_tgt = [], []
    realizer_src, realizer_tgt = [], []
    delex_lines = []
    skipped = 0
    ptr = 0
    for mr, ref in pairs:
        delexed, delex_map = e2e.delexicalize(ref, mr)
        sentence_tokens = [
            [t.lower() for t in corpus.tokenize(s)]
            for s in corpus.split_sentences(delexed)]
        matched = []
        missing = 0
        for tokens in sentence_tokens:
            if ptr < len(parses) and parses[ptr].forms == tokens:
                matched.append((parses[ptr], tokens))
                ptr += 1
            else:
                missing += 1
        if missing or not matched:
            skipped += 1
            continue
        irs = []
        for sentence, tokens in matched:
            tree = uud.convert(sentence, conllu.to_tree(sentence), rules)
            seq = ir.linearize(tree)
            irs.append(seq)
            realizer_src.append(ir.render(seq))
            realizer_tgt.append(" ".join(tokens))
        pair = e2e.build_planner_pair(mr, irs)
        planner_src.append(" ".join(pair.source))
        planner_tgt.append(" ".join(pair.target))
        delex_lines.append("\t".join(
            part for ph, surface in delex_map.pairs for part in (ph, surface)))

    _write_lines(out_dir / "planner.src", planner_src)
    _write_lines(out_dir / "planner.tgt", planner_tgt)
    _write_lines(out_dir / "realizer.src", realizer_src)
    _write_lines(out_dir / "realizer.tgt", realizer_tgt)
    _write_lines(out_dir / "delex.map", delex_lines)
    manifest = {
        "utterances": len(pairs),
        "kept": len(planner_src),
        "skipped": skipped,
        "realizer_pairs": len(realizer_src),
        "malformed_parses": len(parse_errors),
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n",
                                           encoding="utf-8")
    print("prepare: %(kept)d utterances, %(realizer_pairs)d realizer pairs, "
          "%(skipped)d skipped" % manifest)
    return 0


def _load_tokenized(path, per_document=False, lowercase=True):
    sentences = []
    for line in _read_text(path).splitlines():
        if not line.strip():
            continue
        parts = corpus.split_sentences(line) if per_document else [line]
        sentences.extend(parts)

    def tok(sentence):
        tokens = corpus.tokenize(sentence)
        return [t.lower() for t in tokens] if lowercase else tokens

    return _parallel_map(tok, sentences)


def cmd_filter(args):
    vocab = corpus.build_vocab(_load_tokenized(args.vocab_source))
    sentences = _load_tokenized(getattr(args, "in"), per_document=args.per_document)
    kept, rejected = corpus.filter_augmentation(
        sentences, vocab, min_len=args.min_len, max_len=args.max_len)
    _write_lines(args.out, [" ".join(t) for t in kept])
    if args.report:
        report = {id(t): reason for t, reason in rejected}
        lines = []
        for tokens in sentences:
            reason = report.get(id(tokens), "kept")
            lines.append("%s\t%s" % (" ".join(tokens), reason))
        _write_lines(args.report, lines)
    print("filter: kept %d of %d sentences" % (len(kept), len(sentences)))
    return 0


def cmd_score(args):
    report = metrics.score_files(args.hyp, args.refs.split(","),
                                 pretokenized=args.pretokenized)
    scores = [("bleu", report.bleu), ("nist", report.nist), ("meteor", report.meteor),
              ("rouge_l", report.rouge_l), ("cider", report.cider)]
    if args.format == "machine-readable":
        for name, value in scores:
            print("%s\t%.6f" % (name, value))
        for key, value in sorted(report.components.items()):
            print("component.%s\t%.6f" % (key, value))
    else:
        for name, value in scores:
            print("%-8s %.4f" % (name.upper(), value))
    return 0


def cmd_stats(args):
    if args.pretokenized:
        sentences = [line.split() for line in _read_text(getattr(args, "in")).splitlines()
                     if line.strip()]
    else:
        sentences = _load_tokenized(getattr(args, "in"))
    stats = corpus.corpus_stats(sentences)
    if stats.empty:
        print("empty corpus")
        return 0
    print("sentences %d" % stats.sentence_count)
    print("min_len   %d" % stats.min_len)
    print("max_len   %d" % stats.max_len)
    print("mean_len  %.2f" % stats.mean_len)
    return 0


def cmd_linearize(args):
    rules = _load_rules(args.rules)
    out = []
    skipped = 0
    if args.source_format == "conllu":
        sentences, errors = conllu.tolerant_parse(_read_text(getattr(args, "in")))
        for err in errors:
            skipped += 1
            print("linearize: skipping: %s" % err, file=sys.stderr)
        for sentence in sentences:
            try:
                tree = uud.convert(sentence, conllu.to_tree(sentence), rules)
            except uud.UUDError as err:
                skipped += 1
                print("linearize: skipping: %s" % err, file=sys.stderr)
                continue
            out.append(ir.render(ir.linearize(tree)))
    else:
        for lineno, line in enumerate(_read_text(getattr(args, "in")).splitlines(), start=1):
            if not line.strip():
                continue
            try:
                tree = parse_tree_line(line)
            except ValueError as err:
                skipped += 1
                print("linearize: skipping line %d: %s" % (lineno, err), file=sys.stderr)
                continue
            out.append(ir.render(ir.linearize(tree)))
    _write_lines(args.out, out)
    if skipped:
        print("linearize: %d skipped" % skipped, file=sys.stderr)
    return 0


def cmd_delinearize(args):
    out = []
    for lineno, line in enumerate(_read_text(getattr(args, "in")).splitlines(), start=1):
        if not line.strip():
            continue
        try:
            seq = ir.parse_ir(line)
            out.append(render_tree_line(ir.delinearize(seq)))
        except ir.MalformedIRError as err:
            print("delinearize: line %d: %s" % (lineno, err), file=sys.stderr)
            return 1
    _write_lines(args.out, out)
    return 0


def cmd_validate(args):
    text = _read_text(getattr(args, "in"))
    if args.kind == "conllu":
        try:
            conllu.parse_conllu(text)
        except conllu.ConlluError as err:
            print("invalid: %s" % err)
            return 1
    else:
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                ir.parse_ir(line)
            except ir.MalformedIRError as err:
                print("invalid: line %d: %s" % (lineno, err))
                return 1
    print("ok")
    return 0


def cmd_lint(args):
    ir_lines = [l for l in _read_text(args.ir).splitlines() if l.strip()]
    gen_lines = [l for l in _read_text(args.gen).splitlines() if l.strip()]
    if len(ir_lines) != len(gen_lines):
        print("lint: line count mismatch: %d IRs vs %d generations"
              % (len(ir_lines), len(gen_lines)), file=sys.stderr)
        return 1
    failures = 0
    for lineno, (ir_line, gen_line) in enumerate(zip(ir_lines, gen_lines), start=1):
        seq = ir.parse_ir(ir_line)
        report = lint_coverage(seq, gen_line.split(), allowance=args.allowance)
        if report.verdict == "fail":
            failures += 1
            parts = []
            if report.missing:
                parts.append("missing: %s" % " ".join(report.missing))
            if report.repeated:
                parts.append("repeated: %s" % " ".join(report.repeated))
            print("line %d: fail (%s)" % (lineno, "; ".join(parts)))
        else:
            print("line %d: pass" % lineno)
    print("lint: %d of %d failed" % (failures, len(ir_lines)))
    return 1 if failures else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="uudnlg",
                                     description="Pipeline NLG data toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="build planner/realizer training files")
    p.add_argument("--dataset", required=True, help="mr,ref dataset file")
    p.add_argument("--conllu", required=True, help="sentence-aligned parses")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--rules", help="prune rules config")
    p.set_defaults(func=cmd_prepare)

    p = sub.add_parser("filter", help="vocabulary-overlap augmentation filter")
    p.add_argument("--in", required=True, help="raw corpus, one line per unit")
    p.add_argument("--vocab-source", required=True, help="text that defines the vocabulary")
    p.add_argument("--out", required=True, help="kept sentences output")
    p.add_argument("--report", help="per-sentence kept/reason report")
    p.add_argument("--min-len", type=int, default=5)
    p.add_argument("--max-len", type=int, default=30)
    p.add_argument("--per-document", action="store_true",
                   help="split each input line into sentences first")
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("score", help="evaluate hypotheses against references")
    p.add_argument("--hyp", required=True)
    p.add_argument("--refs", required=True, help="FILE[,FILE...]")
    p.add_argument("--pretokenized", action="store_true")
    p.add_argument("--format", choices=("text", "machine-readable"), default="text")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("stats", help="corpus length statistics")
    p.add_argument("--in", required=True)
    p.add_argument("--pretokenized", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("linearize", help="CoNLL-U or tree lines to IR lines")
    p.add_argument("--in", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--from", dest="source_format", choices=("conllu", "tree"),
                   default="conllu")
    p.add_argument("--rules", help="prune rules config")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("delinearize", help="IR lines to bracketed tree lines")
    p.add_argument("--in", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_delinearize)

    p = sub.add_parser("validate", help="check CoNLL-U or IR files")
    p.add_argument("--in", required=True)
    p.add_argument("--kind", choices=("conllu", "ir"), default="conllu")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lint", help="IR coverage linter for generated text")
    p.add_argument("--ir", required=True)
    p.add_argument("--gen", required=True)
    p.add_argument("--allowance", type=int, default=0,
                   help="repeats tolerated above the IR count")
    p.set_defaults(func=cmd_lint)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (conllu.ConlluError, uud.UUDError, ir.MalformedIRError,
            e2e.E2EDataError, metrics.MetricError, OSError) as err:
        print("uudnlg %s: error: %s" % (args.command, err), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
