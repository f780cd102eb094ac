"""Reading, validating and writing CoNLL-U sentences.

Only basic word lines are modeled: multiword-token ranges (``i-j``) and
empty nodes (``i.1``) are skipped on input.  Columns 9 (deps) and 10 (misc)
are carried opaquely so that well-formed input round-trips.
"""

from dataclasses import dataclass, field

COLUMNS = ("id", "form", "lemma", "upos", "xpos", "feats", "head", "deprel", "deps", "misc")


class ConlluError(ValueError):
    """Malformed CoNLL-U input, located by sentence ordinal and line number."""

    def __init__(self, message, sentence=None, line=None):
        self.sentence = sentence
        self.line = line
        where = []
        if sentence is not None:
            where.append("sentence %d" % sentence)
        if line is not None:
            where.append("line %d" % line)
        if where:
            message = "%s (%s)" % (message, ", ".join(where))
        super().__init__(message)


@dataclass(frozen=True)
class Token:
    id: int
    form: str
    lemma: str
    upos: str
    xpos: str = "_"
    feats: frozenset = frozenset()
    head: int = 0
    deprel: str = "dep"
    deps: str = "_"
    misc: str = "_"

    def __post_init__(self):
        if self.id < 1:
            raise ConlluError("token id must be >= 1, got %d" % self.id)
        if self.head < 0:
            raise ConlluError("head must be >= 0, got %d" % self.head)
        if self.head == self.id:
            raise ConlluError("token %d is its own head" % self.id)
        if not self.form:
            raise ConlluError("token %d has an empty form" % self.id)

    def has_feat(self, feat):
        return feat in self.feats


@dataclass(frozen=True)
class Sentence:
    tokens: tuple
    comments: tuple = ()

    def __post_init__(self):
        validate_sentence(self)

    @property
    def forms(self):
        return [t.form for t in self.tokens]


@dataclass(frozen=True)
class DepTree:
    root: int
    children: dict = field(compare=False)

    def child_ids(self, node_id):
        return self.children.get(node_id, [])


def validate_sentence(sentence, ordinal=None, line=None):
    tokens = sentence.tokens
    if not tokens:
        raise ConlluError("sentence has no word lines", ordinal, line)
    for i, tok in enumerate(tokens, start=1):
        if tok.id != i:
            raise ConlluError(
                "token ids must be 1..n in order; position %d has id %d" % (i, tok.id),
                ordinal, line)
    n = len(tokens)
    roots = [t.id for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise ConlluError("expected exactly one root, found %d" % len(roots), ordinal, line)
    for tok in tokens:
        if tok.head > n:
            raise ConlluError("token %d has head %d out of range 1..%d" % (tok.id, tok.head, n),
                              ordinal, line)
    # Connectivity from the root implies acyclicity (each node has one head).
    children = {}
    for tok in tokens:
        children.setdefault(tok.head, []).append(tok.id)
    seen = set()
    stack = [roots[0]]
    while stack:
        node = stack.pop()
        seen.add(node)
        stack.extend(children.get(node, []))
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise ConlluError("head references contain a cycle; unreachable tokens: %s"
                          % ", ".join(map(str, missing)), ordinal, line)


def parse_feats(text):
    if text == "_":
        return frozenset()
    feats = []
    for item in text.split("|"):
        if "=" not in item:
            raise ConlluError("malformed feature %r" % item)
        feats.append(item)
    return frozenset(feats)


def render_feats(feats):
    if not feats:
        return "_"
    return "|".join(sorted(feats, key=lambda f: f.split("=", 1)[0].lower()))


def _is_word_id(text):
    # Skips multiword ranges "i-j" and empty nodes "i.1".
    return text.isdigit()


def _split_blocks(text):
    """Yield (lines_with_numbers, ordinal) per blank-line-separated block."""
    block = []
    ordinal = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            if block:
                ordinal += 1
                yield block, ordinal
                block = []
            continue
        block.append((lineno, line))
    if block:
        yield block, ordinal + 1


def _parse_block(lines, ordinal):
    comments = []
    tokens = []
    start_line = lines[0][0]
    for lineno, line in lines:
        if line.startswith("#"):
            comments.append(line)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluError("expected 10 tab-separated columns, got %d" % len(cols),
                              ordinal, lineno)
        if "-" in cols[0] or "." in cols[0]:
            continue  # multiword-token range or empty node
        if not _is_word_id(cols[0]):
            raise ConlluError("non-integer token id %r" % cols[0], ordinal, lineno)
        if not cols[6].isdigit():
            raise ConlluError("non-integer head %r" % cols[6], ordinal, lineno)
        try:
            token = Token(
                id=int(cols[0]), form=cols[1], lemma=cols[2], upos=cols[3],
                xpos=cols[4], feats=parse_feats(cols[5]), head=int(cols[6]),
                deprel=cols[7], deps=cols[8], misc=cols[9])
        except ConlluError as err:
            raise ConlluError(str(err), ordinal, lineno) from None
        tokens.append(token)
    if not tokens:
        raise ConlluError("block contains no word lines", ordinal, start_line)
    try:
        return Sentence(tokens=tuple(tokens), comments=tuple(comments))
    except ConlluError as err:
        raise ConlluError(str(err), ordinal, start_line) from None


def parse_conllu(text):
    """Parse CoNLL-U text into a list of Sentence values; malformed input
    is a hard error."""
    return [_parse_block(lines, ordinal) for lines, ordinal in _split_blocks(text)]


def tolerant_parse(text):
    """Parse block by block; returns (sentences, errors) so batch commands
    can report and skip offending sentences."""
    sentences = []
    errors = []
    for lines, ordinal in _split_blocks(text):
        try:
            sentences.append(_parse_block(lines, ordinal))
        except ConlluError as err:
            errors.append(err)
    return sentences, errors


def serialize_conllu(sentences):
    """Render sentences back to CoNLL-U text; inverse of parse_conllu."""
    blocks = []
    for sentence in sentences:
        lines = list(sentence.comments)
        for tok in sentence.tokens:
            lines.append("\t".join([
                str(tok.id), tok.form, tok.lemma, tok.upos, tok.xpos,
                render_feats(tok.feats), str(tok.head), tok.deprel,
                tok.deps, tok.misc]))
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def to_tree(sentence):
    """Build the dependency tree mirrored by the head column."""
    children = {}
    root = None
    for tok in sentence.tokens:
        if tok.head == 0:
            root = tok.id
        else:
            children.setdefault(tok.head, []).append(tok.id)
    for kids in children.values():
        kids.sort()
    return DepTree(root=root, children=children)
