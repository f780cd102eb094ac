"""Linearized intermediate representation of a content-word tree.

A tree is flattened depth first.  A node with two or more children wraps
them in the scope markers ``_(`` and ``)_``; a single child follows its
parent bare.  Delinearization picks the canonical (flattest) tree among
the strings the single-child shortcut makes ambiguous.
"""

from dataclasses import dataclass

from .uud import UUDNode, UUDTree

OPEN = "_("
CLOSE = ")_"
MARKERS = (OPEN, CLOSE)


class MalformedIRError(ValueError):
    """Invalid IR token sequence; reason is one of a fixed set of codes."""

    def __init__(self, reason, message):
        self.reason = reason
        super().__init__(message)


@dataclass(frozen=True)
class IRSequence:
    tokens: tuple

    def __post_init__(self):
        validate_tokens(self.tokens)

    def form_tokens(self):
        return [t for t in self.tokens if t not in MARKERS]

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def validate_tokens(tokens):
    if not tokens:
        raise MalformedIRError("empty", "empty IR")
    if tokens[0] in MARKERS:
        raise MalformedIRError("marker-root", "IR must start with a form token, got %r" % tokens[0])
    depth = 0
    for tok in tokens:
        if tok == OPEN:
            depth += 1
        elif tok == CLOSE:
            depth -= 1
            if depth < 0:
                raise MalformedIRError("unbalanced", "unbalanced markers: %r closes nothing" % CLOSE)
        elif not tok:
            raise MalformedIRError("empty-token", "empty form token")
    if depth != 0:
        raise MalformedIRError("unbalanced", "unbalanced markers: %d unclosed %r" % (depth, OPEN))


def linearize(tree):
    """Depth-first flattening with the single-child marker omission."""
    out = []

    def emit(node):
        out.append(node.form)
        if len(node.children) == 1:
            emit(node.children[0])
        elif len(node.children) >= 2:
            out.append(OPEN)
            for child in node.children:
                emit(child)
            out.append(CLOSE)

    emit(tree.root)
    return IRSequence(tokens=tuple(out))


def delinearize(seq):
    """Canonical inverse of linearize.

    Top level: consecutive bare tokens form a unary chain; a trailing
    scope attaches its contents to the last chain node.  Inside a scope
    bare tokens are siblings, each optionally followed by its own child
    scope.  Positions are assigned in emission order.
    """
    tokens = seq.tokens
    pos = 0
    i = 0

    def new_node(form):
        nonlocal pos
        pos += 1
        return UUDNode(form=form, original_position=pos)

    def parse_scope():
        # called with tokens[i] == OPEN
        nonlocal i
        i += 1
        siblings = []
        while i < len(tokens) and tokens[i] != CLOSE:
            if tokens[i] == OPEN:
                raise MalformedIRError(
                    "dangling-scope", "scope opened with no preceding sibling at token %d" % (i + 1))
            node = new_node(tokens[i])
            i += 1
            if i < len(tokens) and tokens[i] == OPEN:
                node.children = parse_scope()
            siblings.append(node)
        if i >= len(tokens):
            raise MalformedIRError("unbalanced", "unclosed scope")
        i += 1  # consume CLOSE
        if not siblings:
            raise MalformedIRError("empty-scope", "empty scope '_( )_'")
        return siblings

    root = new_node(tokens[i])
    i += 1
    tail = root
    while i < len(tokens) and tokens[i] not in MARKERS:
        node = new_node(tokens[i])
        tail.children = [node]
        tail = node
        i += 1
    if i < len(tokens):
        if tokens[i] == CLOSE:
            raise MalformedIRError("unbalanced", "unexpected %r at token %d" % (CLOSE, i + 1))
        tail.children = parse_scope()
    if i != len(tokens):
        raise MalformedIRError(
            "trailing-tokens", "tokens after closed top-level scope at token %d" % (i + 1))
    return UUDTree(root=root)


def render(seq):
    return " ".join(seq.tokens)


def parse_ir(line):
    tokens = tuple(line.split())
    return IRSequence(tokens=tokens)
