"""Pruning full dependency trees down to content-word trees.

Function words are dropped and their kept descendants are reattached to
the nearest kept ancestor.  The drop/keep partition is data (PruneRules),
so callers can substitute their own rules; the defaults keep negation
markers, pronouns and coordinating conjunctions.
"""

from dataclasses import dataclass, field

DEFAULT_DROPPABLE_UPOS = frozenset({"ADP", "AUX", "DET", "SCONJ", "PART", "PUNCT", "SYM", "X"})
DEFAULT_NEGATION_FORMS = frozenset({"not", "n't", "no", "never"})


class UUDError(ValueError):
    pass


@dataclass(frozen=True)
class PruneRules:
    droppable_upos: frozenset = DEFAULT_DROPPABLE_UPOS
    negation_forms: frozenset = DEFAULT_NEGATION_FORMS
    extra_keep_forms: frozenset = frozenset()

    def keeps(self, token):
        # Keep rules override the UPOS drop list.
        form = token.form.lower()
        if form in self.extra_keep_forms:
            return True
        if token.has_feat("Polarity=Neg") or form in self.negation_forms:
            return True
        return token.upos not in self.droppable_upos


def default_rules():
    return PruneRules()


def load_rules(text):
    """Build PruneRules from a plain-text config, one directive per line.

    Directives: ``drop_upos TAG``, ``keep_form FORM``, ``negation_form FORM``.
    Blank lines and ``#`` comments are ignored.
    """
    droppable = set()
    keep_forms = set()
    negation_forms = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise UUDError("rules line %d: expected 'directive value', got %r" % (lineno, line))
        directive, value = parts
        if directive == "drop_upos":
            droppable.add(value)
        elif directive == "keep_form":
            keep_forms.add(value.lower())
        elif directive == "negation_form":
            negation_forms.add(value.lower())
        else:
            raise UUDError("rules line %d: unknown directive %r" % (lineno, directive))
    return PruneRules(
        droppable_upos=frozenset(droppable),
        negation_forms=frozenset(negation_forms),
        extra_keep_forms=frozenset(keep_forms))


@dataclass
class UUDNode:
    form: str
    original_position: int
    children: list = field(default_factory=list)

    def sort_children(self):
        self.children.sort(key=lambda c: c.original_position)


@dataclass
class UUDTree:
    root: UUDNode

    def nodes(self):
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(node.children)
        return out


def convert(sentence, tree, rules=None):
    """Prune a dependency tree to its content words.

    Each kept token's parent becomes its nearest kept ancestor.  If the
    input root is dropped, the kept node of minimal depth (ties broken by
    position) becomes the new root and the other orphaned subtrees attach
    under it.
    """
    if rules is None:
        rules = default_rules()
    tokens = sentence.tokens
    kept = {tok.id for tok in tokens if rules.keeps(tok)}
    if not kept:
        raise UUDError("all tokens dropped in sentence: %s" % " ".join(sentence.forms))

    head_of = {tok.id: tok.head for tok in tokens}

    depth = {tree.root: 0}
    stack = [tree.root]
    while stack:
        node = stack.pop()
        for child in tree.child_ids(node):
            depth[child] = depth[node] + 1
            stack.append(child)

    def nearest_kept_ancestor(tok_id):
        parent = head_of[tok_id]
        while parent != 0:
            if parent in kept:
                return parent
            parent = head_of[parent]
        return None

    nodes = {tok.id: UUDNode(form=tokens[tok.id - 1].form, original_position=tok.id)
             for tok in tokens if tok.id in kept}
    orphans = []
    for tok_id in sorted(kept):
        parent = nearest_kept_ancestor(tok_id)
        if parent is None:
            orphans.append(tok_id)
        else:
            nodes[parent].children.append(nodes[tok_id])
    root_id = min(orphans, key=lambda i: (depth[i], i))
    for tok_id in orphans:
        if tok_id != root_id:
            nodes[root_id].children.append(nodes[tok_id])
    for node in nodes.values():
        node.sort_children()
    return UUDTree(root=nodes[root_id])


def project_content_words(uud_tree):
    """All (form, original_position) pairs, ascending by position."""
    pairs = [(n.form, n.original_position) for n in uud_tree.nodes()]
    pairs.sort(key=lambda p: p[1])
    return pairs
