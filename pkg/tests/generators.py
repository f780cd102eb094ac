"""Seeded random generators shared by the property tests."""

import random
import string

from uudnlg.conllu import Sentence, Token
from uudnlg.uud import UUDNode, UUDTree

UPOS_TAGS = ["NOUN", "VERB", "ADJ", "ADV", "PRON", "PROPN", "NUM", "INTJ",
             "CCONJ", "ADP", "AUX", "DET", "SCONJ", "PART", "PUNCT", "SYM", "X"]

DEPRELS = ["nsubj", "obj", "obl", "amod", "advmod", "conj", "dep"]


def random_word(rng, min_len=1, max_len=8):
    n = rng.randint(min_len, max_len)
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(n))


def random_sentence(rng, max_tokens=12):
    n = rng.randint(1, max_tokens)
    heads = random_heads(rng, n)
    tokens = []
    for i in range(1, n + 1):
        feats = frozenset({"Polarity=Neg"}) if rng.random() < 0.05 else frozenset()
        tokens.append(Token(
            id=i, form=random_word(rng), lemma=random_word(rng),
            upos=rng.choice(UPOS_TAGS), feats=feats, head=heads[i],
            deprel=rng.choice(DEPRELS)))
    comments = ("# sent_id = gen",) if rng.random() < 0.5 else ()
    return Sentence(tokens=tuple(tokens), comments=comments)


def random_heads(rng, n):
    """Random rooted tree over ids 1..n as an id -> head map (root head 0)."""
    root = rng.randint(1, n)
    rest = [i for i in range(1, n + 1) if i != root]
    rng.shuffle(rest)
    order = [root] + rest
    heads = {root: 0}
    for idx, tok_id in enumerate(order[1:], start=1):
        heads[tok_id] = rng.choice(order[:idx])
    return heads


def random_uud_tree(rng, max_nodes=12):
    """Random content-word tree with positions 1..n."""
    n = rng.randint(1, max_nodes)
    nodes = [UUDNode(form=random_word(rng), original_position=i + 1) for i in range(n)]
    for i in range(1, n):
        nodes[rng.randint(0, i - 1)].children.append(nodes[i])
    for node in nodes:
        node.sort_children()
    return UUDTree(root=nodes[0])


def random_restricted_uud_tree(rng, max_nodes=12):
    """Random tree in which every node outside the initial root chain has
    0 or >=2 children; delinearize is an exact inverse on this class."""
    n = rng.randint(1, max_nodes)
    nodes = [UUDNode(form=random_word(rng), original_position=i + 1) for i in range(n)]
    chain_len = rng.randint(1, n)
    for i in range(chain_len - 1):
        nodes[i].children.append(nodes[i + 1])
    tail = nodes[chain_len - 1]
    pool = nodes[chain_len:]
    attach_points = [tail]
    while pool:
        if len(pool) == 1:
            # a lone node may extend the root chain, or join a sibling
            # group that already has >= 2 members
            full = [node for node in nodes if len(node.children) >= 2]
            parent = rng.choice(full) if full else tail
            parent.children.append(pool.pop())
            if parent is tail and len(tail.children) == 1:
                tail = tail.children[0]
            continue
        parent = rng.choice(attach_points)
        take = rng.randint(2, len(pool))
        group, pool = pool[:take], pool[take:]
        parent.children.extend(group)
        attach_points = [p for p in attach_points if p is not parent] + group
    for node in nodes:
        node.sort_children()
    return UUDTree(root=nodes[0])
