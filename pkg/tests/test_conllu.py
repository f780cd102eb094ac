import random

import pytest

from uudnlg.conllu import (ConlluError, Sentence, Token, parse_conllu,
                           serialize_conllu, to_tree, tolerant_parse)

from generators import random_sentence


def make_lines(rows):
    return "\n".join("\t".join(r) for r in rows) + "\n"


def test_parse_fig3a_fixture(fig3a_raw_text):
    sentences = parse_conllu(fig3a_raw_text)
    assert len(sentences) == 1
    sent = sentences[0]
    assert len(sent.tokens) == 9
    root = [t for t in sent.tokens if t.head == 0][0]
    assert root.form == "go"
    tree = to_tree(sent)
    dependents = {sent.tokens[i - 1].form for i in tree.child_ids(root.id)}
    assert {"not", "Punter"} <= dependents


def test_parse_empty_string():
    assert parse_conllu("") == []


def test_cycle_error():
    text = make_lines([
        ("1", "a", "a", "NOUN", "_", "_", "0", "root", "_", "_"),
        ("2", "b", "b", "NOUN", "_", "_", "5", "dep", "_", "_"),
        ("3", "c", "c", "NOUN", "_", "_", "1", "dep", "_", "_"),
        ("4", "d", "d", "NOUN", "_", "_", "1", "dep", "_", "_"),
        ("5", "e", "e", "NOUN", "_", "_", "2", "dep", "_", "_"),
    ])
    with pytest.raises(ConlluError, match="cycle"):
        parse_conllu(text)


def test_wrong_column_count_reports_location():
    text = "1\ta\ta\tNOUN\t_\t_\t0\troot\t_\n"
    with pytest.raises(ConlluError, match="sentence 1.*line 1"):
        parse_conllu(text)


def test_non_integer_head():
    text = make_lines([("1", "a", "a", "NOUN", "_", "_", "x", "root", "_", "_")])
    with pytest.raises(ConlluError, match="non-integer head"):
        parse_conllu(text)


def test_head_out_of_range():
    text = make_lines([("1", "a", "a", "NOUN", "_", "_", "9", "dep", "_", "_")])
    with pytest.raises(ConlluError, match="root"):
        # no token has head 0
        parse_conllu(text)


def test_duplicate_ids():
    text = make_lines([
        ("1", "a", "a", "NOUN", "_", "_", "0", "root", "_", "_"),
        ("1", "b", "b", "NOUN", "_", "_", "2", "dep", "_", "_"),
    ])
    with pytest.raises(ConlluError, match="ids must be 1..n"):
        parse_conllu(text)


def test_multiple_roots():
    text = make_lines([
        ("1", "a", "a", "NOUN", "_", "_", "0", "root", "_", "_"),
        ("2", "b", "b", "NOUN", "_", "_", "0", "root", "_", "_"),
    ])
    with pytest.raises(ConlluError, match="exactly one root"):
        parse_conllu(text)


def test_multiword_and_empty_node_lines_skipped():
    text = "\n".join([
        "1-2\tcannot\t_\t_\t_\t_\t_\t_\t_\t_",
        "1\tcan\tcan\tAUX\t_\t_\t0\troot\t_\t_",
        "2\tnot\tnot\tPART\t_\t_\t1\tadvmod\t_\t_",
        "2.1\tghost\t_\t_\t_\t_\t_\t_\t_\t_",
    ]) + "\n"
    sentences = parse_conllu(text)
    assert [t.form for t in sentences[0].tokens] == ["can", "not"]


def test_feats_round_trip():
    text = make_lines([
        ("1", "not", "not", "PART", "_", "Polarity=Neg", "0", "root", "_", "_")])
    sent = parse_conllu(text)[0]
    assert sent.tokens[0].has_feat("Polarity=Neg")
    assert serialize_conllu([sent]) == text


def test_serialize_empty_list():
    assert serialize_conllu([]) == ""


def test_fixture_round_trips_byte_identically(fig3a_raw_text, fig3_delex_text):
    for text in (fig3a_raw_text, fig3_delex_text):
        assert serialize_conllu(parse_conllu(text)) == text


def test_to_tree_single_token():
    sent = Sentence(tokens=(Token(id=1, form="hi", lemma="hi", upos="INTJ", head=0),))
    tree = to_tree(sent)
    assert tree.root == 1
    assert tree.child_ids(1) == []


def test_to_tree_chain():
    sent = Sentence(tokens=(
        Token(id=1, form="a", lemma="a", upos="NOUN", head=0),
        Token(id=2, form="b", lemma="b", upos="NOUN", head=1),
        Token(id=3, form="c", lemma="c", upos="NOUN", head=2)))
    tree = to_tree(sent)
    assert tree.root == 1
    assert tree.child_ids(1) == [2]
    assert tree.child_ids(2) == [3]


def test_tolerant_parse_skips_bad_blocks():
    good = make_lines([("1", "a", "a", "NOUN", "_", "_", "0", "root", "_", "_")])
    bad = "1\tbroken\n"
    sentences, errors = tolerant_parse(good + "\n" + bad + "\n" + good)
    assert len(sentences) == 2
    assert len(errors) == 1


def test_parse_serialize_identity_randomized():
    rng = random.Random(7)
    for _ in range(1000):
        sent = random_sentence(rng)
        text = serialize_conllu([sent])
        parsed = parse_conllu(text)
        assert parsed == [sent]
        # second serialization is byte-stable
        assert serialize_conllu(parsed) == text


def test_to_tree_preserves_all_tokens_and_orders_children():
    rng = random.Random(8)
    for _ in range(300):
        sent = random_sentence(rng)
        tree = to_tree(sent)
        seen = set()
        stack = [tree.root]
        while stack:
            node = stack.pop()
            seen.add(node)
            kids = tree.child_ids(node)
            assert kids == sorted(kids)
            stack.extend(kids)
        assert seen == {t.id for t in sent.tokens}
