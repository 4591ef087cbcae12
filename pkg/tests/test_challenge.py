import random

import pytest
from hypothesis import given, settings, strategies as st

from randfix import as_plain, brute_force_extract, random_corpus
from udchallenge.alignment import AlignmentLink, AlignmentSet, Dimension, SentenceAlignment, parse_alignments
from udchallenge.challenge import (DivergenceRule, challenge_sets_tsv, extract,
                                   parse_challenge_sets_tsv, parse_rules_file, preset_rules,
                                   sentence_matches, serialize_rules)
from udchallenge.confusion import MatrixSpec, build_confusion
from udchallenge.errors import ParseError, ValidationError
from udchallenge.treebank import ParallelCorpus, Sentence, Token, parse_conllu

AUX2VERB = DivergenceRule("aux2verb", Dimension.UPOS, "AUX", "VERB")


def test_presets():
    rules = preset_rules()
    assert len(rules) == 6
    assert len({r.name for r in rules}) == 6
    assert AUX2VERB in rules
    triples = [(r.dimension.value, r.source_label, r.target_label) for r in rules]
    assert triples == [("DEPREL", "obl", "nmod"), ("DEPREL", "amod", "nmod"), ("UPOS", "AUX", "VERB"),
                       ("DEPREL", "obj", "nmod"), ("UPOS", "VERB", "NOUN"), ("DEPREL", "xcomp", "obl")]


SENT505_EN = """# sent_id = n505
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\tarea\tarea\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\twas\tbe\tAUX\t_\t_\t0\troot\t_\t_
"""
SENT505_AR = """# sent_id = n505
1\tكانت\tكان\tVERB\t_\t_\t0\troot\t_\t_
2\tالمنطقة\tمنطقة\tNOUN\t_\t_\t1\tnsubj\t_\t_
"""


def test_sentence_505_aux_to_verb():
    src = parse_conllu(SENT505_EN).sentences[0]
    tgt = parse_conllu(SENT505_AR).sentences[0]
    sa = SentenceAlignment("n505", (AlignmentLink(2, 2), AlignmentLink(3, 1)))
    m = sentence_matches((src, tgt), sa, AUX2VERB)
    assert m is not None
    assert m.pairs == (AlignmentLink(3, 1),)


def test_no_links_no_match():
    src = parse_conllu(SENT505_EN).sentences[0]
    tgt = parse_conllu(SENT505_AR).sentences[0]
    for rule in preset_rules():
        assert sentence_matches((src, tgt), SentenceAlignment("n505"), rule) is None


def test_both_sides_must_match():
    src = Sentence("s", (Token(1, "a", "a", "VERB"),))
    tgt = Sentence("s", (Token(1, "b", "b", "AUX"),))
    rule = DivergenceRule("verb2noun", "UPOS", "VERB", "NOUN")
    assert sentence_matches((src, tgt), SentenceAlignment("s", (AlignmentLink(1, 1),)), rule) is None


def test_case_sensitive():
    src = Sentence("s", (Token(1, "a", "a", "AUX"),))
    tgt = Sentence("s", (Token(1, "b", "b", "VERB"),))
    rule = DivergenceRule("lower", "UPOS", "aux", "verb")
    assert sentence_matches((src, tgt), SentenceAlignment("s", (AlignmentLink(1, 1),)), rule) is None


def _pair(sid, src_rel, tgt_rel):
    return (Sentence(sid, (Token(1, "v", "v", "VERB"), Token(2, "n", "n", "NOUN", head=1, deprel=src_rel))),
            Sentence(sid, (Token(1, "v", "v", "VERB"), Token(2, "n", "n", "NOUN", head=1, deprel=tgt_rel))))


def test_four_pair_fixture():
    pairs = (_pair("p1", "obj", "obj"), _pair("p2", "obl", "nmod"),
             _pair("p3", "obl", "obl"), _pair("p4", "obl:tmod", "nmod:poss"))
    corpus = ParallelCorpus(pairs)
    a = parse_alignments("p1\t2-2\np2\t2-2\np3\t2-2\np4\t2-2 1-1\n")
    rule = DivergenceRule("obl2nmod", "DEPREL", "obl", "nmod")
    (cs,) = extract(corpus, a, [rule])
    oracle = brute_force_extract(corpus, a, [rule])["obl2nmod"]
    assert cs.sentence_ids() == ["p2", "p4"] == [sid for sid, _ in oracle]
    # unstripped comparison loses p4
    (cs_raw,) = extract(corpus, a, [rule], strip=False)
    assert cs_raw.sentence_ids() == ["p2"]


def test_empty_rule_list():
    corpus, a = random_corpus(random.Random(0), 5)
    assert extract(corpus, a, []) == []


def test_partial_excluded_by_default():
    corpus = ParallelCorpus((_pair("p1", "obl", "nmod"),))
    a = parse_alignments("p1\t2-2 !partial\n")
    rule = DivergenceRule("r", "DEPREL", "obl", "nmod")
    assert len(extract(corpus, a, [rule])[0]) == 0
    assert len(extract(corpus, a, [rule], include_partial=True)[0]) == 1


def test_min_matches_threshold():
    pair = (Sentence("s", (Token(1, "a", "a", "AUX"), Token(2, "b", "b", "AUX", head=1, deprel="x"))),
            Sentence("s", (Token(1, "c", "c", "VERB"), Token(2, "d", "d", "VERB", head=1, deprel="x"))))
    corpus = ParallelCorpus((pair,))
    one = parse_alignments("s\t1-1\n")
    two = parse_alignments("s\t1-1 2-2\n")
    assert len(extract(corpus, one, [AUX2VERB], min_matches=2)[0]) == 0
    assert len(extract(corpus, two, [AUX2VERB], min_matches=2)[0]) == 1


@pytest.mark.parametrize("seed", range(15))
def test_agrees_with_brute_force(seed):
    corpus, a = random_corpus(random.Random(seed), 60)
    assert as_plain(extract(corpus, a, preset_rules())) == brute_force_extract(corpus, a, preset_rules())


@pytest.mark.parametrize("seed", range(10))
def test_set_size_bounded_by_matrix_cell(seed):
    corpus, a = random_corpus(random.Random(100 + seed), 80)
    sets = extract(corpus, a, preset_rules())
    matrices = {d: build_confusion(corpus, a, MatrixSpec(d, strip_subtypes=True)) for d in ("UPOS", "DEPREL")}
    for cs in sets:
        m = matrices[cs.rule.dimension.value]
        assert len(cs) <= m.count(cs.rule.source_label, cs.rule.target_label)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 40))
def test_monotone_under_corpus_growth(seed, extra):
    rng = random.Random(seed)
    corpus, a = random_corpus(rng, 30)
    more, more_a = random_corpus(rng, extra)
    # re-key the extra sentences so ids stay unique
    big_pairs, big_links = list(corpus.pairs), dict(a.by_sentence)
    for k, (s, t) in enumerate(more.pairs):
        sid = f"extra{k}"
        big_pairs.append((Sentence(sid, s.tokens), Sentence(sid, t.tokens)))
        old = more_a.get(s.id)
        if old is not None:
            big_links[sid] = SentenceAlignment(sid, old.links, old.coverage)
    before = extract(corpus, a, preset_rules())
    after = extract(ParallelCorpus(tuple(big_pairs)), AlignmentSet(big_links), preset_rules())
    for b, c in zip(before, after):
        assert set(b.sentence_ids()) <= set(c.sentence_ids())


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_link_order_invariance(seed):
    rng = random.Random(seed)
    corpus, a = random_corpus(rng, 20)
    shuffled = {}
    for sid, sa in a.by_sentence.items():
        links = list(sa.links)
        rng.shuffle(links)
        shuffled[sid] = SentenceAlignment(sid, tuple(links), sa.coverage)
    x = extract(corpus, a, preset_rules())
    y = extract(corpus, AlignmentSet(shuffled), preset_rules())
    for cx, cy in zip(x, y):
        assert cx.sentence_ids() == cy.sentence_ids()
        assert [set(m.pairs) for m in cx.matches] == [set(m.pairs) for m in cy.matches]


def test_parse_rules_file():
    (rule,) = parse_rules_file("aux2verb\tUPOS\tAUX\tVERB\n")
    assert rule == AUX2VERB


def test_parse_rules_unknown_dimension():
    with pytest.raises(ParseError, match="dimension"):
        parse_rules_file("r1\tPOS\tA\tB\n")


def test_parse_rules_duplicate_name():
    with pytest.raises(ValidationError):
        parse_rules_file("r\tUPOS\tA\tB\nr\tUPOS\tC\tD\n")


def test_preset_file_round_trip():
    text = "# presets\n" + serialize_rules(preset_rules())
    assert parse_rules_file(text) == preset_rules()


def test_challenge_tsv_round_trip():
    corpus, a = random_corpus(random.Random(9), 40)
    sets = extract(corpus, a, preset_rules())
    back = parse_challenge_sets_tsv(challenge_sets_tsv(sets))
    expected = {k: [(sid, tuple(AlignmentLink(*p) for p in ps)) for sid, ps in v]
                for k, v in as_plain(sets).items() if v}
    assert back == expected
