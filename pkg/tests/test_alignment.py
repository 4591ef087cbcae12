import pytest
from hypothesis import given, strategies as st

from udchallenge.alignment import (NONE, AlignmentLink, AlignmentSet, Coverage, Dimension,
                                   SentenceAlignment, labeled_pairs, parse_alignments,
                                   serialize_alignments, validate_alignments)
from udchallenge.errors import ParseError, ValidationError
from udchallenge.treebank import ParallelCorpus, Sentence, Token


def sent(sid, *specs):
    """specs: (upos, deprel) per token; token 1 is the root."""
    return Sentence(sid, tuple(
        Token(i, f"{sid}w{i}", "_", upos, head=0 if i == 1 else 1, deprel=rel)
        for i, (upos, rel) in enumerate(specs, start=1)))


def test_parse_simple_line():
    a = parse_alignments("w01001013\t1-2 2-1\n")
    sa = a.get("w01001013")
    assert set(sa.links) == {(1, 2), (2, 1)}
    assert sa.coverage is Coverage.FULL


def test_partial_marker():
    a = parse_alignments("s454\t1-1 !partial\n")
    assert a.coverage("s454") is Coverage.PARTIAL
    assert a.get("s454").links == (AlignmentLink(1, 1),)


def test_malformed_pair():
    with pytest.raises(ParseError) as err:
        parse_alignments("# header\ns9\t3-x\n")
    assert err.value.line == 2


@pytest.mark.parametrize("item", ["3", "3-", "-1", "a-b", "1-2-3", "0x1-2"])
def test_malformed_pairs(item):
    with pytest.raises(ParseError):
        parse_alignments(f"s\t{item}\n")


def test_duplicate_link_is_validation_error():
    with pytest.raises(ValidationError):
        parse_alignments("s1\t1-1 1-1\n")
    with pytest.raises(ValidationError):
        parse_alignments("s1\t1-1\ns1\t1-1\n")


def test_repeated_lines_merge():
    a = parse_alignments("s1\t1-1\n\n# c\ns1\t2-2 !partial\n")
    assert a.get("s1").links == ((1, 1), (2, 2))
    assert a.get("s1").partial


def test_zero_index_rejected():
    with pytest.raises(ValidationError):
        parse_alignments("s1\t0-1\n")


def corpus2():
    return ParallelCorpus((
        (sent("a", ("VERB", "root"), ("NOUN", "obj"), ("PUNCT", "punct")),
         sent("a", ("VERB", "root"), ("NOUN", "obj"))),
        (sent("b", ("NOUN", "root")), sent("b", ("NOUN", "root"))),
    ))


def test_validate_pass():
    report = validate_alignments(parse_alignments("a\t1-1 2-2\nb\t1-1\n"), corpus2())
    assert report.passed
    assert report.items == ()


def test_validate_out_of_range():
    report = validate_alignments(parse_alignments("a\t5-1\nb\t1-1\n"), corpus2())
    assert not report.passed
    (item,) = report.errors
    assert item.sentence_id == "a" and "5-1" in item.message


def test_validate_unknown_sentence():
    report = validate_alignments(parse_alignments("a\t1-1\nb\t1-1\nzz\t1-1\n"), corpus2())
    assert [i.kind for i in report.errors] == ["unknown-sentence"]


def test_validate_missing_entry_is_warning():
    report = validate_alignments(parse_alignments("a\t1-1\n"), corpus2())
    assert report.passed
    assert [(i.kind, i.sentence_id) for i in report.warnings] == [("unaligned-sentence", "b")]


def test_labeled_pairs_aux_verb():
    pair = (sent("s", ("ADJ", "root"), ("AUX", "cop")), sent("s", ("ADJ", "root"), ("VERB", "xcomp")))
    sa = SentenceAlignment("s", (AlignmentLink(2, 2), AlignmentLink(1, 1)))
    assert labeled_pairs(pair, sa, Dimension.UPOS) == [("AUX", "VERB"), ("ADJ", "ADJ")]


def test_labeled_pairs_unaligned_source():
    pair = (sent("s", ("NOUN", "root")), sent("s", ("NOUN", "root")))
    out = labeled_pairs(pair, SentenceAlignment("s"), "UPOS", content_only=False)
    assert out == [("NOUN", NONE), (NONE, "NOUN")]


def test_labeled_pairs_deprel_strip():
    pair = (sent("s", ("VERB", "root"), ("NOUN", "nmod:poss")), sent("s", ("VERB", "root"), ("NOUN", "nmod")))
    sa = SentenceAlignment("s", (AlignmentLink(2, 2),))
    out = labeled_pairs(pair, sa, Dimension.DEPREL, strip=True)
    assert out[0] == ("nmod", "nmod")
    assert labeled_pairs(pair, sa, Dimension.DEPREL, strip=False)[0] == ("nmod:poss", "nmod")


def test_labeled_pairs_order_and_content_filter():
    pair = (sent("s", ("VERB", "root"), ("DET", "det"), ("NOUN", "obj")),
            sent("s", ("VERB", "root"), ("ADP", "case")))
    sa = SentenceAlignment("s", (AlignmentLink(1, 1),))
    assert labeled_pairs(pair, sa, "UPOS") == [
        ("VERB", "VERB"), ("DET", NONE), ("NOUN", NONE), (NONE, "ADP")]
    assert labeled_pairs(pair, sa, "UPOS", content_only=True) == [("VERB", "VERB"), ("NOUN", NONE)]


@st.composite
def aligned_pair(draw):
    tags = ["NOUN", "VERB", "DET", "ADP", "PUNCT", "ADJ"]
    n = draw(st.integers(1, 7))
    m = draw(st.integers(1, 7))
    src = sent("s", *[(draw(st.sampled_from(tags)), "dep") for _ in range(n)])
    tgt = sent("s", *[(draw(st.sampled_from(tags)), "dep") for _ in range(m)])
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, m + 1)]
    links = draw(st.lists(st.sampled_from(cells), unique=True, max_size=8))
    return (src, tgt), SentenceAlignment("s", tuple(AlignmentLink(*c) for c in links))


@given(aligned_pair(), st.booleans())
def test_labeled_pairs_cardinality(data, content_only):
    from udchallenge.treebank import DEFAULT_CONTENT_UPOS
    (src, tgt), sa = data
    out = labeled_pairs((src, tgt), sa, "UPOS", content_only=content_only)
    keep = (lambda t: t.upos in DEFAULT_CONTENT_UPOS) if content_only else (lambda t: True)
    un_src = [t for t in src.tokens if t.index not in sa.aligned_source() and keep(t)]
    un_tgt = [t for t in tgt.tokens if t.index not in sa.aligned_target() and keep(t)]
    assert len(out) == len(sa.links) + len(un_src) + len(un_tgt)


@given(aligned_pair())
def test_content_only_is_sub_multiset(data):
    from collections import Counter
    pair, sa = data
    full = Counter(labeled_pairs(pair, sa, "UPOS"))
    filtered = Counter(labeled_pairs(pair, sa, "UPOS", content_only=True))
    assert not filtered - full
    n = len(sa.links)
    assert labeled_pairs(pair, sa, "UPOS")[:n] == labeled_pairs(pair, sa, "UPOS", content_only=True)[:n]


link_lists = st.lists(st.tuples(st.integers(1, 40), st.integers(1, 40)), unique=True, max_size=10)


@given(st.dictionaries(st.from_regex(r"[A-Za-z0-9_.]{1,8}", fullmatch=True),
                       st.tuples(link_lists, st.booleans()), max_size=6))
def test_serialize_round_trip(entries):
    a = AlignmentSet({
        sid: SentenceAlignment(sid, tuple(AlignmentLink(*l) for l in links),
                               Coverage.PARTIAL if partial else Coverage.FULL)
        for sid, (links, partial) in entries.items()
    })
    assert parse_alignments(serialize_alignments(a)) == a
