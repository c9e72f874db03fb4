import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mscopt.corpus_io import (CorpusFormatError, StopwordSet, Token, load_stopwords, parse_cluster,
                              parse_sentence, read_corpus, serialize_cluster)


def test_parse_two_tokens():
    c = parse_cluster("George/NPP faleceu/V")
    (s,) = c.sentences
    assert len(s) == 2
    assert [t.pos for t in s] == ["NPP", "V"]
    assert [t.lower for t in s] == ["george", "faleceu"]


def test_stopword_flag():
    s = parse_sentence("a/DET tartaruga/NC", load_stopwords("a\n"))
    assert s[0].is_stopword
    assert not s[1].is_stopword


def test_stopword_flag_is_case_insensitive():
    s = parse_sentence("A/DET tartaruga/NC", load_stopwords("a\n"))
    assert s[0].is_stopword


def test_missing_tag_is_an_error():
    with pytest.raises(CorpusFormatError) as err:
        parse_cluster("word-without-tag")
    assert err.value.line == 1
    assert err.value.column == 1


def test_error_reports_column():
    with pytest.raises(CorpusFormatError) as err:
        parse_cluster("ok/N\nfine/N broken\n")
    assert (err.value.line, err.value.column) == (2, 8)


def test_empty_input():
    with pytest.raises(CorpusFormatError):
        parse_cluster("")
    with pytest.raises(CorpusFormatError):
        parse_cluster("\n\n")


def test_last_slash_separates_tag():
    s = parse_sentence("1/2/NUM http://x.org/a/URL")
    assert [t.surface for t in s] == ["1/2", "http://x.org/a"]
    assert [t.pos for t in s] == ["NUM", "URL"]


def test_punctuation_kept():
    s = parse_sentence("faleceu/V ,/PONCT ./PONCT")
    assert [t.surface for t in s] == ["faleceu", ",", "."]


def test_references_after_marker():
    c = parse_cluster("a/N b/V\nc/N d/V\n---\na/N d/V\n")
    assert len(c.sentences) == 2
    assert len(c.references) == 1


def test_references_after_blank_line():
    c = parse_cluster("a/N b/V\nc/N d/V\n\na/N d/V\n")
    assert len(c.sentences) == 2
    assert len(c.references) == 1


@pytest.mark.parametrize("raw, expected", [
    ("a\nde\n", {"a", "de"}),
    ("A\na\n", {"a"}),
    ("# hdr\nde", {"de"}),
    ("", set()),
])
def test_load_stopwords(raw, expected):
    assert load_stopwords(raw).words == expected


def test_token_invariants():
    t = Token("Solitário", "NPP")
    assert t.lower == "solitário"
    with pytest.raises(ValueError):
        Token("x", "")


def test_read_corpus_sorted(corpus_dir):
    clusters = read_corpus(corpus_dir)
    assert [c.id for c in clusters] == sorted(c.id for c in clusters)
    assert all(c.references for c in clusters)


def test_read_corpus_missing_dir(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_corpus(tmp_path / "nope")


surfaces = st.text(alphabet=st.characters(blacklist_categories=("Zs", "Cc", "Zl", "Zp"),
                                          blacklist_characters="\n\r\x1c\x1d\x1e\x85"),
                   min_size=1, max_size=6)
tags = st.sampled_from(["N", "V", "ADJ", "DET", "P+D"])
sentence = st.lists(st.tuples(surfaces, tags), min_size=1, max_size=6)


@settings(max_examples=150, deadline=None)
@given(sources=st.lists(sentence, min_size=1, max_size=4),
       refs=st.lists(sentence, max_size=3))
def test_round_trip(sources, refs):
    def line(tokens):
        return " ".join(f"{s}/{p}" for s, p in tokens)

    body = "\n".join(line(s) for s in sources)
    if refs:
        body += "\n---\n" + "\n".join(line(r) for r in refs)
    # surfaces equal to the marker would be ambiguous; not a valid token anyway
    stop = StopwordSet(frozenset({sources[0][0][0].lower()}))
    first = parse_cluster(body, stop)
    again = parse_cluster(serialize_cluster(first), stop)
    assert again == first
    for parsed, tokens in zip(first.sentences, sources):
        assert len(parsed) == len(tokens)
