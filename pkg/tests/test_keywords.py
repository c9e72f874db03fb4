import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mscopt.corpus_io import Cluster, StopwordSet, parse_cluster, parse_sentence
from mscopt.keywords import gibbs_lda, lda_keywords, pagerank, textrank_scores, textrank_vertex_scores
from mscopt.word_graph import build_graph

from oracles import dense_pagerank, random_graph


def frequency_ranking(cluster, stopwords, pc):
    counts = Counter(t.lower for s in cluster.sentences for t in s
                     if t.lower not in stopwords.words and any(ch.isalnum() for ch in t.lower))
    return tuple(sorted(counts, key=lambda w: (-counts[w], w))[:pc])


def test_turtle_keywords(turtle, stopwords):
    kws = lda_keywords(turtle, stopwords, 5)
    assert set(kws) == {"george", "gigante", "solitário", "tartaruga", "última"}


def test_single_keyword():
    c = parse_cluster("gato/N come/V peixe/N\ngato/N dorme/V")
    assert lda_keywords(c, StopwordSet(), 1).words == ("gato",)


def test_pc_beyond_vocabulary():
    c = parse_cluster("x/N y/V\nx/N z/V")
    assert lda_keywords(c, StopwordSet(), 10).words == ("x", "y", "z")


def test_colors():
    c = parse_cluster("x/N y/V\nx/N z/V")
    kws = lda_keywords(c, StopwordSet(), 2)
    assert kws.color("x") == 1 and kws.color("y") == 2 and kws.color("q") == 0
    assert kws.cost(0) == 0.0 and kws.cost(1) == 1.0


def test_invalid_pc():
    with pytest.raises(ValueError):
        lda_keywords(parse_cluster("x/N"), StopwordSet(), 0)


def test_multi_topic_sampler_is_seeded():
    docs = [["a", "b", "a"], ["c", "d"], ["a", "c", "e"]]
    v1, phi1 = gibbs_lda(docs, num_topics=2, iterations=30, seed=3)
    v2, phi2 = gibbs_lda(docs, num_topics=2, iterations=30, seed=3)
    assert v1 == v2
    assert np.array_equal(phi1, phi2)
    assert np.allclose(phi1.sum(axis=1), 1.0)


WORDS = ["casa", "rio", "sol", "mar", "o", "de", "a", "lua"]
STOP = StopwordSet(frozenset({"o", "de", "a"}))


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.sampled_from(WORDS), min_size=1, max_size=8), min_size=1, max_size=6),
       st.integers(1, 6), st.integers(0, 2**16))
def test_lda_matches_frequency_ranking(raw, pc, seed):
    sents = tuple(parse_sentence(" ".join(f"{w}/N" for w in s), STOP) for s in raw)
    cluster = Cluster("p", sents)
    kws = lda_keywords(cluster, STOP, pc, seed=seed)
    assert kws.words == frequency_ranking(cluster, STOP, pc)
    assert not set(kws) & STOP.words
    assert lda_keywords(cluster, STOP, pc, seed=seed) == kws


def test_symmetric_two_cycle():
    r = pagerank(2, {(0, 1): 1.0, (1, 0): 1.0})
    assert r == pytest.approx([0.5, 0.5], abs=1e-12)


def test_dangling_vertex_matches_dense_reference():
    arcs = {(0, 1): 1.0, (1, 2): 2.0, (0, 2): 0.5}  # vertex 2 has no out-arcs
    r = pagerank(3, arcs, tol=1e-12, max_iter=1000)
    assert r == pytest.approx(dense_pagerank(3, arcs), abs=1e-9)
    r_default = pagerank(3, arcs)
    assert r_default.sum() == pytest.approx(1.0, abs=1e-12)
    assert r_default == pytest.approx(dense_pagerank(3, arcs), abs=1e-5)


def test_turtle_textrank_normalized(turtle):
    scores = textrank_scores(build_graph(turtle))
    assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
    assert all(s > 0 for s in scores.values())


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**6))
def test_textrank_on_random_graphs(seed):
    g = random_graph(random.Random(seed))
    ranks = textrank_vertex_scores(g)
    assert ranks.sum() == pytest.approx(1.0, abs=1e-9)
    assert (ranks > 0).all()
    scores = textrank_scores(g)
    assert sum(scores.values()) == pytest.approx(1.0, abs=1e-9)
    arcs = dict(g.arcs)
    arcs[(g.end_id, g.begin_id)] = 1.0
    assert ranks == pytest.approx(dense_pagerank(len(g), arcs), abs=1e-4)
