"""Cluster keywords (single-topic LDA) and TextRank word scores."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corpus_io import Cluster, StopwordSet
from .word_graph import WordGraph

LDA_ALPHA = 0.5
LDA_BETA = 0.01
LDA_ITERATIONS = 200
DEFAULT_SEED = 42

DAMPING = 0.85
TOLERANCE = 1e-6
MAX_ITERATIONS = 100


@dataclass(frozen=True)
class KeywordSet:
    """Keywords in rank order.  Keyword ``words[k-1]`` is color ``k``;
    color 0 stands for non-keywords."""

    words: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def color(self, word: str) -> int:
        try:
            return self.words.index(word.lower()) + 1
        except ValueError:
            return 0

    def cost(self, color: int) -> float:
        return 0.0 if color == 0 else 1.0


def _is_content(word: str) -> bool:
    return any(ch.isalnum() for ch in word)


def keyword_documents(cluster: Cluster, stopwords: StopwordSet) -> list[list[str]]:
    docs = []
    for sentence in cluster.sentences:
        docs.append([t.lower for t in sentence
                     if t.lower not in stopwords.words and not t.is_stopword and _is_content(t.lower)])
    return docs


def gibbs_lda(docs: list[list[str]], num_topics: int = 1, alpha: float = LDA_ALPHA,
              beta: float = LDA_BETA, iterations: int = LDA_ITERATIONS,
              seed: int = DEFAULT_SEED) -> tuple[list[str], np.ndarray]:
    """Collapsed Gibbs sampling LDA.

    Returns the sorted vocabulary and the topic-word matrix ``phi`` of shape
    (num_topics, len(vocab)).
    """
    vocab = sorted({w for doc in docs for w in doc})
    index = {w: i for i, w in enumerate(vocab)}
    V, K = len(vocab), num_topics
    rng = np.random.default_rng(seed)

    words = [np.array([index[w] for w in doc], dtype=np.int64) for doc in docs]
    topics = [rng.integers(0, K, size=len(doc)) for doc in words]
    n_dk = np.zeros((len(docs), K))
    n_kw = np.zeros((K, V))
    n_k = np.zeros(K)
    for d, (ws, zs) in enumerate(zip(words, topics)):
        for w, z in zip(ws, zs):
            n_dk[d, z] += 1
            n_kw[z, w] += 1
            n_k[z] += 1

    if K > 1:
        for _ in range(iterations):
            for d, (ws, zs) in enumerate(zip(words, topics)):
                for i, (w, z) in enumerate(zip(ws, zs)):
                    n_dk[d, z] -= 1
                    n_kw[z, w] -= 1
                    n_k[z] -= 1
                    p = (n_dk[d] + alpha) * (n_kw[:, w] + beta) / (n_k + V * beta)
                    z = rng.choice(K, p=p / p.sum())
                    zs[i] = z
                    n_dk[d, z] += 1
                    n_kw[z, w] += 1
                    n_k[z] += 1
    # with a single topic every assignment is forced; sampling would be a no-op

    phi = (n_kw + beta) / (n_k[:, None] + V * beta)
    return vocab, phi


def lda_keywords(cluster: Cluster, stopwords: StopwordSet, pc: int,
                 seed: int = DEFAULT_SEED) -> KeywordSet:
    """The ``pc`` most probable words of a one-topic LDA over the cluster.

    Each sentence is one document.  Ties in probability fall back to
    lexicographic order.
    """
    if pc < 1:
        raise ValueError("keyword count must be >= 1")
    docs = keyword_documents(cluster, stopwords)
    vocab, phi = gibbs_lda(docs, num_topics=1, seed=seed)
    if not vocab:
        return KeywordSet(())
    probs = phi[0]
    ranked = sorted(range(len(vocab)), key=lambda i: (-probs[i], vocab[i]))
    return KeywordSet(tuple(vocab[i] for i in ranked[:pc]))


def pagerank(n: int, arcs: dict[tuple[int, int], float], damping: float = DAMPING,
             tol: float = TOLERANCE, max_iter: int = MAX_ITERATIONS) -> np.ndarray:
    """Weighted PageRank by power iteration.

    Arc weights act as transition affinities.  Vertices without out-arcs
    spread their mass uniformly.
    """
    if n == 0:
        return np.zeros(0)
    out_weight = np.zeros(n)
    for (i, _), w in arcs.items():
        out_weight[i] += w
    src = np.array([i for i, _ in arcs], dtype=np.int64)
    dst = np.array([j for _, j in arcs], dtype=np.int64)
    prob = np.array([w for w in arcs.values()], dtype=float)
    if len(prob):
        prob = prob / out_weight[src]
    dangling = out_weight == 0

    rank = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        flow = np.zeros(n)
        np.add.at(flow, dst, rank[src] * prob)
        new = (1.0 - damping) / n + damping * (flow + rank[dangling].sum() / n)
        delta = np.abs(new - rank).max()
        rank = new
        if delta < tol:
            break
    return rank / rank.sum()


def textrank_vertex_scores(graph: WordGraph) -> np.ndarray:
    arcs = {a: w for a, w in graph.arcs.items() if np.isfinite(w)}
    arcs[(graph.end_id, graph.begin_id)] = 1.0
    return pagerank(len(graph), arcs)


def textrank_scores(graph: WordGraph) -> dict[str, float]:
    """TextRank mass per lower-case word form, renormalized over words."""
    rank = textrank_vertex_scores(graph)
    scores: dict[str, float] = {}
    for v in graph.vertices:
        if v.is_word:
            scores[v.lower] = scores.get(v.lower, 0.0) + float(rank[v.id])
    total = sum(scores.values())
    if total > 0:
        scores = {w: s / total for w, s in scores.items()}
    return scores
