"""Shortest-path baselines: length-normalized selection and keyphrase
rescoring, both over k shortest simple paths of the word graph."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fnmatch import fnmatchcase
from typing import Iterator

from .word_graph import WordGraph

DEFAULT_VERB_PREFIXES = ("V",)
DEFAULT_KEYPHRASE_TAGS = ("N*", "ADJ*", "A")


@dataclass(frozen=True)
class CandidatePath:
    path: tuple[int, ...]
    cohesion_sum: float

    @property
    def length(self) -> int:
        return len(self.path)


@dataclass(frozen=True)
class Selection:
    candidate: CandidatePath
    score: float


def _dijkstra(succ, weight, source, target, banned_nodes, banned_arcs):
    dist = {source: 0.0}
    prev: dict[int, int] = {}
    heap = [(0.0, source)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == target:
            path = [u]
            while path[-1] != source:
                path.append(prev[path[-1]])
            return path[::-1]
        for v in succ(u):
            if v in banned_nodes or (u, v) in banned_arcs:
                continue
            nd = d + weight(u, v)
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                prev[v] = u
                heapq.heappush(heap, (nd, v))
    return None


def shortest_simple_paths(graph: WordGraph) -> Iterator[tuple[float, tuple[int, ...]]]:
    """Yen's enumeration of simple begin -> end paths by nondecreasing cost.

    Yields (cost, full vertex path including sentinels).
    """
    arcs = {a: w for a, w in graph.arcs.items() if math.isfinite(w)}
    succ_lists: dict[int, list[int]] = {}
    for i, j in sorted(arcs):
        succ_lists.setdefault(i, []).append(j)

    def succ(u):
        return succ_lists.get(u, ())

    def weight(u, v):
        return arcs[(u, v)]

    def cost(path):
        return sum(arcs[(a, b)] for a, b in zip(path, path[1:]))

    src, dst = graph.begin_id, graph.end_id
    first = _dijkstra(succ, weight, src, dst, set(), set())
    if first is None:
        return
    found: list[tuple[int, ...]] = []
    seen = {tuple(first)}
    heap = [(cost(first), tuple(first))]
    while heap:
        c, path = heapq.heappop(heap)
        found.append(path)
        yield c, path
        for i in range(len(path) - 1):
            root = path[: i + 1]
            banned_arcs = {(p[i], p[i + 1]) for p in found if len(p) > i + 1 and p[: i + 1] == root}
            banned_nodes = set(root[:-1])
            spur = _dijkstra(succ, weight, root[-1], dst, banned_nodes, banned_arcs)
            if spur is None:
                continue
            candidate = root[:-1] + tuple(spur)
            if candidate not in seen:
                seen.add(candidate)
                heapq.heappush(heap, (cost(candidate), candidate))


def k_shortest_paths(graph: WordGraph, k: int, min_words: int = 8) -> list[CandidatePath]:
    """The ``k`` cheapest simple paths with at least ``min_words`` words.

    Paths are drawn from Yen's enumeration and filtered afterwards.  Paths
    tied with the k-th cost are all collected before truncating, so ties
    are ordered by vertex ids.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    kept: list[CandidatePath] = []
    for c, full in shortest_simple_paths(graph):
        if len(kept) >= k and c > kept[k - 1].cohesion_sum:
            break
        words = full[1:-1]
        if len(words) >= min_words:
            kept.append(CandidatePath(words, graph.path_weight(list(words))))
            kept.sort(key=lambda p: (p.cohesion_sum, p.path))
    return kept[:k]


def has_verb(graph: WordGraph, path, verb_prefixes=DEFAULT_VERB_PREFIXES) -> bool:
    return any(graph.vertices[v].pos.startswith(tuple(verb_prefixes)) for v in path)


def filippova_select(graph: WordGraph, candidates: list[CandidatePath],
                     verb_prefixes=DEFAULT_VERB_PREFIXES) -> Selection | None:
    best = None
    for cand in candidates:
        if not has_verb(graph, cand.path, verb_prefixes):
            continue
        score = cand.cohesion_sum / cand.length
        if best is None or score < best.score:
            best = Selection(cand, score)
    return best


def keyphrases(graph: WordGraph, path, tags=DEFAULT_KEYPHRASE_TAGS) -> list[list[str]]:
    """Maximal runs of consecutive non-stopword nouns/adjectives.  ``tags``
    are shell-style patterns matched against the POS tag."""
    phrases, run = [], []
    for v in path:
        vx = graph.vertices[v]
        if vx.is_word and not vx.is_stopword and any(fnmatchcase(vx.pos, t) for t in tags):
            run.append(vx.lower)
        elif run:
            phrases.append(run)
            run = []
    if run:
        phrases.append(run)
    return phrases


def keyphrase_score(phrase: list[str], scores: dict[str, float]) -> float:
    return sum(scores.get(w, 0.0) for w in phrase) / (len(phrase) + 1)


def bm_score(graph: WordGraph, cand: CandidatePath, scores: dict[str, float],
             tags=DEFAULT_KEYPHRASE_TAGS) -> float:
    mass = sum(keyphrase_score(p, scores) for p in keyphrases(graph, cand.path, tags))
    if mass <= 0:
        return math.inf
    return cand.cohesion_sum / (cand.length * mass)


def bm_select(graph: WordGraph, candidates: list[CandidatePath], scores: dict[str, float],
              verb_prefixes=DEFAULT_VERB_PREFIXES,
              keyphrase_tags=DEFAULT_KEYPHRASE_TAGS) -> Selection | None:
    best = None
    for cand in candidates:
        if not has_verb(graph, cand.path, verb_prefixes):
            continue
        score = bm_score(graph, cand, scores, keyphrase_tags)
        if best is None or score < best.score:
            best = Selection(cand, score)
    return best
