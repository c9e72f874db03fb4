"""Exact solver for the cohesion / keyword / trigram path model.

A compression is a simple path ``begin -> w1 -> ... -> wn -> end`` in the
word graph with at least ``pmin`` word vertices.  Its score is::

    alpha * sum(arc weights) - beta * sum(keyword colors used, once each)
        - gamma * sum(trigram costs whose two arcs are consecutive)

and lower is better.  The search is a depth-first branch and bound over
partial paths; the k best solutions are produced either in one pass with a
k-th best threshold, or by excluding each found arc set and solving again.
"""

from __future__ import annotations

import bisect
import math
import sys
import time
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .keywords import KeywordSet
from .word_graph import Trigram, WordGraph

EPS = 1e-9
DEFAULT_TIMEOUT = 30.0


class SolverTimeout(RuntimeError):
    pass


@dataclass(frozen=True)
class CompressionInstance:
    graph: WordGraph
    keywords: KeywordSet = KeywordSet(())
    trigrams: tuple[Trigram, ...] = ()
    alpha: float = 1.0
    beta: float = 0.8
    gamma: float = 0.1
    pmin: int = 8
    verb_prefixes: tuple[str, ...] = ("V",)

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError("alpha must be > 0")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError("beta and gamma must be >= 0")
        if self.pmin < 1:
            raise ValueError("pmin must be >= 1")
        object.__setattr__(self, "trigrams", tuple(self.trigrams))
        object.__setattr__(self, "verb_prefixes", tuple(self.verb_prefixes))

    @cached_property
    def colors(self) -> list[int]:
        out = []
        for v in self.graph.vertices:
            out.append(self.keywords.color(v.lower) if v.is_word else 0)
        return out

    @cached_property
    def verbs(self) -> list[bool]:
        return [v.is_word and v.pos.startswith(self.verb_prefixes) for v in self.graph.vertices]

    @cached_property
    def trigram_index(self) -> dict[tuple[int, int, int], int]:
        return {t.vertices: idx for idx, t in enumerate(self.trigrams)}

    @cached_property
    def successors(self) -> list[list[int]]:
        """Finite-weight successors, ascending id."""
        succ: list[list[int]] = [[] for _ in self.graph.vertices]
        for (i, j), w in sorted(self.graph.arcs.items()):
            if math.isfinite(w):
                succ[i].append(j)
        return succ


@dataclass(frozen=True)
class Solution:
    path: tuple[int, ...]
    raw_score: float
    has_verb: bool
    used_colors: frozenset[int] = frozenset()
    used_trigrams: frozenset[int] = frozenset()
    normalized_score: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "normalized_score", normalized_score(self.raw_score, len(self.path)))

    def __len__(self) -> int:
        return len(self.path)

    def arcs(self, begin: int = 0, end: int = 1) -> frozenset[tuple[int, int]]:
        full = (begin, *self.path, end)
        return frozenset(zip(full, full[1:]))


def normalized_score(raw_score: float, length: int) -> float:
    return math.exp(raw_score) / length


def score_path(instance: CompressionInstance, path) -> Solution:
    """Score a word path directly from the objective; the reference used
    for every reported score."""
    g = instance.graph
    full = [g.begin_id, *path, g.end_id]
    arc_sum = 0.0
    for a, b in zip(full, full[1:]):
        arc_sum += g.arcs[(a, b)]
    colors = frozenset(c for c in (instance.colors[v] for v in path) if c > 0)
    tindex = instance.trigram_index
    trigs = frozenset(tindex[t] for t in zip(full, full[1:], full[2:]) if t in tindex)
    color_bonus = sum(instance.keywords.cost(c) for c in sorted(colors))
    trig_bonus = sum(instance.trigrams[t].cost for t in sorted(trigs))
    raw = instance.alpha * arc_sum - instance.beta * color_bonus - instance.gamma * trig_bonus
    return Solution(tuple(path), raw, any(instance.verbs[v] for v in path), colors, trigs)


class _Bounds:
    """Static hop-indexed lower bounds on the cost of finishing a path.

    ``cohesion[r, v]`` is the least alpha-weighted cost of any walk from
    ``v`` to end that passes through at least ``r`` more word vertices.
    ``bonus[r, v]`` is the same with every arc credited the largest bonus it
    could possibly earn (its head's keyword color, the best trigram it can
    complete).  Walks relax simple paths, so both bounds are admissible.
    """

    def __init__(self, instance: CompressionInstance):
        g = instance.graph
        n = len(g)
        src, dst, base, credit = [], [], [], []
        best_trigram: dict[tuple[int, int], float] = {}
        for t in instance.trigrams:
            arc = t.second_arc
            best_trigram[arc] = max(best_trigram.get(arc, 0.0), t.cost)
        for i, succ in enumerate(instance.successors):
            for j in succ:
                src.append(i)
                dst.append(j)
                base.append(instance.alpha * g.arcs[(i, j)])
                credit.append(instance.beta * instance.keywords.cost(instance.colors[j])
                              + instance.gamma * best_trigram.get((i, j), 0.0))
        src_a = np.array(src, dtype=np.int64)
        dst_a = np.array(dst, dtype=np.int64)
        base_a = np.array(base, dtype=float)
        bonus_a = base_a - np.array(credit, dtype=float)
        rmax = instance.pmin
        self.cohesion = self._suffix_min(n, g.end_id, src_a, dst_a, base_a, rmax)
        self.bonus = self._suffix_min(n, g.end_id, src_a, dst_a, bonus_a, rmax)

    @staticmethod
    def _suffix_min(n, end, src, dst, cost, rmax):
        # exact[s, v]: cheapest walk v -> end with exactly s arcs
        hops = max(n - 1, 1)
        exact = np.full((hops + 1, n), np.inf)
        exact[0, end] = 0.0
        for s in range(1, hops + 1):
            row = np.full(n, np.inf)
            if len(src):
                np.minimum.at(row, src, cost + exact[s - 1, dst])
            exact[s] = row
        # a walk with s arcs crosses s - 1 word vertices
        tail = np.minimum.accumulate(exact[::-1], axis=0)[::-1]
        out = np.full((rmax + 1, n), np.inf)
        for r in range(rmax + 1):
            s = r + 1
            if s <= hops:
                out[r] = tail[s]
        return out


class _Search:
    def __init__(self, instance: CompressionInstance, k: int,
                 excluded: set[frozenset] | None, timeout: float | None):
        self.inst = instance
        self.k = k
        self.excluded = excluded or set()
        self.deadline = None if timeout is None else time.monotonic() + timeout
        self.bounds = _Bounds(instance)
        self.best: list[tuple[float, tuple[int, ...]]] = []
        self.solutions: dict[tuple[int, ...], Solution] = {}
        self.nodes = 0

        g = instance.graph
        self.begin, self.end = g.begin_id, g.end_id
        self.is_word = [v.is_word for v in g.vertices]
        self.total_colors = len({c for c in instance.colors if c > 0})
        self.total_trig = sum(t.cost for t in instance.trigrams)

    def threshold(self) -> float:
        if len(self.best) < self.k:
            return math.inf
        return self.best[-1][0]

    def offer(self, path: tuple[int, ...]):
        if self.excluded:
            arcs = frozenset(zip((self.begin, *path), (*path, self.end)))
            if arcs in self.excluded:
                return
        sol = score_path(self.inst, path)
        key = (sol.raw_score, path)
        if len(self.best) >= self.k and key >= self.best[-1]:
            return
        bisect.insort(self.best, key)
        self.solutions[path] = sol
        if len(self.best) > self.k:
            _, dropped = self.best.pop()
            del self.solutions[dropped]

    def run(self) -> list[Solution]:
        limit = len(self.inst.graph) + 100
        if sys.getrecursionlimit() < limit:
            sys.setrecursionlimit(limit)
        self._dfs(self.begin, -1, [], {self.begin}, 0.0, {}, {}, 0.0)
        return [self.solutions[p] for _, p in self.best]

    def _dfs(self, v, prev, path, visited, arc_cost, colors, trigs, trig_gain):
        self.nodes += 1
        if self.deadline is not None and self.nodes % 512 == 0 and time.monotonic() > self.deadline:
            raise SolverTimeout("solver time budget exceeded")
        inst = self.inst
        words = len(path)
        remaining = max(inst.pmin - words, 0)
        partial = arc_cost - inst.beta * len(colors) - inst.gamma * trig_gain
        bound_a = self.bounds.bonus[remaining, v]
        bound_b = (self.bounds.cohesion[remaining, v]
                   - inst.beta * (self.total_colors - len(colors))
                   - inst.gamma * (self.total_trig - trig_gain))
        if partial + max(bound_a, bound_b) > self.threshold() + EPS:
            return

        tindex = inst.trigram_index
        for u in inst.successors[v]:
            if u in visited:
                continue
            step = inst.alpha * inst.graph.arcs[(v, u)]
            if u == self.end:
                if words >= inst.pmin:
                    self.offer(tuple(path))
                continue
            t = tindex.get((prev, v, u))
            gain = inst.trigrams[t].cost if t is not None and t not in trigs else 0.0
            c = inst.colors[u]
            new_color = c > 0 and c not in colors
            if new_color:
                colors[c] = u
            if gain:
                trigs[t] = True
            visited.add(u)
            path.append(u)
            self._dfs(u, v, path, visited, arc_cost + step, colors, trigs, trig_gain + gain)
            path.pop()
            visited.discard(u)
            if gain:
                del trigs[t]
            if new_color:
                del colors[c]


def solve_best(instance: CompressionInstance, excluded=None,
               timeout: float | None = DEFAULT_TIMEOUT) -> Solution | None:
    """Optimal solution whose arc set is not in ``excluded``; None when no
    path with enough words remains."""
    found = _Search(instance, 1, excluded, timeout).run()
    return found[0] if found else None


def solve_kbest(instance: CompressionInstance, k: int = 50,
                timeout: float | None = DEFAULT_TIMEOUT,
                strategy: str = "threshold") -> list[Solution]:
    """The ``k`` best solutions in nondecreasing score.

    ``strategy="resolve"`` prohibits each returned arc set and solves again;
    ``"threshold"`` (default) keeps the k best in a single search.  Both order
    ties by vertex sequence and return the same list.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if strategy == "threshold":
        return _Search(instance, k, None, timeout).run()
    if strategy != "resolve":
        raise ValueError(f"unknown strategy {strategy!r}")
    deadline = None if timeout is None else time.monotonic() + timeout
    excluded: set[frozenset] = set()
    out = []
    g = instance.graph
    for _ in range(k):
        left = None if deadline is None else max(deadline - time.monotonic(), 0.0)
        sol = solve_best(instance, excluded, left)
        if sol is None:
            break
        out.append(sol)
        excluded.add(sol.arcs(g.begin_id, g.end_id))
    return out


def normalize_and_select(solutions) -> Solution | None:
    """Verb-bearing solution with the lowest exp(score)/length."""
    best = None
    for sol in solutions:
        if not sol.has_verb:
            continue
        if best is None or sol.normalized_score < best.normalized_score:
            best = sol
    return best
