"""End-to-end compression of one cluster with any of the three methods."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from functools import cached_property

from . import baselines
from .corpus_io import Cluster, StopwordSet
from .keywords import DEFAULT_SEED, KeywordSet, lda_keywords, textrank_scores
from .solver import (DEFAULT_TIMEOUT, CompressionInstance, SolverTimeout,
                     normalize_and_select, solve_kbest)
from .word_graph import Trigram, WordGraph, build_graph, extract_trigrams

METHODS = ("filippova", "bm", "opt")
DEFAULT_K = {"filippova": 50, "bm": 200, "opt": 50}


@dataclass(frozen=True)
class RunConfig:
    method: str = "opt"
    alpha: float = 1.0
    beta: float = 0.8
    gamma: float = 0.1
    pc: int = 9
    pmin: int = 8
    k_best: int | None = None
    seed: int = DEFAULT_SEED
    timeout: float = DEFAULT_TIMEOUT
    verb_prefixes: tuple[str, ...] = ("V",)
    stopword_path: str | None = None
    corpus_path: str | None = None
    output_path: str | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if self.method == "opt" and not self.alpha > 0:
            raise ValueError("method opt requires alpha > 0")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError("beta and gamma must be >= 0")
        if self.pc < 1 or self.pmin < 1:
            raise ValueError("pc and pmin must be >= 1")
        if self.k_best is not None and self.k_best < 1:
            raise ValueError("k must be >= 1")
        object.__setattr__(self, "verb_prefixes", tuple(self.verb_prefixes))

    @property
    def k(self) -> int:
        return self.k_best if self.k_best is not None else DEFAULT_K[self.method]

    def describe(self) -> dict:
        d = asdict(self)
        d["k_best"] = self.k
        return d


@dataclass
class CompressionResult:
    cluster_id: str
    method: str
    words: list[str] = field(default_factory=list)
    path: tuple[int, ...] = ()
    raw_score: float | None = None
    normalized_score: float | None = None
    keyword_hits: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def text(self) -> str:
        return " ".join(self.words)


class PreparedCluster:
    """Per-cluster artefacts shared by every configuration of a sweep."""

    def __init__(self, cluster: Cluster, stopwords: StopwordSet, seed: int = DEFAULT_SEED):
        self.cluster = cluster
        self.stopwords = stopwords
        self.seed = seed
        self._keywords: dict[int, KeywordSet] = {}
        self._candidates: dict[tuple[int, int], list[baselines.CandidatePath]] = {}

    @cached_property
    def graph(self) -> WordGraph:
        return build_graph(self.cluster)

    @cached_property
    def trigrams(self) -> tuple[Trigram, ...]:
        return tuple(extract_trigrams(self.graph, self.cluster))

    @cached_property
    def textrank(self) -> dict[str, float]:
        return textrank_scores(self.graph)

    def keywords(self, pc: int) -> KeywordSet:
        if pc not in self._keywords:
            self._keywords[pc] = lda_keywords(self.cluster, self.stopwords, pc, self.seed)
        return self._keywords[pc]

    def candidates(self, k: int, min_words: int) -> list[baselines.CandidatePath]:
        key = (k, min_words)
        if key not in self._candidates:
            self._candidates[key] = baselines.k_shortest_paths(self.graph, k, min_words)
        return self._candidates[key]

    def instance(self, config: RunConfig) -> CompressionInstance:
        return CompressionInstance(self.graph, self.keywords(config.pc), self.trigrams,
                                   config.alpha, config.beta, config.gamma, config.pmin,
                                   config.verb_prefixes)


def compress(prepared: PreparedCluster, config: RunConfig) -> CompressionResult:
    cid = prepared.cluster.id
    graph = prepared.graph
    result = CompressionResult(cid, config.method)
    if config.method == "opt":
        try:
            sols = solve_kbest(prepared.instance(config), config.k, timeout=config.timeout)
        except SolverTimeout as exc:
            result.error = f"timeout: {exc}"
            return result
        best = normalize_and_select(sols)
        if best is None:
            result.error = "no feasible verb-bearing compression" if sols else "infeasible"
            return result
        path, raw, norm = best.path, best.raw_score, best.normalized_score
    else:
        cands = prepared.candidates(config.k, config.pmin)
        if config.method == "filippova":
            sel = baselines.filippova_select(graph, cands, config.verb_prefixes)
        else:
            sel = baselines.bm_select(graph, cands, prepared.textrank, config.verb_prefixes)
        if sel is None:
            result.error = "no verb-bearing candidate path"
            return result
        path, raw, norm = sel.candidate.path, sel.candidate.cohesion_sum, sel.score
    result.path = tuple(path)
    result.words = [graph.vertices[v].lower for v in path]
    result.raw_score = raw
    result.normalized_score = norm
    kws = prepared.keywords(config.pc)
    result.keyword_hits = [w for w in kws if w in set(result.words)]
    return result


def compress_cluster(cluster: Cluster, stopwords: StopwordSet,
                     config: RunConfig | None = None, **overrides) -> CompressionResult:
    config = replace(config or RunConfig(), **overrides)
    return compress(PreparedCluster(cluster, stopwords, config.seed), config)
