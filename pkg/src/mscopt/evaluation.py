"""ROUGE-n coverage, compression ratio and corpus-level experiment reports."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .corpus_io import Cluster, Sentence, StopwordSet
from .pipeline import CompressionResult, PreparedCluster, RunConfig, compress

log = logging.getLogger(__name__)

GRID_STEPS = range(10)  # tenths: 0.0 .. 0.9


def _words(s: Sentence | Sequence[str]) -> list[str]:
    if isinstance(s, Sentence):
        return s.lowers
    return [w.lower() for w in s]


def _ngrams(words: list[str], n: int) -> Counter:
    return Counter(tuple(words[i:i + n]) for i in range(len(words) - n + 1))


def rouge_n(candidate, references: Iterable, n: int) -> float:
    """Recall of reference n-grams, clipped counts summed over references."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cand = _ngrams(_words(candidate), n)
    matched = total = 0
    refs = list(references)
    if not refs:
        raise ValueError("at least one reference is required")
    for ref in refs:
        grams = _ngrams(_words(ref), n)
        total += sum(grams.values())
        matched += sum(min(c, cand[g]) for g, c in grams.items())
    return matched / total if total else 0.0


def compression_ratio(candidate, sources: Sequence) -> float:
    if not sources:
        raise ValueError("compression ratio needs at least one source sentence")
    mean = sum(len(_words(s)) for s in sources) / len(sources)
    return len(_words(candidate)) / mean


@dataclass
class ClusterScore:
    cluster_id: str
    rouge1: float | None
    rouge2: float | None
    tc: float | None
    status: str = "ok"
    compression: str = ""


@dataclass
class EvalReport:
    config: RunConfig
    rows: list[ClusterScore] = field(default_factory=list)

    @property
    def scored(self) -> list[ClusterScore]:
        return [r for r in self.rows if r.status == "ok"]

    @property
    def failures(self) -> int:
        return sum(r.status != "ok" for r in self.rows)

    def mean(self, attr: str) -> float | None:
        vals = [getattr(r, attr) for r in self.scored]
        return sum(vals) / len(vals) if vals else None

    @property
    def aggregate(self) -> dict[str, float | None]:
        return {"rouge1": self.mean("rouge1"), "rouge2": self.mean("rouge2"), "tc": self.mean("tc")}

    def to_tsv(self) -> str:
        lines = ["cluster\trouge1\trouge2\ttc\tstatus\tcompression"]
        for r in self.rows:
            lines.append("\t".join([r.cluster_id, _fmt(r.rouge1), _fmt(r.rouge2), _fmt(r.tc),
                                    r.status, r.compression]))
        agg = self.aggregate
        lines.append("\t".join(["MEAN", _fmt(agg["rouge1"]), _fmt(agg["rouge2"]), _fmt(agg["tc"]),
                                f"failures={self.failures}", ""]))
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        width = max([len(r.cluster_id) for r in self.rows] + [7])
        out = [f"{'cluster':<{width}}  ROUGE-1  ROUGE-2     TC  status"]
        for r in self.rows:
            out.append(f"{r.cluster_id:<{width}}  {_fmt(r.rouge1):>7}  {_fmt(r.rouge2):>7}  "
                       f"{_pct(r.tc):>5}  {r.status}")
        agg = self.aggregate
        out.append(f"{'mean':<{width}}  {_fmt(agg['rouge1']):>7}  {_fmt(agg['rouge2']):>7}  "
                   f"{_pct(agg['tc']):>5}  failures={self.failures}")
        return "\n".join(out) + "\n"


def _fmt(x: float | None) -> str:
    return "-" if x is None else f"{x:.5f}"


def _pct(x: float | None) -> str:
    return "-" if x is None else f"{100 * x:.1f}%"


def score_result(cluster: Cluster, result: CompressionResult) -> ClusterScore:
    if not result.ok:
        return ClusterScore(cluster.id, None, None, None, status=result.error or "failed")
    if not cluster.references:
        return ClusterScore(cluster.id, None, None, None, status="no references",
                            compression=result.text)
    return ClusterScore(cluster.id,
                        rouge_n(result.words, cluster.references, 1),
                        rouge_n(result.words, cluster.references, 2),
                        compression_ratio(result.words, cluster.sentences),
                        compression=result.text)


def prepare(corpus: Iterable[Cluster], stopwords: StopwordSet, seed: int) -> list[PreparedCluster]:
    return [PreparedCluster(c, stopwords, seed) for c in sorted(corpus, key=lambda c: c.id)]


def run_experiment(corpus, config: RunConfig, stopwords: StopwordSet | None = None) -> EvalReport:
    """Compress and score every cluster; rows come back sorted by cluster id.

    ``corpus`` may hold clusters or already prepared clusters.
    """
    stopwords = stopwords or StopwordSet()
    prepared = [c if isinstance(c, PreparedCluster) else PreparedCluster(c, stopwords, config.seed)
                for c in corpus]
    prepared.sort(key=lambda p: p.cluster.id)
    report = EvalReport(config)
    for p in prepared:
        result = compress(p, config)
        if not result.ok:
            log.warning("cluster %s: %s", p.cluster.id, result.error)
        report.rows.append(score_result(p.cluster, result))
    return report


def grid_points() -> list[tuple[float, float]]:
    """(beta, gamma) on the 0.1 lattice with beta + gamma < 1."""
    return [(b / 10, g / 10) for b in GRID_STEPS for g in GRID_STEPS if b + g < 10]


@dataclass
class GridReport:
    reports: list[EvalReport]

    def to_tsv(self) -> str:
        lines = ["method\tpc\talpha\tbeta\tgamma\trouge1\trouge2\ttc\tfailures"]
        for rep in self.reports:
            c, agg = rep.config, rep.aggregate
            lines.append(f"{c.method}\t{c.pc}\t{c.alpha:.1f}\t{c.beta:.1f}\t{c.gamma:.1f}\t"
                         f"{_fmt(agg['rouge1'])}\t{_fmt(agg['rouge2'])}\t{_fmt(agg['tc'])}\t"
                         f"{rep.failures}")
        return "\n".join(lines) + "\n"

    def to_table(self) -> str:
        out = ["system                          ROUGE-1  ROUGE-2     TC"]
        for rep in self.reports:
            c, agg = rep.config, rep.aggregate
            name = f"{c.method} PC={c.pc} beta={c.beta:.1f} gamma={c.gamma:.1f}"
            out.append(f"{name:<30}  {_fmt(agg['rouge1']):>7}  {_fmt(agg['rouge2']):>7}  "
                       f"{_pct(agg['tc']):>5}")
        return "\n".join(out) + "\n"


def run_grid(corpus, base: RunConfig, stopwords: StopwordSet | None = None) -> GridReport:
    """Sweep (beta, gamma) over the lattice with alpha fixed, reusing each
    cluster's graph, keywords and trigrams across configurations."""
    stopwords = stopwords or StopwordSet()
    prepared = prepare(corpus, stopwords, base.seed)
    reports = []
    for beta, gamma in grid_points():
        cfg = replace(base, method="opt", beta=beta, gamma=gamma)
        reports.append(run_experiment(prepared, cfg))
    return GridReport(reports)
