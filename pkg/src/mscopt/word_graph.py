"""Word graph construction, cohesion weights and frequent trigrams."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace

from .corpus_io import Cluster

BEGIN = "begin"
END = "end"
WORD = "word"

BEGIN_SYMBOL = "-begin-"
END_SYMBOL = "-end-"

INF = math.inf


class GraphError(ValueError):
    pass


@dataclass
class Vertex:
    id: int
    kind: str
    lower: str
    pos: str
    is_stopword: bool = False
    # (sentence index, position); position 0 is the begin sentinel, tokens are 1-based
    occurrences: list[tuple[int, int]] = field(default_factory=list)

    @property
    def freq(self) -> int:
        return len(self.occurrences)

    @property
    def is_word(self) -> bool:
        return self.kind == WORD

    @property
    def label(self) -> str:
        if self.kind == BEGIN:
            return BEGIN_SYMBOL
        if self.kind == END:
            return END_SYMBOL
        return f"{self.lower}/{self.pos}"


@dataclass
class WordGraph:
    vertices: list[Vertex]
    arcs: dict[tuple[int, int], float]
    walks: list[list[int]]
    begin_id: int = 0
    end_id: int = 1

    def __post_init__(self):
        self._succ: dict[int, list[int]] = defaultdict(list)
        self._pred: dict[int, list[int]] = defaultdict(list)
        for i, j in sorted(self.arcs):
            self._succ[i].append(j)
            self._pred[j].append(i)

    def __len__(self) -> int:
        return len(self.vertices)

    def successors(self, v: int) -> list[int]:
        return self._succ.get(v, [])

    def predecessors(self, v: int) -> list[int]:
        return self._pred.get(v, [])

    def weight(self, i: int, j: int) -> float:
        return self.arcs[(i, j)]

    def word_ids(self) -> list[int]:
        return [v.id for v in self.vertices if v.is_word]

    def path_weight(self, path: list[int]) -> float:
        """Cohesion sum of begin -> path -> end."""
        full = [self.begin_id, *path, self.end_id]
        return sum(self.arcs[(a, b)] for a, b in zip(full, full[1:]))

    def render(self, path: list[int]) -> str:
        return " ".join(self.vertices[v].lower for v in path)

    def dump(self) -> str:
        """Plain-text adjacency listing, stable across runs."""
        lines = ["# vertices"]
        for v in self.vertices:
            lines.append(f"{v.id}\t{v.label}\tfreq={v.freq}")
        lines.append("# arcs")
        for (i, j), w in sorted(self.arcs.items()):
            lines.append(f"{i}\t{j}\t{w:.6f}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Trigram:
    vertices: tuple[int, int, int]
    count: int
    raw: float
    cost: float

    @property
    def first_arc(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[1]

    @property
    def second_arc(self) -> tuple[int, int]:
        return self.vertices[1], self.vertices[2]


# --------------------------------------------------------------------------
# construction

def _context(symbols: list[str], position: int, distance: int) -> tuple[str, str]:
    left = position - distance
    right = position + distance
    lsym = symbols[left] if left >= 0 else BEGIN_SYMBOL
    rsym = symbols[right] if right < len(symbols) else END_SYMBOL
    return lsym, rsym


class _Builder:
    def __init__(self, cluster: Cluster):
        self.cluster = cluster
        self.vertices: list[Vertex] = [Vertex(0, BEGIN, BEGIN_SYMBOL, BEGIN_SYMBOL),
                                       Vertex(1, END, END_SYMBOL, END_SYMBOL)]
        self.by_key: dict[tuple[str, str], list[int]] = defaultdict(list)
        # lower-case symbols per sentence, sentinels included, for context lookup
        self.symbols: list[list[str]] = []
        self.walks: list[list[int]] = []

    def new_vertex(self, lower: str, pos: str, is_stopword: bool) -> int:
        vid = len(self.vertices)
        self.vertices.append(Vertex(vid, WORD, lower, pos, is_stopword))
        self.by_key[(lower, pos)].append(vid)
        return vid

    def context_score(self, vid: int, sid: int, j: int) -> tuple[int, int]:
        """Overlap between the neighbours of token ``j`` of sentence ``sid``
        and the neighbours already recorded for vertex ``vid``; distance 1
        first, distance 2 second."""
        own = self.symbols[sid]
        scores = []
        for d in (1, 2):
            lsym, rsym = _context(own, j, d)
            hits = 0
            for osid, opos in self.vertices[vid].occurrences:
                other_l, other_r = _context(self.symbols[osid], opos, d)
                hits += (other_l == lsym) + (other_r == rsym)
            scores.append(hits)
        return scores[0], scores[1]

    def add_sentence(self, sid: int):
        sentence = self.cluster.sentences[sid]
        self.symbols.append([BEGIN_SYMBOL] + sentence.lowers + [END_SYMBOL])
        n = len(sentence)
        mapping: list[int | None] = [None] * (n + 2)
        mapping[0], mapping[n + 1] = 0, 1
        used: set[int] = set()

        def assign(j: int, vid: int):
            mapping[j] = vid
            used.add(vid)
            self.vertices[vid].occurrences.append((sid, j))

        keys = {j: (sentence[j - 1].lower, sentence[j - 1].pos) for j in range(1, n + 1)}
        if sid == 0:
            for j in range(1, n + 1):
                tok = sentence[j - 1]
                assign(j, self.new_vertex(tok.lower, tok.pos, tok.is_stopword))
        else:
            in_sentence = Counter(keys.values())
            group1, group2, group3 = [], [], []
            for j in range(1, n + 1):
                tok = sentence[j - 1]
                if tok.is_stopword:
                    group3.append(j)
                elif in_sentence[keys[j]] == 1 and len(self.by_key[keys[j]]) <= 1:
                    group1.append(j)
                else:
                    group2.append(j)

            for j in group1:
                tok = sentence[j - 1]
                cands = self.by_key[keys[j]]
                assign(j, cands[0] if cands else self.new_vertex(tok.lower, tok.pos, False))

            self._resolve(sid, group2, keys, used, assign, need_context=False)
            self._resolve(sid, group3, keys, used, assign, need_context=True)

        walk = [v for v in mapping]
        assert all(v is not None for v in walk)
        self.walks.append(walk)  # type: ignore[arg-type]

    def _resolve(self, sid, tokens, keys, used, assign, need_context):
        """Map ambiguous tokens greedily, best (token, candidate) pair first.

        Candidates are ranked by context overlap, then vertex frequency, then
        lower id.  Stopwords (``need_context``) only merge when some context
        overlaps; otherwise they get a fresh vertex.
        """
        sentence = self.cluster.sentences[sid]
        pending = set(tokens)
        while pending:
            best = None
            for j in sorted(pending):
                for vid in self.by_key[keys[j]]:
                    if vid in used:
                        continue
                    ctx = self.context_score(vid, sid, j)
                    if need_context and ctx == (0, 0):
                        continue
                    rank = (ctx, self.vertices[vid].freq, -vid, -j)
                    if best is None or rank > best[0]:
                        best = (rank, j, vid)
            if best is None:
                for j in sorted(pending):
                    tok = sentence[j - 1]
                    assign(j, self.new_vertex(tok.lower, tok.pos, tok.is_stopword))
                return
            _, j, vid = best
            assign(j, vid)
            pending.discard(j)

    def build(self) -> WordGraph:
        n = len(self.cluster.sentences)
        for sid in range(n):
            self.vertices[0].occurrences.append((sid, 0))
            self.add_sentence(sid)
            self.vertices[1].occurrences.append((sid, len(self.cluster.sentences[sid]) + 1))
        arcs: dict[tuple[int, int], float] = {}
        for walk in self.walks:
            for a, b in zip(walk, walk[1:]):
                arcs[(a, b)] = 0.0
        return WordGraph(self.vertices, arcs, self.walks)


def build_graph(cluster: Cluster, weighted: bool = True) -> WordGraph:
    """Build the word graph of ``cluster``.

    The first sentence is inserted verbatim.  Each later sentence is mapped
    in three passes: non-stopwords with at most one candidate vertex, then
    ambiguous non-stopwords, then stopwords.  A sentence never maps two of
    its tokens onto the same vertex.
    """
    if cluster is None or not cluster.sentences:
        raise GraphError("cannot build a word graph from an empty cluster")
    graph = _Builder(cluster).build()
    if weighted:
        graph = cohesion_weights(graph, cluster)
    return graph


def cohesion(graph: WordGraph, i: int, j: int) -> tuple[float, float]:
    """Return (cohesion, weight) for the ordered pair (i, j)."""
    vi, vj = graph.vertices[i], graph.vertices[j]
    pos_i: dict[int, list[int]] = defaultdict(list)
    pos_j: dict[int, list[int]] = defaultdict(list)
    for s, p in vi.occurrences:
        pos_i[s].append(p)
    for s, p in vj.occurrences:
        pos_j[s].append(p)
    inverse_sum = 0.0
    for s in sorted(set(pos_i) & set(pos_j)):
        gaps = [pj - pi for pi in pos_i[s] for pj in pos_j[s] if pi < pj]
        if gaps:
            inverse_sum += 1.0 / min(gaps)
    if inverse_sum == 0.0:
        return INF, INF
    coh = (vi.freq + vj.freq) / inverse_sum
    return coh, coh / (vi.freq * vj.freq)


def cohesion_weights(graph: WordGraph, cluster: Cluster | None = None) -> WordGraph:
    # occurrences already carry the positions; the cluster is accepted for symmetry
    arcs = {arc: cohesion(graph, *arc)[1] for arc in sorted(graph.arcs)}
    return replace(graph, arcs=arcs)


def extract_trigrams(graph: WordGraph, cluster: Cluster | None = None) -> list[Trigram]:
    """Frequent (count > 1) word trigrams with costs min-max scaled to [0, 1]."""
    counts: Counter[tuple[int, int, int]] = Counter()
    for walk in graph.walks:
        words = walk[1:-1]
        for tri in zip(words, words[1:], words[2:]):
            counts[tri] += 1
    if not counts:
        return []
    max_count = max(counts.values())
    kept = []
    for tri in sorted(counts):
        q = counts[tri]
        if q < 2:
            continue
        a, b, c = tri
        w_ab, w_bc = graph.arcs[(a, b)], graph.arcs[(b, c)]
        if math.isinf(w_ab) or math.isinf(w_bc):
            continue
        kept.append((tri, q, (q / max_count) * (w_ab + w_bc) / 2.0))
    if not kept:
        return []
    raws = [r for _, _, r in kept]
    lo, hi = min(raws), max(raws)
    out = []
    for tri, q, raw in kept:
        cost = 1.0 if hi == lo else (raw - lo) / (hi - lo)
        out.append(Trigram(tri, q, raw, cost))
    return out
