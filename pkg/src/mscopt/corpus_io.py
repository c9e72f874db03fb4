"""Reading and writing POS-tagged sentence clusters.

A cluster file holds one sentence per line, each token written as
``surface/POS``.  A line made of ``---`` (or the first blank line after the
source sentences) opens the block of reference compressions::

    George/NPP Solitário/NPP faleceu/V
    George/NPP Solitário/NPP morreu/V
    ---
    George/NPP Solitário/NPP morreu/V
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

REFERENCE_MARKER = "---"


class CorpusFormatError(ValueError):
    """Raised for malformed cluster or stopword input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    surface: str
    pos: str
    is_stopword: bool = False

    def __post_init__(self):
        if not self.pos:
            raise ValueError(f"token {self.surface!r} has an empty POS tag")

    @property
    def lower(self) -> str:
        return self.surface.lower()

    def encode(self) -> str:
        return f"{self.surface}/{self.pos}"


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("a sentence needs at least one token")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    @property
    def lowers(self) -> list[str]:
        return [t.lower for t in self.tokens]

    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    def encode(self) -> str:
        return " ".join(t.encode() for t in self.tokens)


@dataclass(frozen=True)
class Cluster:
    id: str
    sentences: tuple[Sentence, ...]
    references: tuple[Sentence, ...] = field(default_factory=tuple)

    def __post_init__(self):
        # single-sentence clusters are accepted so degenerate graphs can be built
        if not self.sentences:
            raise ValueError(f"cluster {self.id!r} has no sentences")


@dataclass(frozen=True)
class StopwordSet:
    words: frozenset[str] = frozenset()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)


def load_stopwords(raw: str) -> StopwordSet:
    words = set()
    for line in raw.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line.lower())
    return StopwordSet(frozenset(words))


def read_stopwords(path: str | Path) -> StopwordSet:
    return load_stopwords(Path(path).read_text(encoding="utf-8"))


def parse_sentence(line: str, stopwords: StopwordSet | None = None,
                   lineno: int = 1) -> Sentence:
    """Parse one ``surface/POS`` line.  The last ``/`` of a field separates
    the surface from the tag, so ``1/2/NUM`` reads as surface ``1/2``."""
    stopwords = stopwords or StopwordSet()
    tokens = []
    column = 1
    for chunk in line.split(" "):
        if not chunk:
            column += 1
            continue
        surface, sep, pos = chunk.rpartition("/")
        if not sep or not surface or not pos:
            raise CorpusFormatError(f"malformed token {chunk!r}, expected surface/POS",
                                    lineno, column)
        tokens.append(Token(surface, pos, surface.lower() in stopwords.words))
        column += len(chunk) + 1
    if not tokens:
        raise CorpusFormatError("empty sentence", lineno)
    return Sentence(tuple(tokens))


def parse_cluster(raw: str, stopwords: StopwordSet | None = None,
                  cluster_id: str = "cluster") -> Cluster:
    sources: list[Sentence] = []
    references: list[Sentence] = []
    target = sources
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if stripped == REFERENCE_MARKER or (not stripped and sources and target is sources):
            target = references
            continue
        if not stripped:
            continue
        target.append(parse_sentence(stripped, stopwords, lineno))
    if not sources:
        raise CorpusFormatError("no source sentences in cluster input")
    return Cluster(cluster_id, tuple(sources), tuple(references))


def serialize_cluster(cluster: Cluster) -> str:
    lines = [s.encode() for s in cluster.sentences]
    if cluster.references:
        lines.append(REFERENCE_MARKER)
        lines.extend(s.encode() for s in cluster.references)
    return "\n".join(lines) + "\n"


def read_cluster(path: str | Path, stopwords: StopwordSet | None = None) -> Cluster:
    path = Path(path)
    return parse_cluster(path.read_text(encoding="utf-8"), stopwords, cluster_id=path.stem)


def read_corpus(directory: str | Path, stopwords: StopwordSet | None = None,
                pattern: str = "*.txt") -> list[Cluster]:
    """Load every cluster file in ``directory``, sorted by cluster id."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"corpus directory not found: {directory}")
    clusters = [read_cluster(p, stopwords) for p in sorted(directory.glob(pattern))]
    return sorted(clusters, key=lambda c: c.id)


def sentence_from_words(words: Iterable[tuple[str, str]]) -> Sentence:
    return Sentence(tuple(Token(w, p) for w, p in words))
