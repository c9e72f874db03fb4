"""Multi-sentence compression by exact optimization over word graphs."""

from .corpus_io import Cluster, Sentence, StopwordSet, Token, load_stopwords, parse_cluster
from .keywords import KeywordSet, lda_keywords, textrank_scores
from .pipeline import RunConfig, compress_cluster
from .solver import CompressionInstance, Solution, normalize_and_select, solve_best, solve_kbest
from .word_graph import WordGraph, build_graph, cohesion_weights, extract_trigrams

__version__ = "0.1.0"

__all__ = [
    "Cluster", "Sentence", "StopwordSet", "Token", "load_stopwords", "parse_cluster",
    "KeywordSet", "lda_keywords", "textrank_scores",
    "RunConfig", "compress_cluster",
    "CompressionInstance", "Solution", "normalize_and_select", "solve_best", "solve_kbest",
    "WordGraph", "build_graph", "cohesion_weights", "extract_trigrams",
]
