"""Command-line driver.

    mscopt compress --corpus cluster.txt --stopwords stopwords.txt
    mscopt evaluate --corpus corpus_dir/ --method bm --out report.tsv
    mscopt evaluate --corpus corpus_dir/ --grid --pc 9 --out grid.tsv
    mscopt graph --corpus cluster.txt

Options may also come from ``--config FILE`` holding ``key = value`` lines
(keys are flag names); command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path

from .corpus_io import CorpusFormatError, StopwordSet, load_stopwords, read_cluster, read_corpus
from .evaluation import compression_ratio, run_experiment, run_grid
from .pipeline import METHODS, PreparedCluster, RunConfig, compress

log = logging.getLogger("mscopt")

BUNDLED_STOPWORDS = {"pt": "stopwords.pt.txt"}

# flag name -> (RunConfig field, converter)
OPTIONS = {
    "method": ("method", str),
    "alpha": ("alpha", float),
    "beta": ("beta", float),
    "gamma": ("gamma", float),
    "pc": ("pc", int),
    "pmin": ("pmin", int),
    "k": ("k_best", int),
    "seed": ("seed", int),
    "timeout-secs": ("timeout", float),
    "verb-prefixes": ("verb_prefixes", lambda s: tuple(p for p in s.split(",") if p)),
    "stopwords": ("stopword_path", str),
    "corpus": ("corpus_path", str),
    "out": ("output_path", str),
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value option file; flags win")
    common.add_argument("--method", choices=METHODS)
    common.add_argument("--alpha")
    common.add_argument("--beta")
    common.add_argument("--gamma")
    common.add_argument("--pc", help="number of keywords")
    common.add_argument("--pmin", help="minimum words in a compression")
    common.add_argument("--k", help="number of candidate paths / best solutions")
    common.add_argument("--seed", help="seed for keyword extraction")
    common.add_argument("--stopwords", help="stopword file, or 'pt' for the bundled list")
    common.add_argument("--corpus", help="cluster file (compress, graph) or directory (evaluate)")
    common.add_argument("--out", help="output file")
    common.add_argument("--timeout-secs", help="solver time budget per cluster")
    common.add_argument("--verb-prefixes", help="comma-separated POS prefixes marking verbs")
    common.add_argument("-q", "--quiet", action="store_true", help="only log warnings")

    parser = argparse.ArgumentParser(prog="mscopt", description="Multi-sentence compression on word graphs")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compress", parents=[common], help="compress one cluster")
    ev = sub.add_parser("evaluate", parents=[common], help="score a corpus against references")
    ev.add_argument("--grid", action="store_true", help="sweep beta, gamma with beta + gamma < 1")
    sub.add_parser("graph", parents=[common], help="dump the word graph of one cluster")
    return parser


def read_config_file(path: str) -> dict[str, str]:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"config file not found: {path}")
    values = {}
    for lineno, line in enumerate(p.read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("_", "-")
        if not sep or key not in OPTIONS:
            raise UsageError(f"{path}:{lineno}: unknown or malformed option {line!r}")
        values[key] = value.strip()
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    raw = read_config_file(args.config) if args.config else {}
    for flag in OPTIONS:
        value = getattr(args, flag.replace("-", "_"))
        if value is not None:
            raw[flag] = value
    kwargs = {}
    for flag, value in raw.items():
        name, conv = OPTIONS[flag]
        try:
            kwargs[name] = conv(value)
        except ValueError as exc:
            raise UsageError(f"bad value for --{flag}: {value!r}") from exc
    try:
        return RunConfig(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def load_stopword_option(value: str | None) -> StopwordSet:
    if value is None:
        return StopwordSet()
    if value in BUNDLED_STOPWORDS and not Path(value).exists():
        text = resources.files("mscopt.data").joinpath(BUNDLED_STOPWORDS[value]).read_text("utf-8")
        return load_stopwords(text)
    p = Path(value)
    if not p.is_file():
        raise UsageError(f"stopword file not found: {value}")
    return load_stopwords(p.read_text(encoding="utf-8"))


def _emit(text: str, out: str | None):
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text, encoding="utf-8")


def cmd_compress(config: RunConfig) -> int:
    if not config.corpus_path or not Path(config.corpus_path).is_file():
        raise UsageError(f"cluster file not found: {config.corpus_path}")
    stopwords = load_stopword_option(config.stopword_path)
    cluster = read_cluster(config.corpus_path, stopwords)
    prepared = PreparedCluster(cluster, stopwords, config.seed)
    result = compress(prepared, config)
    if not result.ok:
        print(f"mscopt: {cluster.id}: {result.error}", file=sys.stderr)
        return 1
    kws = prepared.keywords(config.pc)
    lines = [
        f"compression\t{result.text}",
        f"method\t{config.method}",
        f"raw_score\t{result.raw_score:.6f}",
        f"normalized_score\t{result.normalized_score:.6f}",
        f"keywords\t{' '.join(kws)}",
        f"keyword_hits\t{len(result.keyword_hits)}/{len(kws)}\t{' '.join(result.keyword_hits)}",
        f"words\t{len(result.words)}",
        f"tc\t{compression_ratio(result.words, cluster.sentences):.4f}",
    ]
    _emit("\n".join(lines) + "\n", config.output_path)
    return 0


def cmd_evaluate(config: RunConfig, grid: bool) -> int:
    if not config.corpus_path or not Path(config.corpus_path).is_dir():
        raise UsageError(f"corpus directory not found: {config.corpus_path}")
    stopwords = load_stopword_option(config.stopword_path)
    corpus = []
    for cluster in read_corpus(config.corpus_path, stopwords):
        if not cluster.references:
            log.warning("cluster %s has no reference compressions; skipped", cluster.id)
            continue
        corpus.append(cluster)
    if not corpus:
        print("mscopt: no cluster with references to evaluate", file=sys.stderr)
        return 1
    if grid:
        report = run_grid(corpus, config, stopwords)
        if config.output_path:
            Path(config.output_path).write_text(report.to_tsv(), encoding="utf-8")
        sys.stdout.write(report.to_table())
        return 0
    report = run_experiment(corpus, config, stopwords)
    if config.output_path:
        Path(config.output_path).write_text(report.to_tsv(), encoding="utf-8")
    sys.stdout.write(report.to_table())
    agg = report.aggregate
    if agg["rouge1"] is None:
        return 1
    print(f"ROUGE-1 {agg['rouge1']:.5f}  ROUGE-2 {agg['rouge2']:.5f}  TC {agg['tc']:.4f}")
    return 0


def cmd_graph(config: RunConfig) -> int:
    if not config.corpus_path or not Path(config.corpus_path).is_file():
        raise UsageError(f"cluster file not found: {config.corpus_path}")
    stopwords = load_stopword_option(config.stopword_path)
    prepared = PreparedCluster(read_cluster(config.corpus_path, stopwords), stopwords, config.seed)
    _emit(prepared.graph.dump(), config.output_path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        config = resolve_config(args)
        log.info("effective configuration: %s",
                 json.dumps({"command": args.command, **config.describe()}, sort_keys=True))
        if args.command == "compress":
            return cmd_compress(config)
        if args.command == "evaluate":
            return cmd_evaluate(config, args.grid)
        return cmd_graph(config)
    except (UsageError, CorpusFormatError) as exc:
        print(f"mscopt: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
