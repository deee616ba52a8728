"""Command-line entry point: ``topiccloud topics ...`` and ``topiccloud extract ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import extract as ex
from .layout import EmptyCloudError, LayoutParams, dump_layout, layout
from .render import RenderOptions, render_svg
from .style import default_metrics, default_slice_palette, default_word_palette, load_metrics, load_palette
from .topicset import (
    IDENTITY,
    ParseError,
    TopicSet,
    ValidationError,
    default_lemmatizer,
    lemma_merge,
    load_lemmatizer,
    load_topicset,
    truncate_words,
)

log = logging.getLogger("topiccloud")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_EMPTY = 4
EXIT_IO = 5


@dataclass
class JobConfig:
    mode: str  # "topics" or "extract"
    output: Path
    topics_path: Optional[Path] = None
    document_path: Optional[Path] = None
    embeddings_path: Optional[Path] = None
    stopwords_path: Optional[Path] = None
    params: LayoutParams = field(default_factory=LayoutParams)
    max_words: Optional[int] = None
    slice_palette: Optional[Path] = None
    word_palette: Optional[Path] = None
    metrics: Optional[Path] = None
    lemma_rules: Optional[Path] = None
    lemma: bool = True
    k: int = 10
    max_iter: int = 100
    tol: float = 1e-10
    init: str = "kmeans++"
    dump_layout: Optional[Path] = None
    stroke: bool = False
    verbosity: int = 0

    def __post_init__(self):
        if self.mode == "topics":
            if self.topics_path is None or self.document_path is not None:
                raise ValidationError("topics mode takes exactly one topic-set file")
        elif self.mode == "extract":
            if self.document_path is None or self.embeddings_path is None or self.topics_path is not None:
                raise ValidationError("extract mode needs a document and an embedding file")
        else:
            raise ValidationError(f"unknown mode {self.mode!r}")


@dataclass
class Summary:
    input_words: int = 0
    missing_embedding: int = 0
    merged: int = 0
    capped: int = 0
    topics_in: int = 0
    topics_kept: int = 0
    dropped_topics: list = field(default_factory=list)
    topic_dropped_words: int = 0
    placed: int = 0
    filtered_sigma: list = field(default_factory=list)
    skipped_nofit: list = field(default_factory=list)
    seed: int = 0

    def lines(self) -> list[str]:
        out = [
            f"topics: {self.topics_in} in, {self.topics_kept} kept, {len(self.dropped_topics)} dropped"
            + "".join(f"\n  dropped topic {i} ({why})" for i, why in self.dropped_topics),
            f"words: {self.input_words} in, {self.placed} placed, {self.merged} merged, "
            f"{len(self.filtered_sigma)} filtered(sigma), {self.capped} capped(m), "
            f"{len(self.skipped_nofit)} skipped(no-fit), {self.missing_embedding} missing-embedding, "
            f"{self.topic_dropped_words} in dropped topics",
        ]
        out += [f"  skipped topic {s.topic_index}: {s.surface!r} (no-fit)" for s in self.skipped_nofit]
        out.append(f"seed: {self.seed}")
        return out


def _prepare(cfg: JobConfig, summary: Summary) -> TopicSet:
    if cfg.mode == "topics":
        ts = load_topicset(cfg.topics_path)
        summary.input_words = ts.word_count()
    else:
        stop = ex.parse_stopwords(cfg.stopwords_path.read_text("utf-8")) if cfg.stopwords_path else set()
        doc = ex.tokenize(cfg.document_path.read_text("utf-8"), stop)
        table = ex.load_embeddings(cfg.embeddings_path.read_bytes())
        ts, _, missing = ex.extract_topics(
            doc, table, cfg.k, cfg.params.seed, cfg.max_iter, cfg.tol, cfg.init,
            label=cfg.document_path.name,
        )
        summary.input_words = len(doc.counts)
        summary.missing_embedding = len(missing)

    if cfg.lemma:
        lem = load_lemmatizer(cfg.lemma_rules) if cfg.lemma_rules else default_lemmatizer()
    else:
        lem = IDENTITY
    before = ts.word_count()
    ts = lemma_merge(ts, lem)
    summary.merged = before - ts.word_count()
    if cfg.max_words is not None:
        before = ts.word_count()
        ts = truncate_words(ts, cfg.max_words)
        summary.capped = before - ts.word_count()
    return ts


def run(cfg: JobConfig) -> int:
    summary = Summary(seed=cfg.params.seed)
    try:
        ts = _prepare(cfg, summary)
        metrics = load_metrics(cfg.metrics) if cfg.metrics else default_metrics()
        bg = load_palette(cfg.slice_palette) if cfg.slice_palette else default_slice_palette()
        fg = load_palette(cfg.word_palette) if cfg.word_palette else default_word_palette()
        result = layout(ts, cfg.params, metrics=metrics, slice_palette=bg, word_palette=fg)
        opts = RenderOptions(stroke=((255, 255, 255), 1.5) if cfg.stroke else None)
        svg = render_svg(result, opts)
        cfg.output.write_text(svg, encoding="utf-8")
        if cfg.dump_layout:
            cfg.dump_layout.write_text(dump_layout(result), encoding="utf-8")
    except OSError as exc:
        name = exc.filename if exc.filename is not None else ""
        print(f"error: i/o: {name}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except EmptyCloudError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ValidationError, ex.ExtractError, ValueError) as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return EXIT_VALIDATION

    summary.topics_in = len(ts.topics)
    summary.topics_kept = len(result.slices)
    summary.dropped_topics = result.dropped_topics
    summary.topic_dropped_words = sum(len(ts.topics[i].words) for i, _ in result.dropped_topics)
    summary.placed = len(result.words)
    summary.filtered_sigma = [s for s in result.skipped if s.reason == "sigma"]
    summary.skipped_nofit = [s for s in result.skipped if s.reason == "no-fit"]
    if cfg.verbosity >= 0:
        for line in summary.lines():
            print(line)
        print(f"wrote {cfg.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    d = LayoutParams()
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("layout")
    g.add_argument("-o", "--output", type=Path, required=True, help="SVG file to write")
    g.add_argument("--beta", type=float, default=d.beta, help="exponent for proportions and font sizes")
    g.add_argument("--mu", type=float, default=d.mu, help="drop topics with p < p_max / mu")
    g.add_argument("--sigma", type=float, default=d.sigma, help="drop words with weight < sigma")
    g.add_argument("--f-max", type=float, default=d.f_max)
    g.add_argument("--f-min", type=float, default=d.f_min)
    g.add_argument("--f-floor", type=float, default=d.f_floor, help="give up on a word below this size")
    g.add_argument("--radius", type=float, default=d.radius)
    g.add_argument("--width", type=int, default=d.width)
    g.add_argument("--height", type=int, default=d.height)
    g.add_argument("--epsilon", type=int, default=d.epsilon, help="word color jitter per channel")
    g.add_argument("--seed", type=int, default=d.seed)
    g.add_argument("--max-topics", type=int, default=None, help="show only the N biggest topics")
    g.add_argument("--max-words", type=int, default=None, help="keep the N heaviest words per topic")
    g.add_argument("--slice-palette", type=Path, help="#RRGGBB lines for slice backgrounds")
    g.add_argument("--word-palette", type=Path, help="#RRGGBB lines for base word colors")
    g.add_argument("--metrics", type=Path, help="font metrics file")
    lem = g.add_mutually_exclusive_group()
    lem.add_argument("--lemma-rules", type=Path, help="suffix rule file")
    lem.add_argument("--no-lemma", action="store_true", help="skip lemma merging")
    g.add_argument("--stroke", action="store_true", help="outline slices in white")
    g.add_argument("--dump-layout", type=Path, help="also write the canonical layout JSON")
    g.add_argument("-v", "--verbose", action="count", default=0)
    g.add_argument("-q", "--quiet", action="store_true")

    parser = argparse.ArgumentParser(prog="topiccloud", description="Render topic clouds as SVG.")
    sub = parser.add_subparsers(dest="mode", required=True)
    t = sub.add_parser("topics", parents=[common], help="render a topic-set JSON file")
    t.add_argument("topics_path", type=Path)
    e = sub.add_parser("extract", parents=[common], help="cluster a document's words, then render")
    e.add_argument("document_path", type=Path)
    e.add_argument("--embeddings", dest="embeddings_path", type=Path, required=True)
    e.add_argument("--stopwords", dest="stopwords_path", type=Path)
    e.add_argument("-k", "--k", type=int, default=10, help="number of clusters")
    e.add_argument("--max-iter", type=int, default=100)
    e.add_argument("--tol", type=float, default=1e-10)
    e.add_argument("--init", choices=["kmeans++", "random"], default="kmeans++")
    return parser


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    params = LayoutParams(
        beta=ns.beta, mu=ns.mu, sigma=ns.sigma, f_max=ns.f_max, f_min=ns.f_min,
        f_floor=ns.f_floor, radius=ns.radius, epsilon=ns.epsilon, seed=ns.seed,
        width=ns.width, height=ns.height, max_topics=ns.max_topics,
    )
    extra = {}
    if ns.mode == "extract":
        extra = dict(
            document_path=ns.document_path, embeddings_path=ns.embeddings_path,
            stopwords_path=ns.stopwords_path, k=ns.k, max_iter=ns.max_iter, tol=ns.tol, init=ns.init,
        )
    else:
        extra = dict(topics_path=ns.topics_path)
    return JobConfig(
        mode=ns.mode, output=ns.output, params=params, max_words=ns.max_words,
        slice_palette=ns.slice_palette, word_palette=ns.word_palette, metrics=ns.metrics,
        lemma_rules=ns.lemma_rules, lemma=not ns.no_lemma, dump_layout=ns.dump_layout,
        stroke=ns.stroke, verbosity=-1 if ns.quiet else ns.verbose, **extra,
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if ns.verbose > 1 else logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        print(f"error: validation: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
